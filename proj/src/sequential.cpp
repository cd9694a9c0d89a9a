#include "qme/sequential.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qme/entropy.hpp"
#include "qme/tolerances.hpp"

namespace qme {

namespace {

std::string pair_label(const OutcomeLabel& x, const OutcomeLabel& y) { return "(" + x + "," + y + ")"; }

// Fixed probe matrices for constructor self-tests.
ComplexMatrix self_test_input(int dim, int which) {
    if (which == 0) return ComplexMatrix::identity(dim);
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m(i, j) = ComplexScalar{1.0 + std::sin(0.7 * (i + 1) * (j + 2)), std::cos(1.3 * (i + 2) * (j + 1))};
    return m;
}

}  // namespace

ComplexMatrix apply_operation(const Operation& op, const ComplexMatrix& m) {
    if (op.dim() != m.dim())
        throw DimensionError("apply_operation: operation dim " + std::to_string(op.dim()) + " vs matrix dim " +
                             std::to_string(m.dim()));
    return op.map().apply(m);
}

KrausMap dual_operation(const Operation& op) {
    KrausMap dual;
    dual.kraus.reserve(op.kraus().size());
    for (const ComplexMatrix& k : op.kraus()) dual.kraus.push_back(adjoint(k));
    return dual;
}

Effect measured_effect(const Operation& op) {
    ComplexMatrix a = hermitian_part(op.map().kraus_sum());
    if (a.max_abs() <= tolerances().psd) throw ZeroEffectError("operation measures the zero effect");
    return validate_effect(std::move(a));
}

Operation luders_operation(const Effect& a) {
    return validate_operation({psd_sqrt(a.matrix())});
}

Operation holevo_operation(const Effect& a, const State& alpha) {
    if (a.dim() != alpha.dim())
        throw DimensionError("holevo_operation: effect dim " + std::to_string(a.dim()) + " vs state dim " +
                             std::to_string(alpha.dim()));
    const int n = a.dim();
    const ComplexMatrix root = psd_sqrt(a.matrix());
    const EigenDecomposition dec = hermitian_eig(alpha.matrix());
    std::vector<ComplexMatrix> ks;
    for (int j = 0; j < n; ++j) {
        const double mu = dec.eigenvalues[j];
        if (mu <= tolerances().eig_zero) continue;
        const double w = std::sqrt(mu);
        for (int i = 0; i < n; ++i) {
            // sqrt(mu_j) |phi_j><e_i| a^{1/2}: column phi_j times row i of the root
            ComplexMatrix k(n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) k(r, c) = w * dec.eigenvectors(r, j) * root(i, c);
            ks.push_back(std::move(k));
        }
    }
    Operation op = validate_operation(std::move(ks));
    // Action must reproduce tr(A a) alpha.
    for (int which = 0; which < 2; ++which) {
        const ComplexMatrix probe = self_test_input(n, which);
        const ComplexScalar coeff = trace(matmul(probe, a.matrix()));
        ComplexMatrix expected = alpha.matrix();
        expected *= coeff;
        const double dev = op.map().apply(probe).max_abs_diff(expected);
        if (dev > tolerances().duality * std::max(1.0, expected.max_abs()))
            throw NumericalError("holevo_operation self-test residual " + std::to_string(dev));
    }
    return op;
}

Effect sequential_product_effect(const Operation& op, const Effect& b) {
    if (op.dim() != b.dim())
        throw DimensionError("sequential_product_effect: operation dim " + std::to_string(op.dim()) +
                             " vs effect dim " + std::to_string(b.dim()));
    (void)measured_effect(op);  // op must measure a nonzero effect
    const KrausMap dual = dual_operation(op);
    ComplexMatrix c = hermitian_part(dual.apply(b.matrix()));
    if (c.max_abs() <= tolerances().drop_effect) throw ZeroEffectError("sequential product vanished");
    return validate_effect(std::move(c));
}

Effect holevo_chain(const std::vector<Effect>& effects, const std::vector<State>& alphas) {
    if (effects.empty()) throw DimensionError("holevo_chain: need at least one effect");
    if (alphas.size() + 1 != effects.size())
        throw DimensionError("holevo_chain: " + std::to_string(effects.size()) + " effects need " +
                             std::to_string(effects.size() - 1) + " states, got " + std::to_string(alphas.size()));
    const int n = effects.front().dim();
    for (const Effect& e : effects)
        if (e.dim() != n) throw DimensionError("holevo_chain: effect dim mismatch");
    for (const State& s : alphas)
        if (s.dim() != n) throw DimensionError("holevo_chain: state dim mismatch");
    double coeff = 1.0;
    for (std::size_t k = 0; k < alphas.size(); ++k)
        coeff *= real_trace_product(alphas[k].matrix(), effects[k + 1].matrix());
    if (std::abs(coeff) <= tolerances().prob_zero) throw ZeroEffectError("holevo_chain coefficient vanished");
    ComplexMatrix out = effects.front().matrix();
    out *= ComplexScalar{coeff, 0.0};
    return validate_effect(std::move(out));
}

Instrument luders_instrument(const Observable& a) {
    std::vector<InstrumentOutcome> out;
    out.reserve(a.size());
    for (const auto& o : a.outcomes()) out.push_back({o.label, luders_operation(o.effect)});
    return validate_instrument(std::move(out));
}

Instrument holevo_instrument(const Observable& a, const std::vector<State>& alphas) {
    if (alphas.size() != a.size())
        throw DimensionError("holevo_instrument: " + std::to_string(a.size()) + " outcomes need as many states, got " +
                             std::to_string(alphas.size()));
    std::vector<InstrumentOutcome> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back({a.outcomes()[i].label, holevo_operation(a.outcomes()[i].effect, alphas[i])});
    return validate_instrument(std::move(out));
}

ObservableResult measured_observable(const Instrument& inst) {
    std::vector<ObservableOutcome> kept;
    std::vector<OutcomeLabel> dropped;
    for (const auto& o : inst.outcomes()) {
        ComplexMatrix a = hermitian_part(o.operation.map().kraus_sum());
        if (a.max_abs() <= tolerances().drop_effect) {
            dropped.push_back(o.label);
            continue;
        }
        kept.push_back({o.label, validate_effect(std::move(a))});
    }
    return {validate_observable(std::move(kept)), std::move(dropped)};
}

ObservableResult observable_sequential(const Observable& a, const Instrument& inst, const Observable& b) {
    if (a.dim() != inst.dim() || b.dim() != inst.dim())
        throw DimensionError("observable_sequential: dims " + std::to_string(a.dim()) + ", " +
                             std::to_string(inst.dim()) + ", " + std::to_string(b.dim()) + " differ");
    // The instrument must measure a: labelwise I_x^*(I) == A_x, and any extra
    // instrument outcome must measure the zero effect.
    for (const auto& o : a.outcomes()) {
        const Operation* op = inst.find(o.label);
        if (op == nullptr)
            throw InstrumentMismatchError("instrument lacks outcome '" + o.label + "'");
        const double dev = op->map().kraus_sum().max_abs_diff(o.effect.matrix());
        if (dev > tolerances().measures)
            throw InstrumentMismatchError("instrument outcome '" + o.label + "' measures the wrong effect, residual " +
                                          std::to_string(dev));
    }
    for (const auto& o : inst.outcomes()) {
        if (a.find(o.label) != nullptr) continue;
        const double norm = o.operation.map().kraus_sum().max_abs();
        if (norm > tolerances().measures)
            throw InstrumentMismatchError("instrument outcome '" + o.label +
                                          "' measures a nonzero effect absent from the observable");
    }
    std::vector<ObservableOutcome> kept;
    std::vector<OutcomeLabel> dropped;
    for (const auto& ox : a.outcomes()) {
        const KrausMap dual = dual_operation(*inst.find(ox.label));
        for (const auto& oy : b.outcomes()) {
            ComplexMatrix c = hermitian_part(dual.apply(oy.effect.matrix()));
            const OutcomeLabel label = pair_label(ox.label, oy.label);
            if (c.max_abs() <= tolerances().drop_effect) {
                dropped.push_back(label);
                continue;
            }
            kept.push_back({label, validate_effect(std::move(c))});
        }
    }
    return {validate_observable(std::move(kept)), std::move(dropped)};
}

Instrument compose_instruments(const Instrument& second, const Instrument& first) {
    if (second.dim() != first.dim())
        throw DimensionError("compose_instruments: dims " + std::to_string(second.dim()) + " vs " +
                             std::to_string(first.dim()));
    std::vector<InstrumentOutcome> out;
    out.reserve(first.size() * second.size());
    for (const auto& ox : first.outcomes()) {
        for (const auto& oy : second.outcomes()) {
            std::vector<ComplexMatrix> ks;
            ks.reserve(ox.operation.kraus().size() * oy.operation.kraus().size());
            for (const ComplexMatrix& k1 : ox.operation.kraus())
                for (const ComplexMatrix& k2 : oy.operation.kraus()) ks.push_back(matmul(k2, k1));
            out.push_back({pair_label(ox.label, oy.label), validate_operation(std::move(ks))});
        }
    }
    return validate_instrument(std::move(out));
}

Observable coarse_grain(const Observable& a, const std::map<OutcomeLabel, OutcomeLabel>& assignment,
                        const std::vector<OutcomeLabel>& targets) {
    for (const auto& [from, to] : assignment)
        if (a.find(from) == nullptr) throw LabelError("assignment key '" + from + "' is not an outcome");
    for (const auto& o : a.outcomes())
        if (assignment.find(o.label) == assignment.end())
            throw LabelError("assignment misses outcome '" + o.label + "'");

    std::vector<OutcomeLabel> order;
    if (targets.empty()) {
        // image of the assignment, in first appearance over the outcome order
        for (const auto& o : a.outcomes()) {
            const OutcomeLabel& to = assignment.at(o.label);
            if (std::find(order.begin(), order.end(), to) == order.end()) order.push_back(to);
        }
    } else {
        std::set<OutcomeLabel> seen;
        for (const OutcomeLabel& t : targets)
            if (!seen.insert(t).second) throw LabelError("duplicate target '" + t + "'");
        for (const auto& [from, to] : assignment)
            if (seen.find(to) == seen.end())
                throw LabelError("assignment value '" + to + "' is not a declared target");
        order = targets;
    }

    std::vector<ObservableOutcome> out;
    for (const OutcomeLabel& y : order) {
        ComplexMatrix sum(a.dim());
        bool hit = false;
        for (const auto& o : a.outcomes()) {
            if (assignment.at(o.label) != y) continue;
            sum += o.effect.matrix();
            hit = true;
        }
        if (!hit) throw NotSurjectiveError("target '" + y + "' has an empty fiber");
        out.push_back({y, validate_effect(std::move(sum))});
    }
    return validate_observable(std::move(out));
}

Distribution distribution(const Observable& a, const State& rho) {
    if (a.dim() != rho.dim())
        throw DimensionError("distribution: observable dim " + std::to_string(a.dim()) + " vs state dim " +
                             std::to_string(rho.dim()));
    Distribution d;
    double total = 0.0;
    for (const auto& o : a.outcomes()) {
        const double p = real_trace_product(rho.matrix(), o.effect.matrix());
        if (p < -tolerances().trace_imag || p > 1.0 + tolerances().trace_imag)
            throw NumericalError("distribution: probability " + std::to_string(p) + " for outcome '" + o.label +
                                 "'");
        d.weights.emplace_back(o.label, p);
        total += p;
    }
    if (std::abs(total - 1.0) > tolerances().completeness)
        throw NumericalError("distribution: total probability " + std::to_string(total));
    return d;
}

double distribution_of_subset(const Observable& a, const State& rho, const std::vector<OutcomeLabel>& labels) {
    std::set<OutcomeLabel> seen;
    for (const OutcomeLabel& l : labels)
        if (!seen.insert(l).second) throw LabelError("duplicate label '" + l + "' in subset");
    const Distribution d = distribution(a, rho);
    double total = 0.0;
    for (const OutcomeLabel& l : labels) {
        bool found = false;
        for (const auto& [label, p] : d.weights) {
            if (label != l) continue;
            total += p;
            found = true;
            break;
        }
        if (!found) throw LabelError("unknown label '" + l + "' in subset");
    }
    return total;
}

Observable tensor_observable(const Observable& a, const Observable& b) {
    std::vector<ObservableOutcome> out;
    out.reserve(a.size() * b.size());
    for (const auto& ox : a.outcomes())
        for (const auto& oy : b.outcomes())
            out.push_back({pair_label(ox.label, oy.label),
                           validate_effect(kron(ox.effect.matrix(), oy.effect.matrix()))});
    return validate_observable(std::move(out));
}

Instrument model_instrument(const MeasurementModel& m) {
    const int dh = m.dim_h();
    const int dk = m.dim_k();
    const EigenDecomposition sig = hermitian_eig(m.sigma().matrix());
    std::vector<InstrumentOutcome> out;
    out.reserve(m.probe().size());
    for (const auto& po : m.probe().outcomes()) {
        const ComplexMatrix proot = psd_sqrt(po.effect.matrix());
        std::vector<ComplexMatrix> ks;
        for (int j = 0; j < dk; ++j) {
            const double mu = sig.eigenvalues[j];
            if (mu <= tolerances().eig_zero) continue;
            const double w = std::sqrt(mu);
            for (const ComplexMatrix& nl : m.nu().kraus()) {
                for (int k = 0; k < dk; ++k) {
                    // (I (x) <e_k| sqrt(P_x)) N_l (I (x) |phi_j>) sqrt(mu_j)
                    ComplexMatrix kraus(dh);
                    for (int hp = 0; hp < dh; ++hp) {
                        for (int h = 0; h < dh; ++h) {
                            ComplexScalar s{};
                            for (int kpp = 0; kpp < dk; ++kpp) {
                                const ComplexScalar pr = proot(k, kpp);
                                if (pr == ComplexScalar{}) continue;
                                ComplexScalar inner{};
                                for (int kp = 0; kp < dk; ++kp)
                                    inner += nl(hp * dk + kpp, h * dk + kp) * sig.eigenvectors(kp, j);
                                s += pr * inner;
                            }
                            kraus(hp, h) = w * s;
                        }
                    }
                    ks.push_back(std::move(kraus));
                }
            }
        }
        out.push_back({po.label, validate_operation(std::move(ks))});
    }
    Instrument inst = validate_instrument(std::move(out));
    // Self-check against the defining formula on the maximally mixed state.
    ComplexMatrix mixed = ComplexMatrix::identity(dh);
    mixed *= ComplexScalar{1.0 / dh, 0.0};
    for (std::size_t x = 0; x < inst.size(); ++x) {
        const ComplexMatrix direct = model_apply_direct(m, m.probe().outcomes()[x].effect, mixed);
        const double dev = inst.outcomes()[x].operation.map().apply(mixed).max_abs_diff(direct);
        if (dev > 1e-9)
            throw NumericalError("model_instrument self-test residual " + std::to_string(dev) + " on outcome '" +
                                 inst.outcomes()[x].label + "'");
    }
    return inst;
}

ComplexMatrix model_apply_direct(const MeasurementModel& m, const Effect& probe_effect,
                                 const ComplexMatrix& rho) {
    if (rho.dim() != m.dim_h())
        throw DimensionError("model_apply_direct: state dim " + std::to_string(rho.dim()) + ", expected " +
                             std::to_string(m.dim_h()));
    const ComplexMatrix joint = m.nu().map().apply(kron(rho, m.sigma().matrix()));
    const ComplexMatrix pointer = kron(ComplexMatrix::identity(m.dim_h()), probe_effect.matrix());
    return partial_trace(matmul(joint, pointer), m.dim_h(), m.dim_k(), TensorFactor::right);
}

ObservableResult model_observable(const MeasurementModel& m) {
    const int dh = m.dim_h();
    const int dk = m.dim_k();
    const ComplexMatrix eye_h = ComplexMatrix::identity(dh);
    const ComplexMatrix sigma_big = kron(eye_h, m.sigma().matrix());
    KrausMap nu_dual;
    for (const ComplexMatrix& k : m.nu().kraus()) nu_dual.kraus.push_back(adjoint(k));
    std::vector<ObservableOutcome> kept;
    std::vector<OutcomeLabel> dropped;
    for (const auto& po : m.probe().outcomes()) {
        const ComplexMatrix pointer = kron(eye_h, po.effect.matrix());
        const ComplexMatrix y = nu_dual.apply(pointer);
        ComplexMatrix a = hermitian_part(partial_trace(matmul(sigma_big, y), dh, dk, TensorFactor::right));
        if (a.max_abs() <= tolerances().drop_effect) {
            dropped.push_back(po.label);
            continue;
        }
        kept.push_back({po.label, validate_effect(std::move(a))});
    }
    return {validate_observable(std::move(kept)), std::move(dropped)};
}

ModelEntropyReport model_entropy_gap(const MeasurementModel& m, const State& rho) {
    if (rho.dim() != m.dim_h())
        throw DimensionError("model_entropy_gap: state dim " + std::to_string(rho.dim()) + ", expected " +
                             std::to_string(m.dim_h()));
    const int dh = m.dim_h();
    const ObservableResult a = model_observable(m);

    double gap = 0.0;
    for (const auto& o : a.observable.outcomes()) {
        const double p = real_trace_product(rho.matrix(), o.effect.matrix());
        if (p <= tolerances().prob_zero) continue;
        const double t = trace(o.effect.matrix()).real();
        const double tp = trace(m.probe().find(o.label)->matrix()).real();
        gap += p * std::log(t / (dh * tp));
    }

    const double s_a = observable_entropy(a.observable, rho).nats;

    const State joint = validate_state(hermitian_part(m.nu().map().apply(kron(rho.matrix(), m.sigma().matrix()))));
    std::vector<ObservableOutcome> pointer;
    pointer.reserve(m.probe().size());
    const ComplexMatrix eye_h = ComplexMatrix::identity(dh);
    for (const auto& po : m.probe().outcomes())
        pointer.push_back({po.label, validate_effect(kron(eye_h, po.effect.matrix()))});
    const double s_probe = observable_entropy(validate_observable(std::move(pointer)), joint).nats;

    if (std::abs(s_probe - (s_a - gap)) > 1e-9)
        throw NumericalError("model entropy identity violated: " + std::to_string(s_probe) + " vs " +
                             std::to_string(s_a - gap));
    return {gap, s_a, s_probe};
}

}  // namespace qme
