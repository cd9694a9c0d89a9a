#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "suite_internal.hpp"

#include "qme/entropy.hpp"
#include "qme/suite.hpp"
#include "qme/json_io.hpp"
#include "qme/linalg.hpp"
#include "qme/objects.hpp"
#include "qme/random_objects.hpp"
#include "qme/sequential.hpp"
#include "qme/tolerances.hpp"

namespace qme::detail {

void TrialContext::record_matrix(const char* key, const ComplexMatrix& m) {
    if (capture) inputs[key] = matrix_to_json(m);
}

namespace {

ComplexMatrix scaled(const ComplexMatrix& m, double s) {
    ComplexMatrix r = m;
    r *= ComplexScalar(s);
    return r;
}

Effect identity_effect(int dim) { return validate_effect(ComplexMatrix::identity(dim)); }

State maximally_mixed(int dim) { return validate_state(scaled(ComplexMatrix::identity(dim), 1.0 / dim)); }

State draw_state(TrialContext& ctx, int dim) { return random_state(dim, ctx.rng.uniform_int(1, dim), ctx.rng); }

State draw_full_rank_state(TrialContext& ctx, int dim) { return random_state(dim, dim, ctx.rng); }

double max_eigenvalue(const ComplexMatrix& m) { return hermitian_eig(m).eigenvalues.back(); }

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eig(m).eigenvalues.front(); }

double entropy_of(const Effect& a, const State& rho) { return effect_entropy(a, rho).nats; }

// Effects a_i with a_1 + ... + a_k still an effect, obtained by scaling a raw
// draw under the sum's top eigenvalue.
std::vector<Effect> draw_summable_effects(TrialContext& ctx, int dim, int count) {
    std::vector<ComplexMatrix> raw;
    ComplexMatrix sum(dim);
    for (int i = 0; i < count; ++i) {
        raw.push_back(random_effect(dim, ctx.rng).matrix());
        sum += raw.back();
    }
    const double u = ctx.rng.uniform(0.2, 0.95) / std::max(1.0, max_eigenvalue(sum));
    std::vector<Effect> out;
    out.reserve(raw.size());
    for (const ComplexMatrix& m : raw) out.push_back(validate_effect(scaled(m, u)));
    return out;
}

Effect sum_of(const std::vector<Effect>& effects) {
    ComplexMatrix s(effects.front().dim());
    for (const Effect& e : effects) s += e.matrix();
    return validate_effect(std::move(s));
}

// Convex weights bounded away from zero.
std::vector<double> draw_simplex(TrialContext& ctx, int count) {
    std::vector<double> w(count);
    double total = 0.0;
    for (double& x : w) {
        x = 0.15 + ctx.rng.uniform01();
        total += x;
    }
    for (double& x : w) x /= total;
    return w;
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m) { return u * m * adjoint(u); }

// Effect with constant diagonal c in the given orthonormal basis, so every
// rank-one basis projection has the same trace against it.
ComplexMatrix balanced_effect_in_basis(TrialContext& ctx, const ComplexMatrix& basis, double c) {
    const int n = basis.dim();
    ComplexMatrix off = random_hermitian(n, ctx.rng);
    for (int i = 0; i < n; ++i) off(i, i) = 0.0;
    double spread = std::max(std::abs(min_eigenvalue(off)), std::abs(max_eigenvalue(off)));
    spread = std::max(spread, 1e-12);
    const double eps = 0.9 * std::min(c, 1.0 - c) / spread;
    ComplexMatrix m = scaled(ComplexMatrix::identity(n), c);
    m += scaled(off, eps);
    return hermitian_part(conjugate(basis, m));
}

Observable spectral_observable(const State& rho) {
    const EigenDecomposition dec = hermitian_eig(rho.matrix());
    const int n = rho.dim();
    std::vector<ObservableOutcome> outcomes;
    for (int i = 0; i < n; ++i) {
        ComplexMatrix p(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) p(r, c) = dec.eigenvectors(r, i) * std::conj(dec.eigenvectors(c, i));
        outcomes.push_back({std::to_string(i), validate_effect(hermitian_part(std::move(p)))});
    }
    return validate_observable(std::move(outcomes));
}

Observable trivial_observable(TrialContext& ctx, int dim, int count) {
    const std::vector<double> w = draw_simplex(ctx, count);
    std::vector<ObservableOutcome> outcomes;
    for (int i = 0; i < count; ++i)
        outcomes.push_back({std::to_string(i), validate_effect(scaled(ComplexMatrix::identity(dim), w[i]))});
    return validate_observable(std::move(outcomes));
}

// Generic operation measuring a: Kraus V_j T^{-1/2} a^{1/2} with T = sum V^dagger V.
Operation twirled_operation(TrialContext& ctx, const Effect& a, int pieces) {
    const int n = a.dim();
    std::vector<ComplexMatrix> v;
    ComplexMatrix t(n);
    for (int j = 0; j < pieces; ++j) {
        ComplexMatrix g(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) g(r, c) = ctx.rng.complex_normal();
        t += adjoint(g) * g;
        v.push_back(std::move(g));
    }
    const EigenDecomposition dec = hermitian_eig(t);
    std::vector<double> inv_sqrt(dec.eigenvalues.size());
    for (std::size_t i = 0; i < inv_sqrt.size(); ++i) inv_sqrt[i] = 1.0 / std::sqrt(dec.eigenvalues[i]);
    const ComplexMatrix whiten = assemble_hermitian(dec.eigenvectors, inv_sqrt);
    const ComplexMatrix root = psd_sqrt(a.matrix());
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(v.size());
    for (const ComplexMatrix& g : v) kraus.push_back(g * whiten * root);
    return validate_operation(std::move(kraus));
}

Operation draw_measuring_operation(TrialContext& ctx, const Effect& a, int kind) {
    switch (kind % 3) {
        case 0: return luders_operation(a);
        case 1: return holevo_operation(a, draw_full_rank_state(ctx, a.dim()));
        default: return twirled_operation(ctx, a, ctx.rng.uniform_int(1, 3));
    }
}

// Instrument measuring a whose operations are unitary rotations of the Luders
// ones, split into one or two Kraus pieces per outcome.
Instrument twirled_instrument(TrialContext& ctx, const Observable& a) {
    std::vector<InstrumentOutcome> outcomes;
    for (const auto& out : a.outcomes()) {
        const int pieces = ctx.rng.uniform_int(1, 2);
        const ComplexMatrix root = psd_sqrt(out.effect.matrix());
        std::vector<ComplexMatrix> kraus;
        for (int j = 0; j < pieces; ++j)
            kraus.push_back(scaled(random_unitary(a.dim(), ctx.rng) * root, 1.0 / std::sqrt(pieces)));
        outcomes.push_back({out.label, validate_operation(std::move(kraus))});
    }
    return validate_instrument(std::move(outcomes));
}

Instrument draw_measuring_instrument(TrialContext& ctx, const Observable& a, int kind) {
    switch (kind % 3) {
        case 0: return luders_instrument(a);
        case 1: {
            std::vector<State> alphas;
            for (std::size_t i = 0; i < a.size(); ++i) alphas.push_back(random_state(a.dim(), 1, ctx.rng));
            return holevo_instrument(a, alphas);
        }
        default: return twirled_instrument(ctx, a);
    }
}

Observable draw_observable(TrialContext& ctx, int dim) {
    return random_observable(dim, ctx.rng.uniform_int(2, 4), ctx.rng);
}

State tensor_state(const State& a, const State& b) {
    return validate_state(hermitian_part(kron(a.matrix(), b.matrix())));
}

enum class ProbeKind { atomic, sharp, generic };

Observable draw_probe(TrialContext& ctx, int dim, ProbeKind kind) {
    if (kind == ProbeKind::generic) return random_observable(dim, ctx.rng.uniform_int(2, 3), ctx.rng);
    const ComplexMatrix u = random_unitary(dim, ctx.rng);
    auto column_projector = [&](int j) {
        ComplexMatrix p(dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) p(r, c) = u(r, j) * std::conj(u(c, j));
        return p;
    };
    std::vector<ObservableOutcome> outcomes;
    if (kind == ProbeKind::atomic) {
        for (int j = 0; j < dim; ++j)
            outcomes.push_back({std::to_string(j), validate_effect(hermitian_part(column_projector(j)))});
    } else {
        const int split = ctx.rng.uniform_int(1, dim - 1);
        ComplexMatrix head(dim);
        ComplexMatrix tail(dim);
        for (int j = 0; j < dim; ++j) (j < split ? head : tail) += column_projector(j);
        outcomes.push_back({"0", validate_effect(hermitian_part(std::move(head)))});
        outcomes.push_back({"1", validate_effect(hermitian_part(std::move(tail)))});
    }
    return validate_observable(std::move(outcomes));
}

MeasurementModel draw_model(TrialContext& ctx, ProbeKind kind) {
    const int dim_h = std::min(ctx.pick_dim(), 5);
    const int dim_k = ctx.rng.uniform_int(2, 3);
    const Instrument channel = random_instrument(dim_h * dim_k, 1, ctx.rng.uniform_int(1, 2), ctx.rng);
    return validate_measurement_model(dim_h, dim_k, channel.outcomes().front().operation,
                                      random_state(dim_k, ctx.rng.uniform_int(1, dim_k), ctx.rng),
                                      draw_probe(ctx, dim_k, kind));
}

void record_observable(TrialContext& ctx, const char* key, const Observable& a) {
    if (!ctx.capture) return;
    ctx.record(key, observable_to_json(a));
}

// ---------------------------------------------------------------------------
// Section 2: effects

void check_effect_bounds(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const Effect a = random_effect(n, ctx.rng);
    if (real_trace_product(rho.matrix(), a.matrix()) <= tolerances().prob_zero) return;
    const EffectEntropyBounds bounds = effect_entropy_bounds(a, rho);
    const double s = entropy_of(a, rho);
    ctx.record_matrix("rho", rho.matrix());
    ctx.record_matrix("a", a.matrix());
    ctx.check_leq("spectral-lower-bound", bounds.lower, s);
    ctx.check_leq("log-ratio-upper-bound", s, bounds.upper);
}

void check_upper_equality(TrialContext& ctx) {
    // rho supported inside a's unit eigenspace forces tr(rho a) = 1.
    const int n = ctx.pick_dim();
    const int r = ctx.rng.uniform_int(1, n);
    const ComplexMatrix u = random_unitary(n, ctx.rng);
    ComplexMatrix block = ComplexMatrix(n);
    for (int i = 0; i < r; ++i) block(i, i) = 1.0;
    if (r < n) {
        const Effect tail = random_effect(n - r, ctx.rng);
        for (int i = 0; i < n - r; ++i)
            for (int j = 0; j < n - r; ++j) block(r + i, r + j) = tail.matrix()(i, j);
    }
    ComplexMatrix rho_block(n);
    const State top = random_state(r, ctx.rng.uniform_int(1, r), ctx.rng);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) rho_block(i, j) = top.matrix()(i, j);
    const Effect a = validate_effect(hermitian_part(conjugate(u, block)));
    const State rho = validate_state(hermitian_part(conjugate(u, rho_block)));
    const double s = entropy_of(a, rho);
    ctx.record_matrix("rho", rho.matrix());
    ctx.record_matrix("a", a.matrix());
    ctx.check_close("entropy-equals-log-trace", s, std::log(trace(a.matrix()).real()));
    ctx.check_close("upper-bound-attained", s, effect_entropy_bounds(a, rho).upper);
}

void check_equal_projection_case(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    if (ctx.rng.uniform01() < 0.5) {
        // Uniform state: every rank-one spectral projection weighs a equally,
        // the lower bound is attained and has the closed form (tr a / n) ln n.
        const State rho = maximally_mixed(n);
        const Effect a = random_effect(n, ctx.rng);
        const double s = entropy_of(a, rho);
        const double closed = trace(a.matrix()).real() / n * std::log(static_cast<double>(n));
        ctx.record_matrix("a", a.matrix());
        ctx.check_close("uniform-state-closed-form", s, closed);
        ctx.check_close("lower-bound-attained", s, effect_entropy_bounds(a, rho).lower);
    } else {
        // Effect with constant diagonal in the state's eigenbasis: all
        // rank-one projection weights tr(P_i a) coincide, forcing
        // S_a(rho) = (tr a / n) ln n regardless of the spectrum of rho.
        const State rho = draw_full_rank_state(ctx, n);
        const double c = ctx.rng.uniform(0.1, 0.9);
        const ComplexMatrix basis = hermitian_eig(rho.matrix()).eigenvectors;
        const Effect a = validate_effect(balanced_effect_in_basis(ctx, basis, c));
        ctx.record_matrix("rho", rho.matrix());
        ctx.record_matrix("a", a.matrix());
        ctx.check_close("balanced-effect-closed-form", entropy_of(a, rho), c * std::log(static_cast<double>(n)));
    }
}

void check_superadditivity(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const std::vector<Effect> parts = draw_summable_effects(ctx, n, 2);
    const Effect sum = sum_of(parts);
    ctx.record_matrix("rho", rho.matrix());
    ctx.record_matrix("a", parts[0].matrix());
    ctx.record_matrix("b", parts[1].matrix());
    ctx.check_leq("superadditive-sum", entropy_of(parts[0], rho) + entropy_of(parts[1], rho), entropy_of(sum, rho));
}

void check_superadditivity_equality(TrialContext& ctx) {
    // b proportional to a satisfies tr(b)tr(rho a) = tr(a)tr(rho b) exactly.
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const ComplexMatrix base = random_effect(n, ctx.rng).matrix();
    const double lambda = ctx.rng.uniform(0.1, 1.0);
    const double u = ctx.rng.uniform(0.2, 0.95) / std::max(1.0, (1.0 + lambda) * max_eigenvalue(base));
    const Effect a = validate_effect(scaled(base, u));
    const Effect b = validate_effect(scaled(base, u * lambda));
    const Effect sum = validate_effect(scaled(base, u * (1.0 + lambda)));
    ctx.record_matrix("rho", rho.matrix());
    ctx.record_matrix("a", a.matrix());
    ctx.record("lambda", lambda);
    ctx.check_close("equality-at-proportional-pair", entropy_of(sum, rho),
                    entropy_of(a, rho) + entropy_of(b, rho));
}

void check_complement_bound(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const Effect a = random_effect(n, ctx.rng);
    const Effect ac = complement(a);
    ctx.record_matrix("rho", rho.matrix());
    ctx.record_matrix("a", a.matrix());
    ctx.check_leq("complement-pair-bound", entropy_of(a, rho) + entropy_of(ac, rho),
                  std::log(static_cast<double>(n)));
}

void check_complement_equality(TrialContext& ctx) {
    // Equality needs tr(a) = n tr(rho a): either rho = I/n with any a, or a
    // with constant diagonal in the eigenbasis of any full-rank rho.
    const int n = ctx.pick_dim();
    State rho = maximally_mixed(n);
    Effect a = random_effect(n, ctx.rng);
    if (ctx.rng.uniform01() < 0.5) {
        rho = draw_full_rank_state(ctx, n);
        const ComplexMatrix basis = hermitian_eig(rho.matrix()).eigenvectors;
        a = validate_effect(balanced_effect_in_basis(ctx, basis, ctx.rng.uniform(0.1, 0.9)));
    }
    const Effect ac = complement(a);
    ctx.record_matrix("rho", rho.matrix());
    ctx.record_matrix("a", a.matrix());
    ctx.check_close("complement-pair-equality", entropy_of(a, rho) + entropy_of(ac, rho),
                    std::log(static_cast<double>(n)));
}

void check_sum_dominates_parts(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const std::vector<Effect> parts = draw_summable_effects(ctx, n, 2);
    const double s = entropy_of(sum_of(parts), rho);
    ctx.record_matrix("rho", rho.matrix());
    ctx.record_matrix("a", parts[0].matrix());
    ctx.record_matrix("b", parts[1].matrix());
    ctx.check_leq("sum-dominates-left", entropy_of(parts[0], rho), s);
    ctx.check_leq("sum-dominates-right", entropy_of(parts[1], rho), s);
}

void check_order_monotone(TrialContext& ctx) {
    // a = sqrt(b)(I - e)sqrt(b) <= b for any effect e.
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const Effect b = random_effect(n, ctx.rng);
    const Effect e = random_effect(n, ctx.rng);
    const ComplexMatrix root = psd_sqrt(b.matrix());
    ComplexMatrix gap = ComplexMatrix::identity(n);
    gap -= e.matrix();
    const ComplexMatrix am = hermitian_part(root * gap * root);
    if (am.max_abs() <= tolerances().drop_effect) return;
    const Effect a = validate_effect(am);
    ctx.record_matrix("rho", rho.matrix());
    ctx.record_matrix("a", a.matrix());
    ctx.record_matrix("b", b.matrix());
    ctx.check_leq("monotone-under-order", entropy_of(a, rho), entropy_of(b, rho));
}

void check_multiway_superadditivity(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const std::vector<Effect> parts = draw_summable_effects(ctx, n, ctx.rng.uniform_int(2, 4));
    double total = 0.0;
    for (const Effect& e : parts) total += entropy_of(e, rho);
    ctx.record_matrix("rho", rho.matrix());
    ctx.record("parts", static_cast<int>(parts.size()));
    ctx.check_leq("multiway-superadditivity", total, entropy_of(sum_of(parts), rho));
}

void check_scaling(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const Effect a = random_effect(n, ctx.rng);
    const double lambda = ctx.rng.uniform(0.05, 1.0);
    const Effect la = validate_effect(scaled(a.matrix(), lambda));
    ctx.record_matrix("rho", rho.matrix());
    ctx.record_matrix("a", a.matrix());
    ctx.record("lambda", lambda);
    ctx.check_close("positive-scaling", entropy_of(la, rho), lambda * entropy_of(a, rho));
}

void check_mixture_superadditivity(TrialContext& ctx) {
    // The mixture entropy dominates the mixed entropies; this is the
    // direction the superadditivity argument actually yields.
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const int m = ctx.rng.uniform_int(2, 4);
    const std::vector<double> w = draw_simplex(ctx, m);
    ComplexMatrix mix(n);
    double weighted = 0.0;
    for (int i = 0; i < m; ++i) {
        const Effect a = random_effect(n, ctx.rng);
        mix += scaled(a.matrix(), w[i]);
        weighted += w[i] * entropy_of(a, rho);
    }
    ctx.record_matrix("rho", rho.matrix());
    ctx.record("parts", m);
    ctx.check_leq("mixture-superadditivity", weighted, entropy_of(validate_effect(std::move(mix)), rho));
}

void check_state_concavity(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const Effect a = random_effect(n, ctx.rng);
    const int m = ctx.rng.uniform_int(2, 4);
    const std::vector<double> w = draw_simplex(ctx, m);
    ComplexMatrix mix(n);
    double weighted = 0.0;
    for (int i = 0; i < m; ++i) {
        const State rho = draw_state(ctx, n);
        mix += scaled(rho.matrix(), w[i]);
        weighted += w[i] * entropy_of(a, rho);
    }
    ctx.record_matrix("a", a.matrix());
    ctx.record("parts", m);
    ctx.check_leq("concavity-in-the-state", weighted, entropy_of(a, validate_state(std::move(mix))));
}

void check_state_concavity_equality(TrialContext& ctx) {
    // States conjugated by unitaries commuting with a keep tr(rho a) fixed,
    // which is exactly the equality condition.
    const int n = ctx.pick_dim();
    const Effect a = random_effect(n, ctx.rng);
    const ComplexMatrix basis = hermitian_eig(a.matrix()).eigenvectors;
    const int m = ctx.rng.uniform_int(2, 3);
    const std::vector<double> w = draw_simplex(ctx, m);
    std::vector<State> states = {draw_state(ctx, n)};
    for (int i = 1; i < m; ++i) {
        ComplexMatrix phases(n);
        for (int j = 0; j < n; ++j) {
            const double theta = ctx.rng.uniform(0.0, 6.283185307179586);
            phases(j, j) = ComplexScalar(std::cos(theta), std::sin(theta));
        }
        const ComplexMatrix u = basis * phases * adjoint(basis);
        states.push_back(validate_state(hermitian_part(conjugate(u, states[0].matrix()))));
    }
    ComplexMatrix mix(n);
    double weighted = 0.0;
    for (int i = 0; i < m; ++i) {
        mix += scaled(states[i].matrix(), w[i]);
        weighted += w[i] * entropy_of(a, states[i]);
    }
    ctx.record_matrix("a", a.matrix());
    ctx.record_matrix("rho_1", states[0].matrix());
    ctx.check_close("equality-at-equal-probabilities", entropy_of(a, validate_state(std::move(mix))), weighted);
}

void check_tensor_factorization(TrialContext& ctx) {
    const int n1 = ctx.pick_dim();
    const int n2 = ctx.pick_dim();
    const State rho1 = draw_state(ctx, n1);
    const State rho2 = draw_state(ctx, n2);
    const Effect a1 = random_effect(n1, ctx.rng);
    const Effect a2 = random_effect(n2, ctx.rng);
    const Effect joint = validate_effect(hermitian_part(kron(a1.matrix(), a2.matrix())));
    const State pair = tensor_state(rho1, rho2);
    const double p1 = real_trace_product(rho1.matrix(), a1.matrix());
    const double p2 = real_trace_product(rho2.matrix(), a2.matrix());
    const double s1 = entropy_of(a1, rho1);
    const double s2 = entropy_of(a2, rho2);
    const double s = entropy_of(joint, pair);
    ctx.record_matrix("a1", a1.matrix());
    ctx.record_matrix("a2", a2.matrix());
    ctx.check_close("tensor-product-identity", s, p2 * s1 + p1 * s2);
    ctx.check_leq("tensor-product-bound", s, s1 + s2);
}

void check_dual_additivity(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const Effect a = random_effect(n, ctx.rng);
    const Operation op = draw_measuring_operation(ctx, a, ctx.rng.uniform_int(0, 2));
    const std::vector<Effect> parts = draw_summable_effects(ctx, n, 2);
    const KrausMap dual = dual_operation(op);
    ComplexMatrix sum = parts[0].matrix();
    sum += parts[1].matrix();
    ComplexMatrix split = dual.apply(parts[0].matrix());
    split += dual.apply(parts[1].matrix());
    ctx.record_matrix("a", a.matrix());
    ctx.record_matrix("b", parts[0].matrix());
    ctx.record_matrix("c", parts[1].matrix());
    ctx.check_matrix_close("dual-additivity", dual.apply(sum), split, ctx.tol);
}

void check_unit_absorption(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const Effect a = random_effect(n, ctx.rng);
    const Operation op = draw_measuring_operation(ctx, a, ctx.rng.uniform_int(0, 2));
    const Effect prod = sequential_product_effect(op, identity_effect(n));
    ctx.record_matrix("a", a.matrix());
    ctx.check_matrix_close("unit-absorption", prod.matrix(), a.matrix(), ctx.tol);
}

void check_product_dominated(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const Effect a = random_effect(n, ctx.rng);
    const Effect b = random_effect(n, ctx.rng);
    const Operation op = draw_measuring_operation(ctx, a, ctx.rng.uniform_int(0, 2));
    const Effect prod = sequential_product_effect(op, b);
    ComplexMatrix diff = a.matrix();
    diff -= prod.matrix();
    ctx.record_matrix("a", a.matrix());
    ctx.record_matrix("b", b.matrix());
    ctx.note_margin("product-dominated", min_eigenvalue(diff) + ctx.tol);
}

void check_product_entropy_drop(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const Effect a = random_effect(n, ctx.rng);
    const Effect b = random_effect(n, ctx.rng);
    const Operation op = draw_measuring_operation(ctx, a, ctx.rng.uniform_int(0, 2));
    const Effect prod = sequential_product_effect(op, b);
    ctx.record_matrix("rho", rho.matrix());
    ctx.record_matrix("a", a.matrix());
    ctx.record_matrix("b", b.matrix());
    ctx.check_leq("entropy-after-refinement", entropy_of(prod, rho), entropy_of(a, rho));
}

void check_luders_example(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const Effect a = random_effect(n, ctx.rng);
    const Effect b = random_effect(n, ctx.rng);
    const Operation op = luders_operation(a);
    const ComplexMatrix root = psd_sqrt(a.matrix());
    const Effect prod = sequential_product_effect(op, b);
    ctx.record_matrix("a", a.matrix());
    ctx.record_matrix("b", b.matrix());
    ctx.check_matrix_close("luders-product-form", prod.matrix(), hermitian_part(root * b.matrix() * root),
                           ctx.sub_tol(1e-10));
    // Self-duality: the forward action against one operand matches the
    // forward action against the other.
    const ComplexMatrix x = random_hermitian(n, ctx.rng);
    const ComplexMatrix y = random_hermitian(n, ctx.rng);
    ctx.check_close_tol("self-duality", real_trace_product(apply_operation(op, x), y),
                        real_trace_product(x, apply_operation(op, y)), ctx.sub_tol(1e-10));
}

void check_holevo_example(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const State alpha = draw_full_rank_state(ctx, n);
    const Effect a = random_effect(n, ctx.rng);
    const Effect b = random_effect(n, ctx.rng);
    const Operation op = holevo_operation(a, alpha);
    const Effect prod = sequential_product_effect(op, b);
    const double coeff = real_trace_product(alpha.matrix(), b.matrix());
    ctx.record_matrix("a", a.matrix());
    ctx.record_matrix("b", b.matrix());
    ctx.record_matrix("alpha", alpha.matrix());
    ctx.check_matrix_close("product-collapses-to-scaling", prod.matrix(), scaled(a.matrix(), coeff),
                           ctx.sub_tol(1e-10));
    ctx.check_close("entropy-collapses-to-scaling", entropy_of(prod, rho), coeff * entropy_of(a, rho));
}

void check_holevo_chain(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const std::vector<Effect> as = {random_effect(n, ctx.rng), random_effect(n, ctx.rng),
                                    random_effect(n, ctx.rng)};
    const std::vector<State> alphas = {draw_full_rank_state(ctx, n), draw_full_rank_state(ctx, n)};
    const Effect tail = sequential_product_effect(holevo_operation(as[1], alphas[1]), as[2]);
    const Effect iterated = sequential_product_effect(holevo_operation(as[0], alphas[0]), tail);
    const Effect closed = holevo_chain(as, alphas);
    const double coeff = real_trace_product(alphas[1].matrix(), as[2].matrix()) *
                         real_trace_product(alphas[0].matrix(), as[1].matrix());
    ctx.record_matrix("a1", as[0].matrix());
    ctx.record_matrix("a2", as[1].matrix());
    ctx.record_matrix("a3", as[2].matrix());
    ctx.check_matrix_close("chain-closed-form", iterated.matrix(), closed.matrix(), ctx.sub_tol(1e-10));
    ctx.check_close("chain-entropy-factorization", entropy_of(iterated, rho), coeff * entropy_of(as[0], rho));
}

// ---------------------------------------------------------------------------
// Section 3: observables, instruments, models

void check_uniform_state_observable(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const Observable a = draw_observable(ctx, n);
    record_observable(ctx, "a", a);
    ctx.check_close("uniform-state-entropy", observable_entropy(a, maximally_mixed(n)).nats,
                    std::log(static_cast<double>(n)));
}

void check_observable_bounds(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const Observable a = draw_observable(ctx, n);
    const double s = observable_entropy(a, rho).nats;
    ctx.record_matrix("rho", rho.matrix());
    record_observable(ctx, "a", a);
    ctx.check_leq("dominates-von-neumann", von_neumann_entropy(rho).nats, s);
    ctx.check_leq("log-dim-cap", s, std::log(static_cast<double>(n)));
}

// Hilbert-Schmidt Gram-Schmidt of a random traceless direction against the
// span of the observable's effects and the identity.
ComplexMatrix balanced_direction(TrialContext& ctx, const Observable& a) {
    const int n = a.dim();
    std::vector<ComplexMatrix> basis;
    auto add = [&](ComplexMatrix m) {
        for (const ComplexMatrix& b : basis) {
            const double overlap = real_trace_product(b, m);
            m -= scaled(b, overlap);
        }
        const double norm = std::sqrt(std::max(real_trace_product(m, m), 0.0));
        if (norm > 1e-10) basis.push_back(scaled(m, 1.0 / norm));
    };
    add(ComplexMatrix::identity(n));
    for (const auto& out : a.outcomes()) add(out.effect.matrix());
    ComplexMatrix delta = random_hermitian(n, ctx.rng);
    for (const ComplexMatrix& b : basis) delta -= scaled(b, real_trace_product(b, delta));
    return delta;
}

void check_fixed_state_characterization(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const Observable a = draw_observable(ctx, n);
    const double log_n = std::log(static_cast<double>(n));
    if (ctx.rng.uniform01() < 0.5) {
        // Forward: perturb I/n inside the kernel of every tr(. A_x); the
        // probability ratios stay uniform, so the entropy stays at ln n.
        ComplexMatrix delta = balanced_direction(ctx, a);
        const double norm = std::sqrt(std::max(real_trace_product(delta, delta), 0.0));
        State rho = maximally_mixed(n);
        if (norm > 1e-8) {
            const double spread =
                std::max(std::max(std::abs(min_eigenvalue(delta)), std::abs(max_eigenvalue(delta))), 1e-12);
            ComplexMatrix m = scaled(ComplexMatrix::identity(n), 1.0 / n);
            m += scaled(delta, 0.45 / (n * spread));
            rho = validate_state(hermitian_part(std::move(m)));
        }
        ctx.record_matrix("rho", rho.matrix());
        record_observable(ctx, "a", a);
        ctx.check_close("balanced-ratios-attain-log-dim", observable_entropy(a, rho).nats, log_n);
    } else {
        // Reverse: a quantified violation of the equal-ratio condition keeps
        // the entropy strictly below ln n.
        const State rho = draw_full_rank_state(ctx, n);
        std::vector<double> p, t;
        double resid = 0.0;
        double pmin = 1.0;
        for (const auto& out : a.outcomes()) {
            p.push_back(real_trace_product(rho.matrix(), out.effect.matrix()));
            t.push_back(trace(out.effect.matrix()).real());
            pmin = std::min(pmin, p.back());
        }
        for (std::size_t x = 0; x < p.size(); ++x)
            for (std::size_t y = x + 1; y < p.size(); ++y)
                resid = std::max(resid, std::abs(p[x] * t[y] - p[y] * t[x]));
        if (resid < 1e-2 || pmin < 1e-3) return;
        ctx.record_matrix("rho", rho.matrix());
        record_observable(ctx, "a", a);
        ctx.check_leq("unbalanced-ratios-lose-entropy", 1e-6, log_n - observable_entropy(a, rho).nats);
    }
}

void check_trivial_characterization(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const double log_n = std::log(static_cast<double>(n));
    if (ctx.rng.uniform01() < 0.5) {
        const Observable a = trivial_observable(ctx, n, ctx.rng.uniform_int(2, 4));
        const State rho = draw_state(ctx, n);
        ctx.record_matrix("rho", rho.matrix());
        record_observable(ctx, "a", a);
        ctx.check_close("trivial-attains-log-dim", observable_entropy(a, rho).nats, log_n);
    } else {
        // A non-trivial observable admits a state with entropy strictly
        // below ln n. Search random states first; the extreme eigenvectors
        // of the effects are a guaranteed fallback, because an effect whose
        // traceless part has a large entry has an eigenvalue displaced from
        // the flat value, and the displaced outcome probability costs
        // entropy through the divergence from the trace distribution.
        const Observable a = draw_observable(ctx, n);
        double distance = 0.0;
        for (const auto& out : a.outcomes()) {
            ComplexMatrix centered = out.effect.matrix();
            centered -= scaled(ComplexMatrix::identity(n), trace(out.effect.matrix()).real() / n);
            distance = std::max(distance, centered.max_abs());
        }
        if (distance < 1e-2) return;
        double best_gap = -1.0;
        for (int i = 0; i < 64 && best_gap < 1e-3; ++i) {
            const State rho = draw_state(ctx, n);
            best_gap = std::max(best_gap, log_n - observable_entropy(a, rho).nats);
        }
        if (best_gap < 1e-3) {
            for (const auto& out : a.outcomes()) {
                const EigenDecomposition dec = hermitian_eig(out.effect.matrix());
                for (const int col : {0, n - 1}) {
                    ComplexMatrix pure(n);
                    for (int r = 0; r < n; ++r)
                        for (int c = 0; c < n; ++c)
                            pure(r, c) = dec.eigenvectors(r, col) * std::conj(dec.eigenvectors(c, col));
                    const State rho = validate_state(hermitian_part(std::move(pure)));
                    best_gap = std::max(best_gap, log_n - observable_entropy(a, rho).nats);
                }
            }
        }
        record_observable(ctx, "a", a);
        ctx.record("best_gap", best_gap);
        ctx.check_leq("nontrivial-has-informative-state", 1e-6, best_gap);
    }
}

void check_uniform_characterization(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const double log_n = std::log(static_cast<double>(n));
    if (ctx.rng.uniform01() < 0.5) {
        const Observable a = draw_observable(ctx, n);
        record_observable(ctx, "a", a);
        ctx.check_close("uniform-forward", observable_entropy(a, maximally_mixed(n)).nats, log_n);
    } else {
        // The spectral observable of any state off I/n witnesses the loss.
        const State rho = draw_state(ctx, n);
        ComplexMatrix centered = rho.matrix();
        centered -= scaled(ComplexMatrix::identity(n), 1.0 / n);
        if (std::sqrt(std::max(real_trace_product(centered, centered), 0.0)) < 1e-2) return;
        const Observable witness = spectral_observable(rho);
        const double s = observable_entropy(witness, rho).nats;
        ctx.record_matrix("rho", rho.matrix());
        ctx.check_close("spectral-matches-von-neumann", s, von_neumann_entropy(rho).nats);
        ctx.check_leq("spectral-witness-gap", 1e-6, log_n - s);
    }
}

void check_max_vn_characterization(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const double log_n = std::log(static_cast<double>(n));
    ctx.check_close("uniform-max-entropy", von_neumann_entropy(maximally_mixed(n)).nats, log_n);
    const State rho = draw_state(ctx, n);
    ComplexMatrix centered = rho.matrix();
    centered -= scaled(ComplexMatrix::identity(n), 1.0 / n);
    if (std::sqrt(std::max(real_trace_product(centered, centered), 0.0)) < 1e-2) return;
    ctx.record_matrix("rho", rho.matrix());
    ctx.check_leq("strict-below-log-dim", 1e-6, log_n - von_neumann_entropy(rho).nats);
}

void check_observable_mixture(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const int outcomes = ctx.rng.uniform_int(2, 3);
    const int m = ctx.rng.uniform_int(2, 3);
    const std::vector<double> w = draw_simplex(ctx, m);
    std::vector<Observable> parts;
    for (int i = 0; i < m; ++i) parts.push_back(random_observable(n, outcomes, ctx.rng));
    std::vector<ObservableOutcome> mixed;
    for (int x = 0; x < outcomes; ++x) {
        ComplexMatrix sum(n);
        for (int i = 0; i < m; ++i) sum += scaled(parts[i].outcomes()[x].effect.matrix(), w[i]);
        mixed.push_back({std::to_string(x), validate_effect(std::move(sum))});
    }
    const Observable a = validate_observable(std::move(mixed));
    double weighted = 0.0;
    for (int i = 0; i < m; ++i) weighted += w[i] * observable_entropy(parts[i], rho).nats;
    ctx.record_matrix("rho", rho.matrix());
    record_observable(ctx, "a", a);
    ctx.check_leq("mixture-of-observables", weighted, observable_entropy(a, rho).nats);
}

void check_observable_state_concavity(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const Observable a = draw_observable(ctx, n);
    const int m = ctx.rng.uniform_int(2, 3);
    const std::vector<double> w = draw_simplex(ctx, m);
    ComplexMatrix mix(n);
    double weighted = 0.0;
    for (int i = 0; i < m; ++i) {
        const State rho = draw_state(ctx, n);
        mix += scaled(rho.matrix(), w[i]);
        weighted += w[i] * observable_entropy(a, rho).nats;
    }
    record_observable(ctx, "a", a);
    ctx.check_leq("concavity-in-state", weighted, observable_entropy(a, validate_state(std::move(mix))).nats);
}

void check_coarse_graining_monotone(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const int outcomes = ctx.rng.uniform_int(3, 5);
    const Observable a = random_observable(n, outcomes, ctx.rng);
    const int targets = ctx.rng.uniform_int(2, outcomes - 1);
    std::map<OutcomeLabel, OutcomeLabel> assignment;
    const std::vector<OutcomeLabel> labels = a.labels();
    for (int i = 0; i < outcomes; ++i) {
        const int target = i < targets ? i : ctx.rng.uniform_int(0, targets - 1);
        assignment[labels[i]] = "g" + std::to_string(target);
    }
    const Observable b = coarse_grain(a, assignment);
    ctx.record_matrix("rho", rho.matrix());
    record_observable(ctx, "a", a);
    ctx.check_leq("coarse-graining-monotone", observable_entropy(a, rho).nats, observable_entropy(b, rho).nats);
}

void check_coarse_graining_equality(TrialContext& ctx) {
    // Fibers made of proportional effects meet the in-fiber ratio condition
    // exactly, so coarse-graining loses nothing.
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const Observable base = random_observable(n, ctx.rng.uniform_int(2, 3), ctx.rng);
    std::vector<ObservableOutcome> fine;
    std::map<OutcomeLabel, OutcomeLabel> assignment;
    for (const auto& out : base.outcomes()) {
        const int pieces = ctx.rng.uniform_int(1, 3);
        const std::vector<double> w = draw_simplex(ctx, pieces);
        for (int l = 0; l < pieces; ++l) {
            const OutcomeLabel label = out.label + ":" + std::to_string(l);
            fine.push_back({label, validate_effect(scaled(out.effect.matrix(), w[l]))});
            assignment[label] = out.label;
        }
    }
    const Observable a = validate_observable(std::move(fine));
    const Observable b = coarse_grain(a, assignment);
    ctx.record_matrix("rho", rho.matrix());
    record_observable(ctx, "a", a);
    ctx.check_close("fiber-proportional-equality", observable_entropy(a, rho).nats,
                    observable_entropy(b, rho).nats);
}

void check_sequential_refines(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const Observable a = draw_observable(ctx, n);
    const Observable b = draw_observable(ctx, n);
    const int kind = ctx.rng.uniform01() < 0.5 ? 0 : 2;  // Luders or twirled
    const Instrument inst = draw_measuring_instrument(ctx, a, kind);
    const Observable ab = observable_sequential(a, inst, b).observable;
    ctx.record_matrix("rho", rho.matrix());
    record_observable(ctx, "a", a);
    record_observable(ctx, "b", b);
    ctx.check_leq("sequential-refines", observable_entropy(ab, rho).nats, observable_entropy(a, rho).nats);
}

void check_holevo_collapse(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const Observable a = draw_observable(ctx, n);
    const Observable b = draw_observable(ctx, n);
    std::vector<State> alphas;
    for (std::size_t i = 0; i < a.size(); ++i) alphas.push_back(draw_full_rank_state(ctx, n));
    const Instrument inst = holevo_instrument(a, alphas);
    const Observable ab = observable_sequential(a, inst, b).observable;
    ctx.record_matrix("rho", rho.matrix());
    record_observable(ctx, "a", a);
    record_observable(ctx, "b", b);
    ctx.check_close("holevo-collapse", observable_entropy(ab, rho).nats, observable_entropy(a, rho).nats);
    // Ratio transport: each product outcome keeps the parent's probability
    // to trace ratio.
    for (const auto& ox : a.outcomes()) {
        const double px = real_trace_product(rho.matrix(), ox.effect.matrix());
        const double tx = trace(ox.effect.matrix()).real();
        for (const auto& oy : b.outcomes()) {
            const Effect* exy = ab.find("(" + ox.label + "," + oy.label + ")");
            if (exy == nullptr) continue;
            const double txy = trace(exy->matrix()).real();
            if (txy <= tolerances().prob_zero) continue;
            const double pxy = real_trace_product(rho.matrix(), exy->matrix());
            ctx.check_close_tol("ratio-transport", pxy / txy, px / tx, ctx.sub_tol(1e-10));
        }
    }
}

void check_chain_refines(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const Observable a1 = random_observable(n, ctx.rng.uniform_int(2, 3), ctx.rng);
    const Observable a2 = random_observable(n, ctx.rng.uniform_int(2, 3), ctx.rng);
    const Observable a3 = random_observable(n, ctx.rng.uniform_int(2, 3), ctx.rng);
    const Instrument i1 = draw_measuring_instrument(ctx, a1, ctx.rng.uniform_int(0, 2));
    const Instrument i2 = draw_measuring_instrument(ctx, a2, ctx.rng.uniform_int(0, 2));
    const Instrument pair = compose_instruments(i2, i1);
    const Observable a12 = measured_observable(pair).observable;
    const Observable a123 = observable_sequential(a12, pair, a3).observable;
    ctx.record_matrix("rho", rho.matrix());
    record_observable(ctx, "a1", a1);
    record_observable(ctx, "a2", a2);
    record_observable(ctx, "a3", a3);
    ctx.check_leq("chain-monotone", observable_entropy(a123, rho).nats, observable_entropy(a12, rho).nats);
}

void check_instrument_entropy(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const Instrument inst =
        random_instrument(n, ctx.rng.uniform_int(2, 3), ctx.rng.uniform_int(1, 2), ctx.rng);
    const Observable a = measured_observable(inst).observable;
    ctx.record_matrix("rho", rho.matrix());
    ctx.check_close("instrument-entropy-via-observable", instrument_entropy(inst, rho).nats,
                    observable_entropy(a, rho).nats);
}

void check_instrument_composition(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const Observable a1 = random_observable(n, ctx.rng.uniform_int(2, 3), ctx.rng);
    const Observable a2 = random_observable(n, ctx.rng.uniform_int(2, 3), ctx.rng);
    const Instrument i1 = draw_measuring_instrument(ctx, a1, ctx.rng.uniform_int(0, 2));
    const Instrument i2 = draw_measuring_instrument(ctx, a2, ctx.rng.uniform_int(0, 2));
    const Instrument composed = compose_instruments(i2, i1);
    const Observable via_composition = measured_observable(composed).observable;
    const Observable via_product = observable_sequential(a1, i1, a2).observable;
    record_observable(ctx, "a1", a1);
    record_observable(ctx, "a2", a2);
    const ComplexMatrix zero(n);
    for (const auto& ox : a1.outcomes())
        for (const auto& oy : a2.outcomes()) {
            const OutcomeLabel label = "(" + ox.label + "," + oy.label + ")";
            const Effect* lhs = via_composition.find(label);
            const Effect* rhs = via_product.find(label);
            ctx.check_matrix_close("composed-measured-observable", lhs ? lhs->matrix() : zero,
                                   rhs ? rhs->matrix() : zero, ctx.tol);
        }
    // Probability route: outcome weights of the composed instrument match
    // the product observable.
    for (const auto& out : composed.outcomes()) {
        const Effect* eff = via_product.find(out.label);
        const double p1 = trace(apply_operation(out.operation, rho.matrix())).real();
        const double p2 = eff ? real_trace_product(rho.matrix(), eff->matrix()) : 0.0;
        ctx.check_close_tol("composed-probability", p1, p2, ctx.tol);
    }
}

void check_tensor_observable_additivity(TrialContext& ctx) {
    const int n1 = ctx.pick_dim();
    const int n2 = ctx.pick_dim();
    const State rho1 = draw_state(ctx, n1);
    const State rho2 = draw_state(ctx, n2);
    const Observable a = random_observable(n1, ctx.rng.uniform_int(2, 3), ctx.rng);
    const Observable b = random_observable(n2, ctx.rng.uniform_int(2, 3), ctx.rng);
    const Observable ab = tensor_observable(a, b);
    const State pair = tensor_state(rho1, rho2);
    ctx.record_matrix("rho1", rho1.matrix());
    ctx.record_matrix("rho2", rho2.matrix());
    record_observable(ctx, "a", a);
    record_observable(ctx, "b", b);
    ctx.check_close("tensor-additivity", observable_entropy(ab, pair).nats,
                    observable_entropy(a, rho1).nats + observable_entropy(b, rho2).nats);
}

void check_luders_product_form(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const Observable a = draw_observable(ctx, n);
    const Observable b = draw_observable(ctx, n);
    const Observable ab = observable_sequential(a, luders_instrument(a), b).observable;
    record_observable(ctx, "a", a);
    record_observable(ctx, "b", b);
    const ComplexMatrix zero(n);
    for (const auto& ox : a.outcomes()) {
        const ComplexMatrix root = psd_sqrt(ox.effect.matrix());
        for (const auto& oy : b.outcomes()) {
            const Effect* eff = ab.find("(" + ox.label + "," + oy.label + ")");
            ctx.check_matrix_close("luders-explicit-form", eff ? eff->matrix() : zero,
                                   hermitian_part(root * oy.effect.matrix() * root), ctx.tol);
        }
    }
}

void check_model_distribution(TrialContext& ctx) {
    const MeasurementModel m = draw_model(ctx, ProbeKind::generic);
    const State rho = draw_state(ctx, m.dim_h());
    const Observable a = model_observable(m).observable;
    const ComplexMatrix joint =
        hermitian_part(apply_operation(m.nu(), kron(rho.matrix(), m.sigma().matrix())));
    const ComplexMatrix eye_h = ComplexMatrix::identity(m.dim_h());
    ctx.record_matrix("rho", rho.matrix());
    for (const auto& out : m.probe().outcomes()) {
        const Effect* ax = a.find(out.label);
        const double p_system = ax ? real_trace_product(rho.matrix(), ax->matrix()) : 0.0;
        const double p_pointer = real_trace_product(joint, kron(eye_h, out.effect.matrix()));
        ctx.check_close("distribution-transport", p_system, p_pointer);
    }
}

void check_model_atomic_probe(TrialContext& ctx) {
    const MeasurementModel m =
        draw_model(ctx, ctx.rng.uniform01() < 0.5 ? ProbeKind::atomic : ProbeKind::sharp);
    const State rho = draw_state(ctx, m.dim_h());
    const ModelEntropyReport report = model_entropy_gap(m, rho);
    ctx.record_matrix("rho", rho.matrix());
    ctx.record("gap", report.gap);
    ctx.check_leq("pointer-gap-sign", report.gap, 0.0);
    ctx.check_leq("system-below-pointer", report.observable_nats, report.probe_nats);
}

void check_model_gap_identity(TrialContext& ctx) {
    const MeasurementModel m = draw_model(ctx, ProbeKind::generic);
    const State rho = draw_state(ctx, m.dim_h());
    const ModelEntropyReport report = model_entropy_gap(m, rho);
    ctx.record_matrix("rho", rho.matrix());
    ctx.record("gap", report.gap);
    ctx.check_close("pointer-entropy-identity", report.probe_nats, report.observable_nats - report.gap);
}

// Deliberately false: the sum of two effects is *more* entropic than the
// parts, so asserting subadditivity must fail and produce a counterexample.
void check_canary(TrialContext& ctx) {
    const int n = ctx.pick_dim();
    const State rho = draw_state(ctx, n);
    const std::vector<Effect> parts = draw_summable_effects(ctx, n, 2);
    ctx.record_matrix("rho", rho.matrix());
    ctx.record_matrix("a", parts[0].matrix());
    ctx.record_matrix("b", parts[1].matrix());
    ctx.check_leq("subadditive-sum", entropy_of(sum_of(parts), rho),
                  entropy_of(parts[0], rho) + entropy_of(parts[1], rho));
}

}  // namespace

const std::vector<CheckSpec>& check_specs() {
    static const std::vector<CheckSpec> specs = {
        {"thm-2.1-bounds", "spectral lower and log-ratio upper bounds on effect entropy", 1000, 1e-9,
         check_effect_bounds},
        {"thm-2.1-upper-equality", "upper bound attained exactly when the effect is certain", 1000, 1e-9,
         check_upper_equality},
        {"thm-2.1-equal-projection-case", "closed form when all spectral projections weigh the effect equally",
         1000, 1e-9, check_equal_projection_case},
        {"thm-2.2", "entropy is superadditive over sums of orthogonal effects", 1000, 1e-9,
         check_superadditivity},
        {"thm-2.2-equality", "superadditivity is tight exactly for matched probability ratios", 1000, 1e-9,
         check_superadditivity_equality},
        {"cor-2.3", "effect plus complement never exceeds ln n", 1000, 1e-9, check_complement_bound},
        {"cor-2.3-equality", "effect plus complement reaches ln n at balanced ratios", 1000, 1e-9,
         check_complement_equality},
        {"cor-2.4", "a sum dominates the entropy of each summand", 1000, 1e-9, check_sum_dominates_parts},
        {"cor-2.5", "entropy is monotone in the effect order", 1000, 1e-9, check_order_monotone},
        {"cor-2.6", "superadditivity over many summands", 1000, 1e-9, check_multiway_superadditivity},
        {"cor-2.7-scaling", "entropy scales linearly under positive scalar multiples", 1000, 1e-10,
         check_scaling},
        {"cor-2.7-mixture", "a convex mixture of effects dominates the mixed entropies", 1000, 1e-9,
         check_mixture_superadditivity},
        {"thm-2.8", "entropy is concave in the state", 1000, 1e-9, check_state_concavity},
        {"thm-2.8-equality", "concavity is tight at equal outcome probabilities", 1000, 1e-9,
         check_state_concavity_equality},
        {"thm-2.9", "tensor products factor exactly and stay below the sum", 1000, 1e-9,
         check_tensor_factorization},
        {"thm-2.10-i", "duals of measuring operations are additive", 1000, 1e-10, check_dual_additivity},
        {"thm-2.10-ii", "sequential product with the identity returns the effect", 1000, 1e-10,
         check_unit_absorption},
        {"thm-2.10-iii", "sequential products sit below the first factor", 1000, 1e-9,
         check_product_dominated},
        {"thm-2.10-iv", "sequential measurement never raises entropy", 1000, 1e-9,
         check_product_entropy_drop},
        {"ex-1-luders", "Luders operations are self-dual with the sandwich product form", 1000, 1e-9,
         check_luders_example},
        {"ex-2-holevo", "Holevo products collapse to scalar multiples", 1000, 1e-9, check_holevo_example},
        {"ex-2-chain", "three-step Holevo chains factor into trace coefficients", 1000, 1e-9,
         check_holevo_chain},
        {"eq-3.1", "every observable is blind on the maximally mixed state", 1000, 1e-9,
         check_uniform_state_observable},
        {"thm-3.1", "observable entropy sits between von Neumann entropy and ln n", 1000, 1e-9,
         check_observable_bounds},
        {"cor-3.2-i", "ln n is reached exactly at uniform probability ratios", 1000, 1e-9,
         check_fixed_state_characterization},
        {"cor-3.2-ii", "trivial observables are the ones blind on every state", 300, 1e-9,
         check_trivial_characterization},
        {"cor-3.2-iii", "the maximally mixed state is the one blinding every observable", 1000, 1e-9,
         check_uniform_characterization},
        {"cor-3.2-iv", "ln n von Neumann entropy pins down the maximally mixed state", 1000, 1e-9,
         check_max_vn_characterization},
        {"thm-3.3-i", "entropy of observable mixtures dominates mixed entropies", 1000, 1e-9,
         check_observable_mixture},
        {"thm-3.3-ii", "observable entropy is concave in the state", 1000, 1e-9,
         check_observable_state_concavity},
        {"thm-3.4", "coarse-graining never lowers entropy", 1000, 1e-9, check_coarse_graining_monotone},
        {"cor-3.5", "proportional fibers make coarse-graining lossless", 1000, 1e-9,
         check_coarse_graining_equality},
        {"cor-3.6", "sequential products refine the first observable", 1000, 1e-9, check_sequential_refines},
        {"cor-3.6-holevo-equality", "Holevo instruments make sequential refinement lossless", 500, 1e-9,
         check_holevo_collapse},
        {"cor-3.7", "longer measurement chains keep refining", 1000, 1e-9, check_chain_refines},
        {"instrument-entropy-def", "instrument entropy equals its measured observable's entropy", 500, 1e-9,
         check_instrument_entropy},
        {"instrument-composition", "composed instruments measure the sequential product", 500, 1e-8,
         check_instrument_composition},
        {"lem-3.8", "tensor product observables add entropies on product states", 500, 1e-9,
         check_tensor_observable_additivity},
        {"luders-seqprod-form", "Luders sequential products have the sandwich form", 500, 1e-10,
         check_luders_product_form},
        {"model-distribution", "a model's system distribution matches its pointer distribution", 400, 1e-9,
         check_model_distribution},
        {"model-atomic-probe", "atomic or sharp probes make the pointer entropy dominate", 1000, 1e-9,
         check_model_atomic_probe},
        {"eq-3.3-gap-identity", "pointer entropy equals system entropy minus the gap term", 400, 1e-9,
         check_model_gap_identity},
        {kCanaryId, "deliberately false subadditivity claim proving violations are caught", 1000, 1e-9,
         check_canary},
    };
    return specs;
}

}  // namespace qme::detail
