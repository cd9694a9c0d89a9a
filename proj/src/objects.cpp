#include "qme/objects.hpp"

#include <set>
#include <string>

#include "qme/tolerances.hpp"

namespace qme {

namespace {

double hermiticity_deviation(const ComplexMatrix& m) {
    double dev = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    return dev;
}

void require_hermitian(const ComplexMatrix& m, const std::string& invariant) {
    const double dev = hermiticity_deviation(m);
    const double bound = tolerances().herm * std::max(1.0, m.max_abs());
    if (dev > bound) throw InvariantViolation(invariant, dev - bound, "||m - m^dagger||max = " + std::to_string(dev));
}

void require_unique_labels(const std::vector<std::string>& labels, const std::string& invariant) {
    std::set<std::string> seen;
    for (const std::string& l : labels)
        if (!seen.insert(l).second) throw InvariantViolation(invariant, 0.0, "duplicate label '" + l + "'");
}

}  // namespace

State validate_state(ComplexMatrix rho) {
    require_hermitian(rho, "state.hermitian");
    const ComplexScalar t = trace(rho);
    const double trace_dev = std::abs(t - ComplexScalar{1.0, 0.0});
    if (trace_dev > tolerances().unit_trace)
        throw InvariantViolation("state.unit-trace", trace_dev - tolerances().unit_trace,
                                 "tr(rho) = " + std::to_string(t.real()) + " + " + std::to_string(t.imag()) + "i");
    const EigenDecomposition dec = hermitian_eig(rho);
    const double lo = dec.eigenvalues.front();
    if (lo < -tolerances().psd)
        throw InvariantViolation("state.positive", -tolerances().psd - lo,
                                 "min eigenvalue " + std::to_string(lo));
    return State(std::move(rho));
}

Effect validate_effect(ComplexMatrix a) {
    require_hermitian(a, "effect.hermitian");
    if (a.max_abs() <= tolerances().psd)
        throw InvariantViolation("effect.nonzero", 0.0, "max-norm " + std::to_string(a.max_abs()));
    const EigenDecomposition dec = hermitian_eig(a);
    const double lo = dec.eigenvalues.front();
    const double hi = dec.eigenvalues.back();
    if (lo < -tolerances().psd)
        throw InvariantViolation("effect.spectrum-low", -tolerances().psd - lo,
                                 "min eigenvalue " + std::to_string(lo));
    if (hi > 1.0 + tolerances().psd)
        throw InvariantViolation("effect.spectrum-high", hi - 1.0 - tolerances().psd,
                                 "max eigenvalue " + std::to_string(hi));
    return Effect(std::move(a));
}

Observable validate_observable(std::vector<ObservableOutcome> outcomes) {
    if (outcomes.empty()) throw InvariantViolation("observable.nonempty", 0.0, "no outcomes");
    const int n = outcomes.front().effect.dim();
    std::vector<std::string> labels;
    ComplexMatrix sum(n);
    for (const auto& o : outcomes) {
        if (o.effect.dim() != n)
            throw DimensionError("observable outcome '" + o.label + "' has dim " +
                                 std::to_string(o.effect.dim()) + ", expected " + std::to_string(n));
        labels.push_back(o.label);
        sum += o.effect.matrix();
    }
    require_unique_labels(labels, "observable.labels-unique");
    const double dev = sum.max_abs_diff(ComplexMatrix::identity(n));
    if (dev > tolerances().completeness)
        throw InvariantViolation("observable.completeness", dev - tolerances().completeness,
                                 "||sum A_x - I||max = " + std::to_string(dev));
    return Observable(std::move(outcomes));
}

Operation validate_operation(std::vector<ComplexMatrix> kraus) {
    if (kraus.empty()) throw InvariantViolation("operation.kraus-nonempty", 0.0, "empty Kraus list");
    const int n = kraus.front().dim();
    for (const ComplexMatrix& k : kraus)
        if (k.dim() != n)
            throw DimensionError("Kraus operator dim " + std::to_string(k.dim()) + ", expected " +
                                 std::to_string(n));
    KrausMap map{std::move(kraus)};
    const ComplexMatrix s = map.kraus_sum();
    const EigenDecomposition dec = hermitian_eig(s);
    const double hi = dec.eigenvalues.back();
    if (hi > 1.0 + tolerances().completeness)
        throw InvariantViolation("operation.trace-nonincreasing", hi - 1.0 - tolerances().completeness,
                                 "max eigenvalue of sum K^dagger K is " + std::to_string(hi));
    return Operation(std::move(map));
}

Instrument validate_instrument(std::vector<InstrumentOutcome> outcomes) {
    if (outcomes.empty()) throw InvariantViolation("instrument.nonempty", 0.0, "no outcomes");
    const int n = outcomes.front().operation.dim();
    std::vector<std::string> labels;
    ComplexMatrix total(n);
    for (const auto& o : outcomes) {
        if (o.operation.dim() != n)
            throw DimensionError("instrument outcome '" + o.label + "' has dim " +
                                 std::to_string(o.operation.dim()) + ", expected " + std::to_string(n));
        labels.push_back(o.label);
        total += o.operation.map().kraus_sum();
    }
    require_unique_labels(labels, "instrument.labels-unique");
    const double dev = total.max_abs_diff(ComplexMatrix::identity(n));
    if (dev > tolerances().completeness)
        throw InvariantViolation("instrument.channel-sum", dev - tolerances().completeness,
                                 "||sum_x sum_i K^dagger K - I||max = " + std::to_string(dev));
    return Instrument(std::move(outcomes));
}

MeasurementModel validate_measurement_model(int dim_h, int dim_k, Operation nu, State sigma, Observable probe) {
    if (dim_h < 1 || dim_k < 1)
        throw DimensionError("measurement model dims must be >= 1, got " + std::to_string(dim_h) + ", " +
                             std::to_string(dim_k));
    if (nu.dim() != dim_h * dim_k)
        throw DimensionError("nu acts on dim " + std::to_string(nu.dim()) + ", expected dim_h*dim_k = " +
                             std::to_string(dim_h * dim_k));
    if (sigma.dim() != dim_k)
        throw DimensionError("sigma has dim " + std::to_string(sigma.dim()) + ", expected dim_k = " +
                             std::to_string(dim_k));
    if (probe.dim() != dim_k)
        throw DimensionError("probe observable has dim " + std::to_string(probe.dim()) +
                             ", expected dim_k = " + std::to_string(dim_k));
    const ComplexMatrix s = nu.map().kraus_sum();
    const double dev = s.max_abs_diff(ComplexMatrix::identity(nu.dim()));
    if (dev > tolerances().completeness)
        throw InvariantViolation("model.nu-trace-preserving", dev - tolerances().completeness,
                                 "||sum K^dagger K - I||max = " + std::to_string(dev));
    return MeasurementModel(dim_h, dim_k, std::move(nu), std::move(sigma), std::move(probe));
}

Effect complement(const Effect& a) {
    ComplexMatrix c = ComplexMatrix::identity(a.dim()) - a.matrix();
    if (c.max_abs() <= tolerances().psd)
        throw ZeroEffectError("complement of the identity effect is zero");
    return validate_effect(std::move(c));
}

}  // namespace qme
