#include "qme/entropy.hpp"

#include <cmath>
#include <string>

#include "qme/tolerances.hpp"

namespace qme {

namespace {

EntropyValue make_entropy(double nats) {
    if (!std::isfinite(nats)) throw NumericalError("entropy is not finite");
    if (nats < 0.0) {
        if (nats < -tolerances().entropy_clamp)
            throw NumericalError("entropy " + std::to_string(nats) + " below the clamp window");
        nats = 0.0;
    }
    return EntropyValue{nats};
}

}  // namespace

EntropyValue von_neumann_entropy(const State& rho) {
    const EigenDecomposition dec = hermitian_eig(rho.matrix());
    double s = 0.0;
    for (double lam : dec.eigenvalues) {
        if (lam <= tolerances().eig_zero) continue;
        s -= lam * std::log(lam);
    }
    return make_entropy(s);
}

EntropyValue effect_entropy(const Effect& a, const State& rho) {
    if (a.dim() != rho.dim())
        throw DimensionError("effect_entropy: effect dim " + std::to_string(a.dim()) + " vs state dim " +
                             std::to_string(rho.dim()));
    const double p = real_trace_product(rho.matrix(), a.matrix());
    if (p <= tolerances().prob_zero) return EntropyValue{0.0};
    const double t = trace(a.matrix()).real();
    return make_entropy(-p * std::log(p / t));
}

EffectEntropyBounds effect_entropy_bounds(const Effect& a, const State& rho) {
    if (a.dim() != rho.dim())
        throw DimensionError("effect_entropy_bounds: effect dim " + std::to_string(a.dim()) +
                             " vs state dim " + std::to_string(rho.dim()));
    const double p = real_trace_product(rho.matrix(), a.matrix());
    if (p <= tolerances().prob_zero)
        throw UndefinedBoundError("effect_entropy_bounds: tr(rho a) = " + std::to_string(p));
    const double t = trace(a.matrix()).real();
    const EigenDecomposition dec = hermitian_eig(rho.matrix());
    const int n = rho.dim();

    // tr(P a) for the spectral projection of each eigenvalue group.
    double lower = 0.0;
    int i = 0;
    while (i < n) {
        int j = i;
        double lam_sum = 0.0;
        double proj_trace = 0.0;
        while (j < n && dec.eigenvalues[j] - dec.eigenvalues[i] <= tolerances().eig_group) {
            lam_sum += dec.eigenvalues[j];
            ComplexScalar q{};
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    q += std::conj(dec.eigenvectors(r, j)) * a.matrix()(r, c) * dec.eigenvectors(c, j);
            proj_trace += q.real();
            ++j;
        }
        const double lam = lam_sum / (j - i);
        if (lam > tolerances().eig_zero) lower -= proj_trace * lam * std::log(lam);
        i = j;
    }

    EffectEntropyBounds b{lower, std::log(t / p)};
    if (b.lower > b.upper + 1e-9)
        throw NumericalError("effect entropy bounds crossed: lower " + std::to_string(b.lower) + " > upper " +
                             std::to_string(b.upper));
    return b;
}

EntropyValue observable_entropy(const Observable& a, const State& rho) {
    double s = 0.0;
    for (const auto& o : a.outcomes()) s += effect_entropy(o.effect, rho).nats;
    return make_entropy(s);
}

EntropyValue instrument_entropy(const Instrument& inst, const State& rho) {
    if (inst.dim() != rho.dim())
        throw DimensionError("instrument_entropy: instrument dim " + std::to_string(inst.dim()) +
                             " vs state dim " + std::to_string(rho.dim()));
    double s = 0.0;
    const ComplexMatrix eye = ComplexMatrix::identity(rho.dim());
    for (const auto& o : inst.outcomes()) {
        const ComplexMatrix sum = o.operation.map().kraus_sum();  // I_x^*(I)
        const double p = real_trace_product(rho.matrix(), sum);   // tr(I_x(rho)) = tr(rho I_x^*(I))
        if (p <= tolerances().prob_zero) continue;
        const double t = real_trace_product(eye, sum);
        s += -p * std::log(p / t);
    }
    return make_entropy(s);
}

}  // namespace qme
