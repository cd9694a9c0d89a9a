#pragma once

#include "qme/objects.hpp"

namespace qme {

// Entropy in nats. Nonnegative: values within entropy_clamp below zero clamp
// to zero, anything lower is a NumericalError.
struct EntropyValue {
    double nats;
};

struct EffectEntropyBounds {
    double lower;  // -sum_i tr(P_i a) lambda_i ln(lambda_i) over spectral projections of rho
    double upper;  // ln(tr(a) / tr(rho a))
};

EntropyValue von_neumann_entropy(const State& rho);

// S_a(rho) = -tr(rho a) ln(tr(rho a) / tr(a)); zero when tr(rho a) <= prob_zero.
EntropyValue effect_entropy(const Effect& a, const State& rho);

// UndefinedBoundError when tr(rho a) <= prob_zero. Eigenvalues of rho within
// eig_group of each other share one spectral projection.
EffectEntropyBounds effect_entropy_bounds(const Effect& a, const State& rho);

// sum over outcomes of effect_entropy.
EntropyValue observable_entropy(const Observable& a, const State& rho);

// sum_x -p_x ln(p_x / t_x) with p_x = tr(I_x(rho)), t_x = tr(I_x(I));
// zero-probability outcomes contribute zero.
EntropyValue instrument_entropy(const Instrument& inst, const State& rho);

}  // namespace qme
