#pragma once

namespace qme {

// Central record of numerical tolerances. The values below are the defaults;
// callers may adjust the mutable record returned by tolerances() before
// constructing objects (the CLI does not expose this; tests do).
struct Tolerances {
    double herm = 1e-9;          // max-norm bound on ||m - m^dagger|| for Hermitian inputs
    double psd = 1e-9;           // eigenvalues >= -psd count as nonnegative; [-psd, 0) clips to 0
    double unit_trace = 1e-9;    // |tr(rho) - 1| bound for states
    double completeness = 1e-8;  // matrix-equality slack for sum(A_x) == I and Kraus sums
    double eig_zero = 1e-12;     // eigenvalues at or below this are treated as zero
    double prob_zero = 1e-12;    // probabilities at or below this contribute zero entropy
    double trace_imag = 1e-10;   // |Im tr(rho a)| must stay below this
    double eig_group = 1e-10;    // eigenvalue grouping width for spectral projections
    double drop_effect = 1e-12;  // sequential-product outcomes below this max-norm are dropped
    double measures = 1e-8;      // max-norm slack when checking an instrument measures an observable
    double duality = 1e-10;      // residual for duality and closed-form operator identities
    double entropy_clamp = 1e-12;  // entropies within this below zero clamp to zero
};

inline Tolerances& tolerances() {
    static Tolerances t;
    return t;
}

}  // namespace qme
