#include "qme/random_objects.hpp"

#include <cmath>
#include <string>

#include "qme/tolerances.hpp"

namespace qme {

namespace {

ComplexMatrix ginibre(int dim, Rng& rng) {
    ComplexMatrix g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
    return g;
}

std::string outcome_label(int x) { return std::to_string(x); }

}  // namespace

ComplexMatrix random_hermitian(int dim, Rng& rng) {
    return hermitian_part(ginibre(dim, rng));
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
    return hermitian_eig(random_hermitian(dim, rng)).eigenvectors;
}

State random_state(int dim, int rank, Rng& rng) {
    if (dim < 1) throw DimensionError("random_state: dim must be >= 1");
    if (rank < 1 || rank > dim)
        throw DimensionError("random_state: rank " + std::to_string(rank) + " outside [1, " +
                             std::to_string(dim) + "]");
    // G G^dagger with G of size dim x rank, assembled column by column.
    std::vector<std::vector<ComplexScalar>> cols(rank, std::vector<ComplexScalar>(dim));
    for (int c = 0; c < rank; ++c)
        for (int i = 0; i < dim; ++i) cols[c][i] = rng.complex_normal();
    ComplexMatrix rho(dim);
    for (int c = 0; c < rank; ++c)
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) rho(i, j) += cols[c][i] * std::conj(cols[c][j]);
    const double t = trace(rho).real();
    rho *= ComplexScalar{1.0 / t, 0.0};
    return validate_state(hermitian_part(rho));
}

Effect random_effect(int dim, Rng& rng) {
    if (dim < 1) throw DimensionError("random_effect: dim must be >= 1");
    const ComplexMatrix h = random_hermitian(dim, rng);
    const double u1 = rng.uniform01();
    const double u2 = rng.uniform01();
    const double lo = std::min(u1, u2);
    const double hi = std::max(u1, u2);
    const EigenDecomposition dec = hermitian_eig(h);
    const double lmin = dec.eigenvalues.front();
    const double lmax = dec.eigenvalues.back();
    std::vector<double> vals(dec.eigenvalues.size());
    if (lmax - lmin < 1e-12) {
        // flat spectrum collapses to the midpoint of [lo, hi]
        for (double& v : vals) v = 0.5 * (lo + hi);
    } else {
        for (std::size_t i = 0; i < vals.size(); ++i)
            vals[i] = lo + (hi - lo) * (dec.eigenvalues[i] - lmin) / (lmax - lmin);
    }
    return validate_effect(assemble_hermitian(dec.eigenvectors, vals));
}

Observable random_observable(int dim, int outcomes, Rng& rng) {
    if (outcomes < 2) throw DimensionError("random_observable: outcomes must be >= 2");
    // B_x = G_x^dagger G_x, then A_x = S^{-1/2} B_x S^{-1/2} with S = sum B_x.
    std::vector<ComplexMatrix> b;
    b.reserve(outcomes);
    ComplexMatrix s(dim);
    for (int x = 0; x < outcomes; ++x) {
        const ComplexMatrix g = ginibre(dim, rng);
        b.push_back(hermitian_part(matmul(adjoint(g), g)));
        s += b.back();
    }
    const EigenDecomposition dec = hermitian_eig(s);
    if (dec.eigenvalues.front() <= tolerances().eig_zero * std::max(1.0, s.max_abs()))
        throw NumericalError("random_observable: normalization matrix singular, min eigenvalue " +
                             std::to_string(dec.eigenvalues.front()));
    std::vector<double> inv_roots(dec.eigenvalues.size());
    for (std::size_t i = 0; i < inv_roots.size(); ++i) inv_roots[i] = 1.0 / std::sqrt(dec.eigenvalues[i]);
    const ComplexMatrix s_inv_root = assemble_hermitian(dec.eigenvectors, inv_roots);
    std::vector<ObservableOutcome> out;
    out.reserve(outcomes);
    for (int x = 0; x < outcomes; ++x) {
        ComplexMatrix a = hermitian_part(matmul(matmul(s_inv_root, b[x]), s_inv_root));
        out.push_back({outcome_label(x), validate_effect(std::move(a))});
    }
    return validate_observable(std::move(out));
}

Instrument random_instrument(int dim, int outcomes, int kraus_per_outcome, Rng& rng) {
    if (outcomes < 1 || kraus_per_outcome < 1)
        throw DimensionError("random_instrument: counts must be >= 1");
    const int m = outcomes * kraus_per_outcome;
    std::vector<ComplexMatrix> v;
    v.reserve(m);
    ComplexMatrix t(dim);
    for (int j = 0; j < m; ++j) {
        v.push_back(ginibre(dim, rng));
        t += matmul(adjoint(v.back()), v.back());
    }
    const EigenDecomposition dec = hermitian_eig(hermitian_part(t));
    if (dec.eigenvalues.front() <= tolerances().eig_zero * std::max(1.0, t.max_abs()))
        throw NumericalError("random_instrument: normalization matrix singular");
    std::vector<double> inv_roots(dec.eigenvalues.size());
    for (std::size_t i = 0; i < inv_roots.size(); ++i) inv_roots[i] = 1.0 / std::sqrt(dec.eigenvalues[i]);
    const ComplexMatrix t_inv_root = assemble_hermitian(dec.eigenvectors, inv_roots);
    std::vector<InstrumentOutcome> out;
    out.reserve(outcomes);
    int j = 0;
    for (int x = 0; x < outcomes; ++x) {
        std::vector<ComplexMatrix> ks;
        ks.reserve(kraus_per_outcome);
        for (int i = 0; i < kraus_per_outcome; ++i, ++j) ks.push_back(matmul(v[j], t_inv_root));
        out.push_back({outcome_label(x), validate_operation(std::move(ks))});
    }
    return validate_instrument(std::move(out));
}

State random_state(int dim, int rank, RngSeed seed) {
    Rng rng(seed);
    return random_state(dim, rank, rng);
}

Effect random_effect(int dim, RngSeed seed) {
    Rng rng(seed);
    return random_effect(dim, rng);
}

Observable random_observable(int dim, int outcomes, RngSeed seed) {
    Rng rng(seed);
    return random_observable(dim, outcomes, rng);
}

Instrument random_instrument(int dim, int outcomes, int kraus_per_outcome, RngSeed seed) {
    Rng rng(seed);
    return random_instrument(dim, outcomes, kraus_per_outcome, rng);
}

}  // namespace qme
