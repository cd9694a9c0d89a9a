#include "qme/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qme/tolerances.hpp"

namespace qme {

namespace {

constexpr int kMaxJacobiSweeps = 60;
constexpr double kJacobiConvergence = 1e-14;

double max_offdiag(const ComplexMatrix& a) {
    double off = 0.0;
    for (int p = 0; p < a.dim(); ++p)
        for (int q = p + 1; q < a.dim(); ++q) off = std::max(off, std::abs(a(p, q)));
    return off;
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw DimensionError("matmul: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    const int n = a.dim();
    ComplexMatrix c(n);
#pragma omp parallel for schedule(static) if (n >= kOmpMinDim)
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const ComplexScalar aik = a(i, k);
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    const int n = m.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = std::conj(m(j, i));
    return out;
}

ComplexScalar trace(const ComplexMatrix& m) {
    ComplexScalar t{};
    for (int i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    const int n = m.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return out;
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw DimensionError("real_trace_product: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    ComplexScalar t{};
    for (int i = 0; i < a.dim(); ++i)
        for (int k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
    const double scale = std::max(1.0, std::abs(t));
    if (std::abs(t.imag()) > tolerances().trace_imag * scale)
        throw NumericalError("real_trace_product: imaginary part " + std::to_string(t.imag()));
    return t.real();
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
    const int n = m.dim();
    double herm_dev = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) herm_dev = std::max(herm_dev, std::abs(m(i, j) - std::conj(m(j, i))));
    const double scale = std::max(1.0, m.max_abs());
    if (herm_dev > tolerances().herm * scale)
        throw NotHermitianError("hermitian_eig: ||m - m^dagger||max = " + std::to_string(herm_dev));

    ComplexMatrix a = hermitian_part(m);
    ComplexMatrix v = ComplexMatrix::identity(n);

    if (n > 1) {
        int sweep = 0;
        for (; sweep < kMaxJacobiSweeps; ++sweep) {
            if (max_offdiag(a) <= kJacobiConvergence * scale) break;
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    const double g = std::abs(a(p, q));
                    if (g <= kJacobiConvergence * scale * 1e-2) continue;
                    const ComplexScalar phase = a(p, q) / g;
                    const double alpha = a(p, p).real();
                    const double beta = a(q, q).real();
                    const double tau = (alpha - beta) / (2.0 * g);
                    const double sgn = tau < 0.0 ? -1.0 : 1.0;
                    const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    const ComplexScalar sp = s * phase;
                    const ComplexScalar spc = s * std::conj(phase);
                    // columns p, q of both the working matrix and the basis
                    for (int r = 0; r < n; ++r) {
                        const ComplexScalar ap = a(r, p), aq = a(r, q);
                        a(r, p) = c * ap + spc * aq;
                        a(r, q) = -sp * ap + c * aq;
                        const ComplexScalar vp = v(r, p), vq = v(r, q);
                        v(r, p) = c * vp + spc * vq;
                        v(r, q) = -sp * vp + c * vq;
                    }
                    // rows p, q
                    for (int r = 0; r < n; ++r) {
                        const ComplexScalar ap = a(p, r), aq = a(q, r);
                        a(p, r) = c * ap + sp * aq;
                        a(q, r) = -spc * ap + c * aq;
                    }
                    a(p, q) = ComplexScalar{};
                    a(q, p) = ComplexScalar{};
                    a(p, p) = ComplexScalar{a(p, p).real(), 0.0};
                    a(q, q) = ComplexScalar{a(q, q).real(), 0.0};
                }
            }
        }
        if (max_offdiag(a) > 1e-10 * scale)
            throw NumericalError("hermitian_eig: Jacobi sweeps did not converge, off-diagonal " +
                                 std::to_string(max_offdiag(a)));
    }

    EigenDecomposition dec(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
    dec.eigenvalues.resize(n);
    for (int c = 0; c < n; ++c) {
        dec.eigenvalues[c] = a(order[c], order[c]).real();
        for (int r = 0; r < n; ++r) dec.eigenvectors(r, c) = v(r, order[c]);
    }
    return dec;
}

ComplexMatrix assemble_hermitian(const ComplexMatrix& eigenvectors, const std::vector<double>& values) {
    const int n = eigenvectors.dim();
    if (static_cast<int>(values.size()) != n)
        throw DimensionError("assemble_hermitian: " + std::to_string(values.size()) + " values for dim " +
                             std::to_string(n));
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ComplexScalar s{};
            for (int k = 0; k < n; ++k) s += values[k] * eigenvectors(i, k) * std::conj(eigenvectors(j, k));
            out(i, j) = s;
        }
    return hermitian_part(out);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
    EigenDecomposition dec = hermitian_eig(m);
    const double floor = -tolerances().psd * std::max(1.0, m.max_abs());
    std::vector<double> roots(dec.eigenvalues.size());
    for (std::size_t i = 0; i < dec.eigenvalues.size(); ++i) {
        double lam = dec.eigenvalues[i];
        if (lam < floor)
            throw NotPositiveError("psd_sqrt: eigenvalue " + std::to_string(lam) + " below " +
                                   std::to_string(floor));
        if (lam < 0.0) lam = 0.0;
        roots[i] = std::sqrt(lam);
    }
    return assemble_hermitian(dec.eigenvectors, roots);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim(), p = b.dim();
    const long long big = static_cast<long long>(n) * p;
    if (big > 1 << 14) throw DimensionError("kron: product dimension " + std::to_string(big) + " too large");
    const int np = static_cast<int>(big);
    ComplexMatrix c(np);
#pragma omp parallel for schedule(static) collapse(2) if (np >= kOmpMinDim)
    for (int i = 0; i < n; ++i) {
        for (int r = 0; r < p; ++r) {
            const int row = i * p + r;
            for (int j = 0; j < n; ++j) {
                const ComplexScalar aij = a(i, j);
                for (int s = 0; s < p; ++s) c(row, j * p + s) = aij * b(r, s);
            }
        }
    }
    return c;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_left, int dim_right, TensorFactor traced_out) {
    if (dim_left < 1 || dim_right < 1 || m.dim() != dim_left * dim_right)
        throw DimensionError("partial_trace: dim " + std::to_string(m.dim()) + " is not " +
                             std::to_string(dim_left) + "*" + std::to_string(dim_right));
    if (traced_out == TensorFactor::right) {
        ComplexMatrix out(dim_left);
#pragma omp parallel for schedule(static) if (dim_left >= kOmpMinDim)
        for (int i = 0; i < dim_left; ++i)
            for (int j = 0; j < dim_left; ++j) {
                ComplexScalar s{};
                for (int k = 0; k < dim_right; ++k) s += m(i * dim_right + k, j * dim_right + k);
                out(i, j) = s;
            }
        return out;
    }
    ComplexMatrix out(dim_right);
#pragma omp parallel for schedule(static) if (dim_right >= kOmpMinDim)
    for (int k1 = 0; k1 < dim_right; ++k1)
        for (int k2 = 0; k2 < dim_right; ++k2) {
            ComplexScalar s{};
            for (int h = 0; h < dim_left; ++h) s += m(h * dim_right + k1, h * dim_right + k2);
            out(k1, k2) = s;
        }
    return out;
}

}  // namespace qme
