#include "qme/reference.hpp"

#include <cmath>

#include "qme/errors.hpp"

namespace qme::ref {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionError("matmul: dimension mismatch");
    const int n = a.dim();
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ComplexScalar sum = 0.0;
            for (int k = 0; k < n; ++k) sum += a(i, k) * b(k, j);
            c(i, j) = sum;
        }
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    const int n = m.dim();
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

ComplexScalar trace(const ComplexMatrix& m) {
    ComplexScalar t = 0.0;
    for (int i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    return ref::trace(ref::matmul(a, b)).real();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim();
    const int nb = b.dim();
    ComplexMatrix r(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_left, int dim_right, TensorFactor traced_out) {
    if (m.dim() != dim_left * dim_right) throw DimensionError("partial_trace: dimension mismatch");
    if (traced_out == TensorFactor::right) {
        ComplexMatrix r(dim_left);
        for (int i = 0; i < dim_left; ++i)
            for (int j = 0; j < dim_left; ++j) {
                ComplexScalar sum = 0.0;
                for (int k = 0; k < dim_right; ++k) sum += m(i * dim_right + k, j * dim_right + k);
                r(i, j) = sum;
            }
        return r;
    }
    ComplexMatrix r(dim_right);
    for (int k = 0; k < dim_right; ++k)
        for (int l = 0; l < dim_right; ++l) {
            ComplexScalar sum = 0.0;
            for (int i = 0; i < dim_left; ++i) sum += m(i * dim_right + k, i * dim_right + l);
            r(k, l) = sum;
        }
    return r;
}

double effect_entropy(const ComplexMatrix& rho, const ComplexMatrix& a) {
    const double p = ref::real_trace_product(rho, a);
    const double t = ref::trace(a).real();
    if (p <= 1e-12) return 0.0;
    return -p * std::log(p / t);
}

}  // namespace qme::ref
