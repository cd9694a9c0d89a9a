#pragma once

// Serial reference implementations of the numeric kernels. These are
// deliberately naive (textbook loops, no parallelism, no blocking) so they
// can serve as oracles for the optimized versions and as the baseline in
// the benchmark. Keep them boring.

#include "qme/complex_matrix.hpp"
#include "qme/linalg.hpp"

namespace qme::ref {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexScalar trace(const ComplexMatrix& m);
double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_left, int dim_right, TensorFactor traced_out);

// Effect entropy computed directly from the defining expression, without
// going through the library's probability plumbing.
double effect_entropy(const ComplexMatrix& rho, const ComplexMatrix& a);

}  // namespace qme::ref
