#pragma once

#include <vector>

#include "qme/complex_matrix.hpp"

namespace qme {

// Matrices with dim at or above this run their loops under OpenMP; smaller
// ones stay on the serial path of the same loop.
inline constexpr int kOmpMinDim = 64;

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexScalar trace(const ComplexMatrix& m);

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

// (m + m^dagger) / 2; scrubs rounding asymmetry off nominally Hermitian results.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

// Re tr(a b) computed entrywise; throws NumericalError if |Im tr(a b)| exceeds
// the trace_imag tolerance.
double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // unitary, eigenvector i in column i

    EigenDecomposition(int dim) : eigenvectors(dim) {}
};

// Cyclic complex Jacobi diagonalization. Requires ||m - m^dagger||max within
// the herm tolerance (NotHermitianError otherwise); works on the symmetrized
// matrix. NumericalError if sweeps fail to converge.
EigenDecomposition hermitian_eig(const ComplexMatrix& m);

// V diag(values) V^dagger for the given eigenbasis.
ComplexMatrix assemble_hermitian(const ComplexMatrix& eigenvectors, const std::vector<double>& values);

// Principal square root of a PSD matrix. Eigenvalues in [-psd, 0) clip to 0;
// below -psd throws NotPositiveError.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

// Kronecker product; the left factor indexes blocks, the right factor indexes
// within blocks: out[(i*p+r), (j*p+s)] = a(i,j) * b(r,s).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class TensorFactor { left, right };

// Partial trace over the selected factor of a dim_left*dim_right matrix,
// using the same index convention as kron.
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_left, int dim_right, TensorFactor traced_out);

}  // namespace qme
