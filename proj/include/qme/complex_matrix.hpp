#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "qme/errors.hpp"

namespace qme {

using ComplexScalar = std::complex<double>;

inline bool is_finite(ComplexScalar z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Dense square complex matrix, row-major storage. Public construction from
// entries rejects non-finite values; element writes through operator() are
// unchecked and reserved for kernels that only produce finite values.
class ComplexMatrix {
public:
    explicit ComplexMatrix(int dim) : dim_(dim) {
        if (dim < 1) throw DimensionError("matrix dimension must be >= 1, got " + std::to_string(dim));
        e_.assign(static_cast<std::size_t>(dim) * dim, ComplexScalar{});
    }

    ComplexMatrix(int dim, std::vector<ComplexScalar> entries) : dim_(dim), e_(std::move(entries)) {
        if (dim < 1) throw DimensionError("matrix dimension must be >= 1, got " + std::to_string(dim));
        if (e_.size() != static_cast<std::size_t>(dim) * dim)
            throw DimensionError("entry count " + std::to_string(e_.size()) + " does not match dim " +
                                 std::to_string(dim));
        for (const ComplexScalar& z : e_)
            if (!is_finite(z)) throw InvariantViolation("matrix.finite-entries", 0.0, "NaN or Inf entry");
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    ComplexScalar& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * dim_ + j]; }
    const ComplexScalar& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * dim_ + j]; }

    const std::vector<ComplexScalar>& entries() const { return e_; }

    double max_abs() const {
        double m = 0.0;
        for (const ComplexScalar& z : e_) m = std::max(m, std::abs(z));
        return m;
    }

    double max_abs_diff(const ComplexMatrix& other) const {
        if (other.dim_ != dim_) throw DimensionError("max_abs_diff dimension mismatch");
        double m = 0.0;
        for (std::size_t i = 0; i < e_.size(); ++i) m = std::max(m, std::abs(e_[i] - other.e_[i]));
        return m;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        if (o.dim_ != dim_) throw DimensionError("operator+= dimension mismatch");
        for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        if (o.dim_ != dim_) throw DimensionError("operator-= dimension mismatch");
        for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
        return *this;
    }

    ComplexMatrix& operator*=(ComplexScalar s) {
        for (ComplexScalar& z : e_) z *= s;
        return *this;
    }

private:
    int dim_;
    std::vector<ComplexScalar> e_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
}

inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
}

inline ComplexMatrix operator*(ComplexMatrix a, ComplexScalar s) {
    a *= s;
    return a;
}

inline ComplexMatrix operator*(ComplexScalar s, ComplexMatrix a) {
    a *= s;
    return a;
}

}  // namespace qme
