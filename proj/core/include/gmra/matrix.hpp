#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gmra/scalar.hpp"

namespace gmra {

/// Small dense row-major matrix. Fiber dimensions here are single digits,
/// so nothing fancier is needed.
template <FilterScalar S>
class Matrix {
public:
    using Traits = ScalarTraits<S>;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Traits::zero()) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = Traits::one();
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool is_square() const { return rows_ == cols_; }

    S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = conjugate((*this)(r, c));
            }
        }
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("Matrix: dimension mismatch in product");
        }
        Matrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& lhs = a(r, k);
                if (Traits::is_zero(lhs)) {
                    continue;
                }
                for (std::size_t c = 0; c < b.cols_; ++c) {
                    out(r, c) += lhs * b(k, c);
                }
            }
        }
        return out;
    }

    friend std::vector<S> operator*(const Matrix& a, const std::vector<S>& v) {
        if (a.cols_ != v.size()) {
            throw std::invalid_argument("Matrix: dimension mismatch in matrix-vector product");
        }
        std::vector<S> out(a.rows_, Traits::zero());
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t c = 0; c < a.cols_; ++c) {
                out[r] += a(r, c) * v[c];
            }
        }
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    /// max |a_ij - b_ij|; infinity when shapes differ.
    [[nodiscard]] double max_abs_diff(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            return std::numeric_limits<double>::infinity();
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            worst = std::max(worst, Traits::magnitude(data_[i] - o.data_[i]));
        }
        return worst;
    }

    /// ‖A*A − I‖ and ‖AA* − I‖ in max norm, whichever is larger.
    [[nodiscard]] double unitarity_residual() const {
        if (!is_square()) {
            return std::numeric_limits<double>::infinity();
        }
        const Matrix id = identity(rows_);
        return std::max((adjoint() * *this).max_abs_diff(id), (*this * adjoint()).max_abs_diff(id));
    }

    [[nodiscard]] bool is_exactly_unitary() const {
        if (!is_square()) {
            return false;
        }
        const Matrix id = identity(rows_);
        return adjoint() * *this == id && *this * adjoint() == id;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<S> data_;
};

template <FilterScalar S>
Matrix<Complex> to_numeric(const Matrix<S>& m) {
    Matrix<Complex> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(r, c) = ScalarTraits<S>::to_complex(m(r, c));
        }
    }
    return out;
}

}  // namespace gmra
