#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace btdid {

using Complex = std::complex<double>;
using Rational = mpq_class;

/// Arithmetic used by a computation: IEEE doubles over C, or exact rationals.
enum class Arithmetic { Float, Rational };

const char* to_string(Arithmetic a);

template <class S>
constexpr Arithmetic arithmetic_of() {
    return std::is_same_v<S, Rational> ? Arithmetic::Rational : Arithmetic::Float;
}
Arithmetic arithmetic_from_string(const std::string& s);

/// Dense row-major matrix over a field. Thin on purpose: heavy numerical
/// work converts to Eigen (float) or runs exact elimination (rational).
template <class S>
class Matrix {
public:
    using Scalar = S;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<S> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) throw std::invalid_argument("Matrix: data size mismatch");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    /// Builds a matrix whose columns are the given vectors (all of equal length).
    static Matrix from_columns(const std::vector<std::vector<S>>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<S>& data() const { return data_; }
    std::vector<S>& data() { return data_; }

    std::vector<S> column(std::size_t c) const;
    std::vector<S> row(std::size_t r) const;

    Matrix transpose() const;
    /// Columns [first, first+count).
    Matrix columns(std::size_t first, std::size_t count) const;
    /// Horizontal concatenation [*this | other]; row counts must agree.
    Matrix hcat(const Matrix& other) const;

    bool operator==(const Matrix& o) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<S> data_;
};

using CMatrix = Matrix<Complex>;
using QMatrix = Matrix<Rational>;

template <class S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b);
template <class S>
Matrix<S> operator+(const Matrix<S>& a, const Matrix<S>& b);
template <class S>
Matrix<S> operator-(const Matrix<S>& a, const Matrix<S>& b);
template <class S>
Matrix<S> operator*(const S& s, const Matrix<S>& a);

/// Kronecker product of two vectors, first index slowest (row-major layout).
template <class S>
std::vector<S> kron(const std::vector<S>& a, const std::vector<S>& b);

Eigen::MatrixXcd to_eigen(const CMatrix& m);
CMatrix from_eigen(const Eigen::MatrixXcd& m);
CMatrix to_complex(const QMatrix& m);
std::vector<Complex> to_complex(const std::vector<Rational>& v);

double frobenius_norm(const CMatrix& m);

inline bool is_zero_scalar(const Complex& s) { return s == Complex(0.0, 0.0); }
inline bool is_zero_scalar(const Rational& s) { return sgn(s) == 0; }

}  // namespace btdid
