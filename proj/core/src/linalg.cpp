#include "btdid/linalg.hpp"

#include <cmath>

namespace btdid {

const char* to_string(Arithmetic a) {
    return a == Arithmetic::Float ? "float" : "rational";
}

Arithmetic arithmetic_from_string(const std::string& s) {
    if (s == "float") return Arithmetic::Float;
    if (s == "rational") return Arithmetic::Rational;
    throw std::invalid_argument("unknown arithmetic '" + s + "' (expected float|rational)");
}

template <class S>
Matrix<S> Matrix<S>::from_columns(const std::vector<std::vector<S>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw std::invalid_argument("from_columns: ragged columns");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

template <class S>
std::vector<S> Matrix<S>::column(std::size_t c) const {
    std::vector<S> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

template <class S>
std::vector<S> Matrix<S>::row(std::size_t r) const {
    return std::vector<S>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

template <class S>
Matrix<S> Matrix<S>::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

template <class S>
Matrix<S> Matrix<S>::columns(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw std::out_of_range("Matrix::columns");
    Matrix m(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < count; ++c) m(r, c) = (*this)(r, first + c);
    return m;
}

template <class S>
Matrix<S> Matrix<S>::hcat(const Matrix& other) const {
    if (cols_ == 0) return other;
    if (other.cols_ == 0) return *this;
    if (other.rows_ != rows_) throw std::invalid_argument("hcat: row count mismatch");
    Matrix m(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < other.cols_; ++c) m(r, cols_ + c) = other(r, c);
    }
    return m;
}

template <class S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix<S> m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const S& aik = a(i, k);
            if (is_zero_scalar(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

template <class S>
Matrix<S> operator+(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
    Matrix<S> m = a;
    for (std::size_t i = 0; i < m.data().size(); ++i) m.data()[i] += b.data()[i];
    return m;
}

template <class S>
Matrix<S> operator-(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shape mismatch");
    Matrix<S> m = a;
    for (std::size_t i = 0; i < m.data().size(); ++i) m.data()[i] -= b.data()[i];
    return m;
}

template <class S>
Matrix<S> operator*(const S& s, const Matrix<S>& a) {
    Matrix<S> m = a;
    for (auto& x : m.data()) x *= s;
    return m;
}

template <class S>
std::vector<S> kron(const std::vector<S>& a, const std::vector<S>& b) {
    std::vector<S> out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
    Eigen::MatrixXcd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
    return e;
}

CMatrix from_eigen(const Eigen::MatrixXcd& e) {
    CMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index r = 0; r < e.rows(); ++r)
        for (Eigen::Index c = 0; c < e.cols(); ++c)
            m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = e(r, c);
    return m;
}

CMatrix to_complex(const QMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.data().size(); ++i) out.data()[i] = Complex(m.data()[i].get_d(), 0.0);
    return out;
}

std::vector<Complex> to_complex(const std::vector<Rational>& v) {
    std::vector<Complex> out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x.get_d(), 0.0);
    return out;
}

double frobenius_norm(const CMatrix& m) {
    double s = 0.0;
    for (const auto& x : m.data()) s += std::norm(x);
    return std::sqrt(s);
}

template class Matrix<Complex>;
template class Matrix<Rational>;
template CMatrix operator*(const CMatrix&, const CMatrix&);
template QMatrix operator*(const QMatrix&, const QMatrix&);
template CMatrix operator+(const CMatrix&, const CMatrix&);
template QMatrix operator+(const QMatrix&, const QMatrix&);
template CMatrix operator-(const CMatrix&, const CMatrix&);
template QMatrix operator-(const QMatrix&, const QMatrix&);
template CMatrix operator*(const Complex&, const CMatrix&);
template QMatrix operator*(const Rational&, const QMatrix&);
template std::vector<Complex> kron(const std::vector<Complex>&, const std::vector<Complex>&);
template std::vector<Rational> kron(const std::vector<Rational>&, const std::vector<Rational>&);

}  // namespace btdid
