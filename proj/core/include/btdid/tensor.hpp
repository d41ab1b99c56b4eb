#pragma once

#include <cstddef>
#include <vector>

#include "btdid/linalg.hpp"
#include "btdid/rank.hpp"

namespace btdid {

/// Mode dimensions (a_1, ..., a_n) of a tensor space. Order n >= 2, every a_i >= 1.
class Shape {
public:
    Shape() = default;
    explicit Shape(std::vector<std::size_t> dims);

    std::size_t order() const { return dims_.size(); }
    std::size_t operator[](std::size_t i) const { return dims_[i]; }
    const std::vector<std::size_t>& dims() const { return dims_; }

    /// Product of all dims.
    std::size_t size() const;
    /// Product of all dims except `mode`.
    std::size_t complement_size(std::size_t mode) const;

    bool operator==(const Shape&) const = default;

private:
    std::vector<std::size_t> dims_;
};

/// Dense tensor in row-major layout: the last mode varies fastest.
template <class S>
class Tensor {
public:
    using Scalar = S;

    Tensor() = default;
    explicit Tensor(Shape shape);
    Tensor(Shape shape, std::vector<S> entries);

    const Shape& shape() const { return shape_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<S>& entries() const { return entries_; }
    std::vector<S>& entries() { return entries_; }

    S& operator[](std::size_t flat) { return entries_[flat]; }
    const S& operator[](std::size_t flat) const { return entries_[flat]; }

    std::size_t flat_index(const std::vector<std::size_t>& idx) const;

    Tensor& operator+=(const Tensor& o);
    Tensor& operator-=(const Tensor& o);
    Tensor& operator*=(const S& s);

    bool is_zero() const;

    bool operator==(const Tensor&) const = default;

private:
    Shape shape_;
    std::vector<S> entries_;
};

using CTensor = Tensor<Complex>;
using QTensor = Tensor<Rational>;

template <class S>
Tensor<S> operator+(Tensor<S> a, const Tensor<S>& b) { return a += b; }
template <class S>
Tensor<S> operator-(Tensor<S> a, const Tensor<S>& b) { return a -= b; }
template <class S>
Tensor<S> operator*(const S& s, Tensor<S> a) { return a *= s; }

/// Outer product v_1 (x) ... (x) v_n.
template <class S>
Tensor<S> outer(const std::vector<std::vector<S>>& factors);

/// Mode-`mode` flattening: a_mode x prod_{j != mode} a_j, columns in the
/// lexicographic (row-major) order of the remaining modes.
template <class S>
Matrix<S> flatten(const Tensor<S>& t, std::size_t mode);

/// Inverse of flatten for a target shape.
template <class S>
Tensor<S> unflatten(const Matrix<S>& m, const Shape& shape, std::size_t mode);

/// Mode-`mode` product: replaces a_mode by m.rows(); equals unflatten(m * flatten(t, mode)).
template <class S>
Tensor<S> mode_multiply(const Tensor<S>& t, const Matrix<S>& m, std::size_t mode);

/// Multilinear rank (rank of every flattening).
using ModeRanks = std::vector<std::size_t>;

ModeRanks multilinear_rank(const CTensor& t, double tol = kDefaultRankTol);
ModeRanks multilinear_rank(const QTensor& t);

CTensor to_complex(const QTensor& t);

}  // namespace btdid
