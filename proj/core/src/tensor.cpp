#include "btdid/tensor.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace btdid {

Shape::Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.size() < 2) throw std::invalid_argument("Shape: order must be >= 2");
    for (auto d : dims_)
        if (d < 1) throw std::invalid_argument("Shape: every dimension must be >= 1");
}

std::size_t Shape::size() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t Shape::complement_size(std::size_t mode) const {
    if (mode >= dims_.size()) throw std::out_of_range("Shape: mode out of range");
    return size() / dims_[mode];
}

template <class S>
Tensor<S>::Tensor(Shape shape) : shape_(std::move(shape)), entries_(shape_.size(), S(0)) {}

template <class S>
Tensor<S>::Tensor(Shape shape, std::vector<S> entries) : shape_(std::move(shape)), entries_(std::move(entries)) {
    if (entries_.size() != shape_.size())
        throw std::invalid_argument("Tensor: expected " + std::to_string(shape_.size()) + " entries, got " +
                                    std::to_string(entries_.size()));
}

template <class S>
std::size_t Tensor<S>::flat_index(const std::vector<std::size_t>& idx) const {
    if (idx.size() != shape_.order()) throw std::invalid_argument("Tensor: index order mismatch");
    std::size_t f = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= shape_[i]) throw std::out_of_range("Tensor: index out of range");
        f = f * shape_[i] + idx[i];
    }
    return f;
}

template <class S>
Tensor<S>& Tensor<S>::operator+=(const Tensor& o) {
    if (!(o.shape_ == shape_)) throw std::invalid_argument("Tensor: shape mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
}

template <class S>
Tensor<S>& Tensor<S>::operator-=(const Tensor& o) {
    if (!(o.shape_ == shape_)) throw std::invalid_argument("Tensor: shape mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
}

template <class S>
Tensor<S>& Tensor<S>::operator*=(const S& s) {
    for (auto& x : entries_) x *= s;
    return *this;
}

template <class S>
bool Tensor<S>::is_zero() const {
    for (const auto& x : entries_)
        if (!is_zero_scalar(x)) return false;
    return true;
}

template <class S>
Tensor<S> outer(const std::vector<std::vector<S>>& factors) {
    std::vector<std::size_t> dims;
    for (const auto& f : factors) dims.push_back(f.size());
    std::vector<S> acc{S(1)};
    for (const auto& f : factors) acc = kron(acc, f);
    return Tensor<S>(Shape(dims), std::move(acc));
}

namespace {

/// Strides split around `mode`: flat = outer * (a_mode * inner) + i * inner + in.
struct ModeSplit {
    std::size_t outer, dim, inner;
};

ModeSplit split(const Shape& s, std::size_t mode) {
    if (mode >= s.order()) throw std::invalid_argument("mode " + std::to_string(mode) + " out of range for order " +
                                                   std::to_string(s.order()));
    std::size_t outer = 1, inner = 1;
    for (std::size_t i = 0; i < mode; ++i) outer *= s[i];
    for (std::size_t i = mode + 1; i < s.order(); ++i) inner *= s[i];
    return {outer, s[mode], inner};
}

}  // namespace

template <class S>
Matrix<S> flatten(const Tensor<S>& t, std::size_t mode) {
    const auto [outer, dim, inner] = split(t.shape(), mode);
    Matrix<S> m(dim, outer * inner);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t in = 0; in < inner; ++in) m(i, o * inner + in) = t[(o * dim + i) * inner + in];
    return m;
}

template <class S>
Tensor<S> unflatten(const Matrix<S>& m, const Shape& shape, std::size_t mode) {
    const auto [outer, dim, inner] = split(shape, mode);
    if (m.rows() != dim || m.cols() != outer * inner) throw std::invalid_argument("unflatten: matrix shape mismatch");
    Tensor<S> t(shape);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t in = 0; in < inner; ++in) t[(o * dim + i) * inner + in] = m(i, o * inner + in);
    return t;
}

template <class S>
Tensor<S> mode_multiply(const Tensor<S>& t, const Matrix<S>& m, std::size_t mode) {
    if (mode >= t.shape().order()) throw std::invalid_argument("mode_multiply: mode out of range");
    if (m.cols() != t.shape()[mode])
        throw std::invalid_argument("mode_multiply: matrix has " + std::to_string(m.cols()) + " columns, mode has dimension " +
                                    std::to_string(t.shape()[mode]));
    auto dims = t.shape().dims();
    dims[mode] = m.rows();
    return unflatten(m * flatten(t, mode), Shape(dims), mode);
}

ModeRanks multilinear_rank(const CTensor& t, double tol) {
    ModeRanks r;
    for (std::size_t i = 0; i < t.shape().order(); ++i) r.push_back(numerical_rank(flatten(t, i), tol));
    return r;
}

ModeRanks multilinear_rank(const QTensor& t) {
    ModeRanks r;
    for (std::size_t i = 0; i < t.shape().order(); ++i) r.push_back(rational_rank(flatten(t, i)));
    return r;
}

CTensor to_complex(const QTensor& t) {
    return CTensor(t.shape(), btdid::to_complex(t.entries()));
}

template class Tensor<Complex>;
template class Tensor<Rational>;
template CTensor outer(const std::vector<std::vector<Complex>>&);
template QTensor outer(const std::vector<std::vector<Rational>>&);
template CMatrix flatten(const CTensor&, std::size_t);
template QMatrix flatten(const QTensor&, std::size_t);
template CTensor unflatten(const CMatrix&, const Shape&, std::size_t);
template QTensor unflatten(const QMatrix&, const Shape&, std::size_t);
template CTensor mode_multiply(const CTensor&, const CMatrix&, std::size_t);
template QTensor mode_multiply(const QTensor&, const QMatrix&, std::size_t);

}  // namespace btdid
