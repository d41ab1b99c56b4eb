#include "btdid/block_term.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace btdid {

BlockTermSpec::BlockTermSpec(std::size_t i, std::size_t j, std::size_t k, std::vector<std::size_t> l)
    : I(i), J(j), K(k), L(std::move(l)) {
    if (I < 1 || J < 1 || K < 1) throw std::invalid_argument("BlockTermSpec: I, J, K must be positive");
    if (L.empty()) throw std::invalid_argument("BlockTermSpec: need at least one block (R >= 1)");
    std::sort(L.begin(), L.end());
    if (L.front() < 1) throw std::invalid_argument("BlockTermSpec: every L_r must be positive");
    if (L.back() > std::min(J, K))
        throw std::invalid_argument("BlockTermSpec: L_r = " + std::to_string(L.back()) + " exceeds min(J, K) = " +
                                    std::to_string(std::min(J, K)));
}

std::size_t BlockTermSpec::sum_L() const { return std::accumulate(L.begin(), L.end(), std::size_t{0}); }

BlockTermSpec BlockTermSpec::parse(const std::string& text) {
    std::vector<std::size_t> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("block-term spec: empty field in '" + text + "'");
        std::size_t pos = 0;
        long x = 0;
        try {
            x = std::stol(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("block-term spec: not an integer: '" + item + "'");
        }
        if (pos != item.size() || x < 1) throw std::invalid_argument("block-term spec: expected positive integer, got '" + item + "'");
        v.push_back(static_cast<std::size_t>(x));
    }
    if (v.size() < 4) throw std::invalid_argument("block-term spec: expected I,J,K,L1[,L2,...], got '" + text + "'");
    return BlockTermSpec(v[0], v[1], v[2], std::vector<std::size_t>(v.begin() + 3, v.end()));
}

std::string BlockTermSpec::to_string() const {
    std::string s = std::to_string(I) + "," + std::to_string(J) + "," + std::to_string(K);
    for (auto l : L) s += "," + std::to_string(l);
    return s;
}

template <class S>
std::vector<Matrix<S>> GroundTruth<S>::matrices() const {
    std::vector<Matrix<S>> xs;
    for (const auto& b : blocks) xs.push_back(b.X());
    return xs;
}

template <class S>
Tensor<S> assemble(const Shape& shape, const std::vector<std::vector<S>>& a, const std::vector<Matrix<S>>& X) {
    Tensor<S> y(shape);
    const std::size_t jk = shape[1] * shape[2];
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t i = 0; i < shape[0]; ++i) {
            if (is_zero_scalar(a[r][i])) continue;
            for (std::size_t e = 0; e < jk; ++e) y[i * jk + e] += a[r][i] * X[r].data()[e];
        }
    return y;
}

template <class S>
Tensor<S> GroundTruth<S>::tensor() const {
    std::vector<std::vector<S>> a;
    for (const auto& b : blocks) a.push_back(b.a);
    return assemble(spec.shape(), a, matrices());
}

namespace {

template <class S>
Matrix<S> random_matrix(Rng& rng, std::size_t rows, std::size_t cols, const Sampler& sampler) {
    Matrix<S> m(rows, cols);
    for (auto& x : m.data()) x = rng.draw<S>(sampler);
    return m;
}

template <class S>
Matrix<S> full_rank_matrix(Rng& rng, std::size_t rows, std::size_t cols, const Sampler& sampler) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Matrix<S> m = random_matrix<S>(rng, rows, cols, sampler);
        if (rank_of(m) == std::min(rows, cols)) return m;
    }
    throw std::runtime_error("synth_block_term: could not draw a full column rank factor");
}

}  // namespace

template <class S>
Synthesized<S> synth_block_term(const BlockTermSpec& spec, std::uint64_t seed, const Sampler& sampler) {
    if (spec.L.empty() || spec.max_L() > std::min(spec.J, spec.K))
        throw std::invalid_argument("synth_block_term: invalid spec");
    Rng rng(derive_seed(seed, {0x5b7e}));
    GroundTruth<S> gt{spec, {}};
    for (std::size_t r = 0; r < spec.R(); ++r) {
        Block<S> b;
        b.a.resize(spec.I);
        do {
            for (auto& x : b.a) x = rng.draw<S>(sampler);
        } while (std::all_of(b.a.begin(), b.a.end(), [](const S& x) { return is_zero_scalar(x); }));
        b.B = full_rank_matrix<S>(rng, spec.J, spec.L[r], sampler);
        b.C = full_rank_matrix<S>(rng, spec.K, spec.L[r], sampler);
        gt.blocks.push_back(std::move(b));
    }
    Tensor<S> y = gt.tensor();
    return {std::move(y), std::move(gt)};
}

template struct GroundTruth<Complex>;
template struct GroundTruth<Rational>;
template CTensor assemble(const Shape&, const std::vector<std::vector<Complex>>&, const std::vector<CMatrix>&);
template QTensor assemble(const Shape&, const std::vector<std::vector<Rational>>&, const std::vector<QMatrix>&);
template Synthesized<Complex> synth_block_term(const BlockTermSpec&, std::uint64_t, const Sampler&);
template Synthesized<Rational> synth_block_term(const BlockTermSpec&, std::uint64_t, const Sampler&);

}  // namespace btdid
