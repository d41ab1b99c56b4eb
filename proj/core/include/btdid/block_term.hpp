#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "btdid/random.hpp"
#include "btdid/tensor.hpp"

namespace btdid {

/// Format of a decomposition Y = sum_r a_r (x) X_r in C^I (x) C^J (x) C^K with
/// rank(X_r) = L_r. Construction sorts L and rejects L_r > min(J, K).
struct BlockTermSpec {
    std::size_t I = 0, J = 0, K = 0;
    std::vector<std::size_t> L;

    BlockTermSpec() = default;
    BlockTermSpec(std::size_t i, std::size_t j, std::size_t k, std::vector<std::size_t> l);

    std::size_t R() const { return L.size(); }
    std::size_t sum_L() const;
    std::size_t max_L() const { return L.back(); }
    Shape shape() const { return Shape({I, J, K}); }

    /// K >= J > L_R; the uniqueness conditions assume it. Violations are flagged, not rejected.
    bool hypothesis_ok() const { return K >= J && J > max_L(); }

    /// "I,J,K,L1,...,LR"
    static BlockTermSpec parse(const std::string& text);
    std::string to_string() const;

    bool operator==(const BlockTermSpec&) const = default;
};

template <class S>
struct Block {
    std::vector<S> a;  ///< I-vector
    Matrix<S> B;       ///< J x L_r
    Matrix<S> C;       ///< K x L_r

    Matrix<S> X() const { return B * C.transpose(); }
};

/// Generating factors of a synthetic block-term tensor.
template <class S>
struct GroundTruth {
    BlockTermSpec spec;
    std::vector<Block<S>> blocks;

    std::vector<Matrix<S>> matrices() const;
    Tensor<S> tensor() const;
};

/// sum_r a_r (x) X_r.
template <class S>
Tensor<S> assemble(const Shape& shape, const std::vector<std::vector<S>>& a, const std::vector<Matrix<S>>& X);

template <class S>
struct Synthesized {
    Tensor<S> Y;
    GroundTruth<S> truth;
};

/// Y = sum_r a_r (x) B_r C_r^T with random factors; B_r, C_r are resampled until
/// they have full column rank. Deterministic in (spec, seed, sampler).
/// S = Rational requires the integer sampler.
template <class S>
Synthesized<S> synth_block_term(const BlockTermSpec& spec, std::uint64_t seed, const Sampler& sampler);

}  // namespace btdid
