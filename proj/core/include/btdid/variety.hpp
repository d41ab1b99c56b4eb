#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "btdid/random.hpp"
#include "btdid/rank.hpp"
#include "btdid/tensor.hpp"

namespace btdid {

/// Sub_{k_1,...,k_n}(A_1 (x) ... (x) A_n): tensors whose mode-i images have dimension <= k_i.
class SubspaceVarietySpec {
public:
    SubspaceVarietySpec() = default;
    SubspaceVarietySpec(Shape ambient, std::vector<std::size_t> mode_ranks);

    const Shape& ambient() const { return ambient_; }
    const std::vector<std::size_t>& mode_ranks() const { return ranks_; }
    std::size_t order() const { return ranks_.size(); }

    /// Some k_i exceeds prod_{j != i} k_j, so a general core cannot reach mode rank k_i.
    bool unbalanced() const;
    /// Core dimension prod k_i.
    std::size_t core_size() const;

    std::string to_string() const;
    bool operator==(const SubspaceVarietySpec&) const = default;

private:
    Shape ambient_;
    std::vector<std::size_t> ranks_;
};

/// prod k_i + sum k_i (a_i - k_i): dimension of the affine cone over the variety.
/// Throws std::domain_error ("unbalanced ranks") for unbalanced specs.
std::size_t affine_cone_dimension(const SubspaceVarietySpec& spec);

/// A point phi = core x_1 E_1 ... x_n E_n with frames E_i of size a_i x k_i.
template <class S>
struct VarietyPoint {
    SubspaceVarietySpec spec;
    std::vector<Matrix<S>> frames;
    Tensor<S> core;
    Tensor<S> tensor;
    /// Some mode rank of the core is below k_i: the point sits on the
    /// boundary of the exact-rank locus, where the tangent formula is not
    /// guaranteed to be the tangent cone.
    bool boundary = false;
};

/// Assembles a point from frames and core; validates shapes and full column rank of frames.
template <class S>
VarietyPoint<S> make_point(const SubspaceVarietySpec& spec, std::vector<Matrix<S>> frames, Tensor<S> core);

/// Random frames of full column rank and a random core of full multilinear rank.
template <class S>
VarietyPoint<S> sample_point(const SubspaceVarietySpec& spec, const Sampler& sampler, std::uint64_t seed);

/// sample_point, then checks that the tangent space reaches affine_cone_dimension;
/// resamples up to `max_attempts` times and throws std::runtime_error after that.
template <class S>
VarietyPoint<S> sample_generic_point(const SubspaceVarietySpec& spec, const Sampler& sampler, std::uint64_t seed,
                                     int max_attempts = 5);

/// Checks frames have full column rank and the tensor lies in E_1 (x) ... (x) E_n.
template <class S>
bool verify_point(const VarietyPoint<S>& p, double tol = 1e-9);

/// Subspace of the ambient tensor space spanned by the columns of `basis`
/// (vectorized tensors, linearly independent).
template <class S>
struct LinearSubspace {
    std::size_t ambient_dim = 0;
    Matrix<S> basis;

    std::size_t dim() const { return basis.cols(); }
    static constexpr Arithmetic arithmetic() { return arithmetic_of<S>(); }
};

/// Image of the mode-i map: rows of flatten(core, i) lifted through the
/// other frames, reduced to an independent set. Columns live in prod_{j != i} A_j.
template <class S>
Matrix<S> mode_image(const VarietyPoint<S>& p, std::size_t mode);

/// All generators of the tangent space formula:
/// (E_1 (x) ... (x) E_n) + sum_i A_i (x) phi(E_i^*). Intentionally redundant.
template <class S>
Matrix<S> tangent_generators(const VarietyPoint<S>& p);

/// Maximal independent subset of tangent_generators.
template <class S>
LinearSubspace<S> tangent_basis(const VarietyPoint<S>& p);

/// Annihilator of s under the bilinear pairing of the ambient space with its dual.
template <class S>
LinearSubspace<S> conormal_basis(const LinearSubspace<S>& s);

/// True iff the covector h kills every tangent generator at p
/// (exactly in rational arithmetic, within tol relative in float).
template <class S>
bool is_tangent_hyperplane(const std::vector<S>& h, const VarietyPoint<S>& p, double tol = 1e-9);

}  // namespace btdid
