#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "btdid/variety.hpp"

namespace btdid {

/// Outcome of a Terracini dimension count for J(X_1, ..., X_k).
///
/// Dimensions are affine (cone) dimensions. `defect` follows the projective
/// definition d_1 + ... + d_k + k - 1 - dim J, which equals
/// sum_affine_dims - computed_affine_dim; it is not capped by the ambient.
struct JoinReport {
    std::vector<SubspaceVarietySpec> specs;
    std::size_t ambient_dim = 0;
    std::size_t sum_affine_dims = 0;
    std::size_t expected_affine_dim = 0;  ///< min(sum_affine_dims, ambient_dim)
    std::size_t computed_affine_dim = 0;  ///< max rank over trials (a lower bound on the generic value)
    long defect = 0;
    std::size_t trials = 0;               ///< requested
    std::vector<std::size_t> trial_ranks;  ///< ranks of the trials actually run
    Arithmetic arithmetic = Arithmetic::Rational;
    std::uint64_t seed = 0;
    /// Non-defectivity is established: exact rank reached the expected
    /// dimension, or the direct-sum containment condition holds.
    bool certified = false;
    /// "certified", "formula-backed" or "numerical evidence".
    std::string evidence;
    std::vector<std::string> notes;

    bool operator==(const JoinReport&) const = default;
};

/// min(sum_i affine_cone_dimension(spec_i), prod a_i). Throws on mixed ambients.
std::size_t expected_join_dim(const std::vector<SubspaceVarietySpec>& specs);

struct TerraciniOptions {
    Arithmetic arithmetic = Arithmetic::Rational;
    std::size_t trials = 0;  ///< 0 selects the default: 3 (rational) or 10 (float)
    std::uint64_t seed = 0;
    std::optional<Sampler> sampler;  ///< defaults: integer-uniform(9) / complex-gaussian
    double tol = kDefaultRankTol;
};

std::size_t default_trials(Arithmetic a);

/// Samples one generic point per spec, stacks the tangent bases and ranks the result.
/// Trial t uses derive_seed(seed, {t, j}) for spec j, so results are order independent.
JoinReport terracini_join_dim(const std::vector<SubspaceVarietySpec>& specs, const TerraciniOptions& opts = {});

/// Closed-form defect (a'+a''-a)^+ (b'+b''-b)^+ (c'+c''-c)^+ for a join of two
/// subspace varieties of 3-tensors, with the hypotheses under which it is claimed.
struct TwoJoinPrediction {
    long defect = 0;
    bool within_hypothesis = true;
    std::vector<std::string> failed_hypotheses;
};

TwoJoinPrediction defect_two_join_formula(const std::array<std::size_t, 3>& ambient,
                                          const std::array<std::size_t, 3>& first,
                                          const std::array<std::size_t, 3>& second);

struct ManyJoinBounds {
    /// dim A_i >= sum_j k_i^j for every mode: the join is non-defective.
    bool nondefective_certificate = false;
    /// max(0, sum_j prod_i k_i^j - prod_i a_i)
    long defect_lower_bound = 0;
};

ManyJoinBounds many_join_bounds(const std::vector<SubspaceVarietySpec>& specs);

/// True iff the tangent space at `witness` lies in the sum of the tangent
/// spaces at `base_points` (rank does not grow when it is appended).
template <class S>
bool tangent_containment_probe(const std::vector<VarietyPoint<S>>& base_points, const VarietyPoint<S>& witness,
                               double tol = kDefaultRankTol);

/// How twd_probe draws witnesses.
enum class WitnessStrategy {
    /// Independent generic points of the witness variety.
    Generic,
    /// Base point j shifted inside the intersection of its core space with
    /// another base point's core space; this is where alternative
    /// decompositions of a defective join live.
    CoreShift,
};

const char* to_string(WitnessStrategy s);

struct TwdReport {
    std::vector<SubspaceVarietySpec> base_specs;
    std::size_t witness_spec = 0;  ///< index into base_specs
    WitnessStrategy strategy = WitnessStrategy::Generic;
    Arithmetic arithmetic = Arithmetic::Rational;
    bool containment_found = false;
    std::size_t witnesses_tried = 0;
    std::size_t trials = 0;  ///< witness budget
    std::uint64_t seed = 0;
    /// Entries of the witness tensor when containment was found.
    std::optional<std::vector<std::string>> witness_entries;
    std::vector<std::string> notes;
};

struct TwdOptions {
    Arithmetic arithmetic = Arithmetic::Rational;
    WitnessStrategy strategy = WitnessStrategy::Generic;
    std::size_t witnesses = 50;
    std::uint64_t seed = 0;
    double tol = kDefaultRankTol;
};

/// Falsification probe for "not tangentially weakly defective": samples
/// generic base points, then up to `witnesses` witness points on
/// base_specs[witness_spec], stopping at the first tangent containment.
TwdReport twd_probe(const std::vector<SubspaceVarietySpec>& base_specs, std::size_t witness_spec,
                    const TwdOptions& opts = {});

/// Same probe against caller-supplied base points.
template <class S>
TwdReport twd_probe_at(const std::vector<VarietyPoint<S>>& base_points, std::size_t witness_spec,
                       const TwdOptions& opts);

}  // namespace btdid
