#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "btdid/block_term.hpp"

namespace btdid {

/// Thrown when the two pencil generators are proportional.
struct DegeneratePencil : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when delathauwer_check's preconditions (I >= R, independent a_r) fail.
struct HypothesisViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A member [lambda : mu] of the pencil lambda X1 + mu X2, normalized so the
/// first nonzero coefficient is 1.
struct PencilMember {
    Complex lambda{1.0, 0.0};
    Complex mu{0.0, 0.0};
    /// Exact coefficients as strings, when the member is rational.
    std::optional<std::pair<std::string, std::string>> exact;
    std::size_t rank = 0;

    bool operator==(const PencilMember&) const = default;
};

struct PencilResult {
    std::vector<PencilMember> members;
    /// Every member of the pencil has rank <= L (L >= min(J, K) or all minors vanish).
    bool vacuous = false;
    std::vector<std::string> notes;
};

/// All [lambda : mu] with rank(lambda X1 + mu X2) <= L. Rational input: gcd of
/// the (L+1)-minors as polynomials, exact rational roots, and numerically
/// reported irrational ones. Float input: roots of projected minors, each
/// refined and confirmed by sigma_{L+1}.
PencilResult pencil_low_rank_members(const QMatrix& X1, const QMatrix& X2, std::size_t L);
PencilResult pencil_low_rank_members(const CMatrix& X1, const CMatrix& X2, std::size_t L, std::uint64_t seed = 0,
                                     double tol = 1e-8);

struct SpanSearchOptions {
    std::size_t multistarts = 50;
    double tol = 1e-8;
    std::uint64_t seed = 0;
    std::size_t max_iters = 3000;
};

struct SpanCandidate {
    std::vector<Complex> coeffs;  ///< unit norm, first entry with |.| > 1e-8 real positive
    double sigma = 0.0;           ///< sigma_{L+1} of the normalized combination
    std::size_t rank = 0;
    /// Proportional to a single generator (index), i.e. an expected member.
    std::optional<std::size_t> generator;
};

struct SpanSearchResult {
    std::vector<SpanCandidate> candidates;  ///< members not proportional to any generator
    std::vector<SpanCandidate> generators;  ///< members proportional to some X_j
    bool vacuous = false;
};

/// Multistart alternating minimization of sigma_{L+1}(sum_j t_j X_j) over unit t.
/// Best effort: may miss members. Generators are scaled to unit Frobenius norm first.
SpanSearchResult span_low_rank_search(const std::vector<CMatrix>& Xs, std::size_t L,
                                      const SpanSearchOptions& opts = {});

struct SubsetOutcome {
    std::vector<std::size_t> subset;
    std::size_t L = 0;           ///< max L over the subset
    std::string method;          ///< "exact-pencil", "float-pencil" or "span-search"
    bool violation = false;
    bool vacuous = false;
};

struct ViolatingMember {
    std::vector<Complex> coeffs;                     ///< over the violating subset
    std::optional<std::vector<std::string>> exact;   ///< rational coefficients when known
    std::size_t rank = 0;
    bool exactly_verified = false;
};

struct CriterionReport {
    bool holds = true;
    /// "exact", "numerical" or "probabilistic": how much trust holds=true deserves.
    std::string confidence = "exact";
    std::optional<std::vector<std::size_t>> violating_subset;
    std::optional<ViolatingMember> violating_member;
    std::vector<SubsetOutcome> subsets;
    std::vector<std::string> notes;
};

struct CriterionOptions {
    SpanSearchOptions span;
    /// Largest subset size searched; 0 means all.
    std::size_t max_subset = 0;
};

/// Searches every span <X_j : j in subset>, |subset| >= 2, for members of rank
/// <= max_{j in subset} L_j that are not proportional to one of its generators.
template <class S>
CriterionReport delathauwer_check(const GroundTruth<S>& gt, const CriterionOptions& opts = {});

}  // namespace btdid
