#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "btdid/block_term.hpp"
#include "btdid/conditions.hpp"

namespace btdid {

/// A fitted rank-(1, L_r, L_r) decomposition of an order-3 tensor.
struct BTDSolution {
    BlockTermSpec spec;
    std::vector<Block<Complex>> blocks;
    double residual = 0.0;  ///< ||Y - sum_r a_r (x) B_r C_r^T|| / ||Y||
    std::size_t sweeps = 0;
    std::vector<double> history;  ///< residual after each sweep (entry 0: initial point)
    std::vector<std::string> notes;

    CTensor tensor() const;
};

struct AlsOptions {
    std::size_t max_sweeps = 20000;
    double rel_tol = 1e-12;    ///< stop when |delta residual| < rel_tol * residual
    double floor_tol = 1e-14;  ///< stop when residual <= floor_tol
    /// After each sweep, step further along F - F_prev (length adapted in [1, 64]); kept only if the residual drops.
    bool extrapolate = true;
};

struct AlsInit {
    enum class Kind { Random, Given, Mode1Svd };
    Kind kind = Kind::Random;
    std::uint64_t seed = 0;
    std::optional<GroundTruth<Complex>> given;

    static AlsInit random(std::uint64_t seed) { return {Kind::Random, seed, std::nullopt}; }
    static AlsInit from(GroundTruth<Complex> gt) { return {Kind::Given, 0, std::move(gt)}; }
    static AlsInit mode1_svd(std::uint64_t seed = 0) { return {Kind::Mode1Svd, seed, std::nullopt}; }
};

/// Sweeps update all a_r, then all B_r, then all C_r, each by exact linear
/// least squares on the matching flattening, followed by an optional
/// extrapolation step that is accepted only when it lowers the residual. Singular normal equations are
/// ridge-stabilized (1e-12 * trace) and noted.
BTDSolution als_fit(const CTensor& Y, const BlockTermSpec& spec, const AlsInit& init, const AlsOptions& opts = {});

struct CanonicalBlock {
    std::size_t L = 0;
    std::vector<Complex> a;  ///< unit norm, first entry above tolerance real positive
    CMatrix basis;           ///< orthonormal basis of the column space of X
    CMatrix X;
};

struct CanonicalSolution {
    BlockTermSpec spec;
    std::vector<CanonicalBlock> blocks;  ///< ordered by (L, a rounded to 6 decimals)
    double residual = 0.0;
};

/// Throws std::domain_error when some a_r has norm below tol.
CanonicalSolution canonicalize(const BTDSolution& s, double tol = 1e-12);

/// Rebuilds factors (B = U Sigma, C = conj(V) from the SVD of X).
BTDSolution to_solution(const CanonicalSolution& c);

/// Blocks pair up within groups of equal L with ||a (x) X - a' (x) X'|| <= tol ||a (x) X|| each.
bool solutions_equivalent(const CanonicalSolution& s1, const CanonicalSolution& s2, double tol = 1e-6);

/// Rank of the Jacobian of (a_r, B_r, C_r) -> sum_r a_r (x) B_r C_r^T.
struct JacobianRank {
    std::size_t rows = 0;
    std::size_t params = 0;
    std::size_t rank = 0;
    std::size_t gauge = 0;  ///< sum_r (L_r^2 + 1): scaling and GL(L_r) per block
    std::size_t kernel() const { return params - rank; }
    bool excess_kernel() const { return kernel() > gauge; }
};

JacobianRank parametrization_jacobian_rank(const BTDSolution& s, double tol = 1e-9);

struct MultistartOptions {
    AlsOptions als;
    double converge_threshold = 1e-6;
    double class_tol = 1e-6;
};

struct MultistartResult {
    std::vector<BTDSolution> fits;                  ///< one per start, in start order
    std::vector<std::size_t> converged;             ///< start indices, sorted by (residual, index)
    std::vector<CanonicalSolution> classes;         ///< representatives
    std::vector<std::size_t> class_of;              ///< per converged entry
    std::optional<std::size_t> best;                ///< start index with the lowest residual
};

/// Fits from `starts` random inits seeded by derive_seed(seed, {start}) and
/// clusters the converged ones greedily in (residual, index) order.
MultistartResult multistart_fit(const CTensor& Y, const BlockTermSpec& spec, std::size_t starts, std::uint64_t seed,
                                const MultistartOptions& opts = {});

struct UniquenessReport {
    BlockTermSpec spec;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t converged_count = 0;
    std::size_t distinct_classes = 0;
    std::vector<CanonicalSolution> class_representatives;
    std::vector<double> residuals;  ///< per start
    Verdict verdict = Verdict::Unknown;  ///< from the conditions module
    std::optional<JacobianRank> jacobian;
    bool continuum_evidence = false;
    bool matches_verdict = false;
    bool inconclusive = false;
    std::vector<std::string> notes;
};

/// Synthesizes one Y from (spec, seed), fits it from `trials` random starts
/// and compares the class structure with the theorem's verdict.
UniquenessReport uniqueness_probe(const BlockTermSpec& spec, std::size_t trials, std::uint64_t seed,
                                  const MultistartOptions& opts = {});

/// Verdict semantics: EssentiallyUnique needs one class and no continuum;
/// PartiallyUnique needs no continuum; InfinitelyMany needs several classes or
/// a continuum; Unknown always matches.
bool matches(Verdict v, std::size_t classes, bool continuum);

}  // namespace btdid
