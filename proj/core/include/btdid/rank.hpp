#pragma once

#include <cstdint>
#include <vector>

#include "btdid/linalg.hpp"

namespace btdid {

/// Default relative rank threshold: singular values below tol * sigma_max count as zero.
inline constexpr double kDefaultRankTol = 1e-10;

/// Matrices whose smaller side exceeds this are ranked modulo large primes
/// instead of by fraction-free elimination over Z.
inline constexpr std::size_t kExactEliminationMaxSide = 256;

/// 2^61 - 1 and 2^62 - 57.
inline constexpr std::uint64_t kRankPrimes[] = {2305843009213693951ULL, 4611686018427387847ULL};

std::vector<double> singular_values(const CMatrix& m);

/// Numerical rank: number of singular values above tol * sigma_max. Zero matrix -> 0.
std::size_t numerical_rank(const CMatrix& m, double tol = kDefaultRankTol);

/// Exact rank over Q by Bareiss fraction-free elimination on the integer
/// matrix obtained by clearing row denominators.
std::size_t bareiss_rank(const QMatrix& m);

/// Rank of the reduction mod p. Never exceeds the rank over Q.
std::size_t modular_rank(const QMatrix& m, std::uint64_t prime);

/// Rank used by the rational arithmetic path. Exact (Bareiss) up to
/// kExactEliminationMaxSide; above it, the maximum of the ranks modulo
/// kRankPrimes, which is a lower bound on the rational rank that is tight
/// unless both primes divide every maximal nonzero minor.
std::size_t rational_rank(const QMatrix& m);

inline std::size_t rank_of(const CMatrix& m, double tol = kDefaultRankTol) { return numerical_rank(m, tol); }
inline std::size_t rank_of(const QMatrix& m, double /*tol*/ = kDefaultRankTol) { return rational_rank(m); }

/// Indices of a maximal linearly independent subset of the columns.
/// Exact path: greedy left-to-right pivots (always independent over Q).
std::vector<std::size_t> independent_columns(const QMatrix& m);
std::vector<std::size_t> independent_columns(const CMatrix& m, double tol = kDefaultRankTol);

/// Basis (as columns) of { x : m x = 0 }.
QMatrix nullspace(const QMatrix& m);
CMatrix nullspace(const CMatrix& m, double tol = kDefaultRankTol);

}  // namespace btdid
