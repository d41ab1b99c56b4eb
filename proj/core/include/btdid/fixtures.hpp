#pragma once

#include <array>
#include <set>
#include <utility>
#include <vector>

#include "btdid/block_term.hpp"
#include "btdid/conditions.hpp"
#include "btdid/variety.hpp"

namespace btdid::fixtures {

/// Two points of Sub_{2,3,6}(C^3 (x) C^5 (x) C^11) on coordinate frames
/// E = (<a1,a2>, <b1,b2,b3>, <c1..c6>) and F = (<a2,a3>, <b2,b4,b5>, <c2,c7..c11>):
///   phi1 = a1 (x) (b1c1 + b2c2 + b3c3) + a2 (x) (b2c2 - b3c3)
///   phi2 = a3 (x) (b2c2 + b4c7 + b5c8) + a2 (x) (b2c2 - b5c8)
/// Their cores use only three directions of C, so both sit on the boundary.
std::array<VarietyPoint<Rational>, 2> sub236_pair();

/// phi1 = a1b1c1 + a2b2c2, phi2 = a3b3c3 + a4b4c4 and psi = a1b1c1 + a3b3c3 in Sub_{2,2,2}(C^4 (x) C^4 (x) C^4).
std::array<VarietyPoint<Rational>, 3> sub222_triple();

/// phi1 = a1 (x) (b1c1 + b2c2), phi2 = a2 (x) (b3c3 + b4c4) in Sub_{1,2,2}(C^2 (x) C^4 (x) C^4).
std::array<VarietyPoint<Rational>, 2> sub122_pair();

/// Covector a2* (x) (l1 b1*c2* + l2 b2*c1* + l3 (b1*c1* - b2*c2*))
///        + a1* (x) (m1 b4*c3* + m2 b3*c4* + m3 (b4*c4* - b3*c3*)), flattened row-major.
std::vector<Rational> sub122_hyperplane(const std::array<Rational, 3>& lambda, const std::array<Rational, 3>& mu);

/// psi = a1 (x) (-l2 b1c2 + l1 b2c1 + l3 (b1c1 + b2c2)); throws if l3^2 + l1 l2 = 0.
VarietyPoint<Rational> sub122_hyperplane_point(const std::array<Rational, 3>& lambda);

/// Diagonal 4x4 pencils: (E11 + E22, E33 + E44) and (E11 + E22, E22 + E33).
std::pair<QMatrix, QMatrix> disjoint_pencil();
std::pair<QMatrix, QMatrix> overlapping_pencil();

/// a1 (x) (b1c1 + b2c2) + a2 (x) (b3c3 + b4c4) as a (2,4,4,(2,2)) decomposition.
GroundTruth<Rational> sub122_block_terms();

/// `fired` lists the conditions the verdict is credited to; others in the same tier may fire too.
struct ConditionCase {
    BlockTermSpec spec;
    Verdict verdict;
    std::set<Condition> fired;
};

std::vector<ConditionCase> condition_table();

}  // namespace btdid::fixtures
