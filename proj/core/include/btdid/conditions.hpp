#pragma once

#include <set>
#include <string>
#include <vector>

#include "btdid/block_term.hpp"

namespace btdid {

enum class Verdict { EssentiallyUnique, PartiallyUnique, InfinitelyMany, Unknown };

enum class Condition { A, B, C, D, E, AmbientOverfull };

const char* to_string(Verdict v);
const char* to_string(Condition c);
Verdict verdict_from_string(const std::string& s);

/// Parameter count of the block terms against the ambient dimension:
/// sum_r (J L_r + L_r (K - L_r) + I - 1) compared with I J K.
struct AmbientFill {
    std::size_t sum = 0;
    std::size_t ambient = 0;
    char sign = '<';  ///< '<', '=' or '>'
};

AmbientFill ambient_fill_check(const BlockTermSpec& spec);

struct ConditionVerdict {
    Verdict verdict = Verdict::Unknown;
    /// Conditions behind the verdict (the decisive tier), plus B whenever it holds.
    std::set<Condition> fired;
    /// Every condition whose inequalities hold, whether or not it decided the verdict.
    std::set<Condition> satisfied;
    bool hypothesis_ok = true;
    AmbientFill fill;
    std::vector<std::string> notes;

    bool fires(Condition c) const { return fired.count(c) != 0; }
};

/// Exact binomial coefficient C(n, k) >= bound.
bool binomial_at_least(std::size_t n, std::size_t k, std::size_t bound);

/// Evaluates A-E and the overfull test; precedence: overfull, then C/D/E, then A.
ConditionVerdict evaluate_theorem(const BlockTermSpec& spec);

}  // namespace btdid
