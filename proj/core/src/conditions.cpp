#include "btdid/conditions.hpp"

#include <stdexcept>

#include <gmpxx.h>

namespace btdid {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::EssentiallyUnique: return "EssentiallyUnique";
        case Verdict::PartiallyUnique: return "PartiallyUnique";
        case Verdict::InfinitelyMany: return "InfinitelyMany";
        case Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

const char* to_string(Condition c) {
    switch (c) {
        case Condition::A: return "A";
        case Condition::B: return "B";
        case Condition::C: return "C";
        case Condition::D: return "D";
        case Condition::E: return "E";
        case Condition::AmbientOverfull: return "AmbientOverfull";
    }
    return "?";
}

Verdict verdict_from_string(const std::string& s) {
    for (auto v : {Verdict::EssentiallyUnique, Verdict::PartiallyUnique, Verdict::InfinitelyMany, Verdict::Unknown})
        if (s == to_string(v)) return v;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

AmbientFill ambient_fill_check(const BlockTermSpec& spec) {
    AmbientFill f;
    for (auto L : spec.L) f.sum += spec.J * L + L * (spec.K - L) + spec.I - 1;
    f.ambient = spec.I * spec.J * spec.K;
    f.sign = f.sum < f.ambient ? '<' : (f.sum == f.ambient ? '=' : '>');
    return f;
}

bool binomial_at_least(std::size_t n, std::size_t k, std::size_t bound) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    return c >= mpz_class(static_cast<unsigned long>(bound));
}

ConditionVerdict evaluate_theorem(const BlockTermSpec& spec) {
    ConditionVerdict v;
    const std::size_t I = spec.I, J = spec.J, K = spec.K, R = spec.R(), LR = spec.max_L(), sumL = spec.sum_L();
    v.hypothesis_ok = spec.hypothesis_ok();
    v.fill = ambient_fill_check(spec);

    std::size_t sum_sq = 0;
    for (auto L : spec.L) sum_sq += L * L;
    const bool binom = binomial_at_least(J, LR, R);

    auto& sat = v.satisfied;
    if (binom && I >= 2) sat.insert(Condition::A);
    if (I * J * K < sum_sq) sat.insert(Condition::B);
    if (I >= 2 && J >= sumL && K >= sumL) sat.insert(Condition::C);
    if (R == 2 && I >= 2) sat.insert(Condition::D);
    if (I >= R && K >= sumL && J >= 2 * LR && binom) sat.insert(Condition::E);
    if (v.fill.sign == '>') sat.insert(Condition::AmbientOverfull);

    if (sat.count(Condition::B)) {
        v.fired.insert(Condition::B);
        v.notes.push_back("condition B holds; under K >= J > L_R it also forces the parameter count above IJK");
    }

    if (v.fill.sign == '>') {
        v.fired.insert(Condition::AmbientOverfull);
        v.verdict = Verdict::InfinitelyMany;
        return v;
    }
    if (!v.hypothesis_ok) {
        v.notes.push_back("K >= J > L_R fails; conditions are reported but no verdict is drawn");
        return v;
    }
    if (v.fill.sign == '=') {
        v.notes.push_back("parameter count equals IJK; no conclusion applies");
        return v;
    }
    for (auto c : {Condition::C, Condition::D, Condition::E}) {
        if (!sat.count(c)) continue;
        v.fired.insert(c);
        v.verdict = Verdict::EssentiallyUnique;
    }
    if (v.verdict == Verdict::Unknown && sat.count(Condition::A)) {
        v.fired.insert(Condition::A);
        v.verdict = Verdict::PartiallyUnique;
    }
    return v;
}

}  // namespace btdid
