#include <doctest.h>

#include <chrono>

#include "btdid/conditions.hpp"
#include "btdid/fixtures.hpp"
#include "btdid/join.hpp"
#include "oracle.hpp"

using namespace btdid;

namespace {

/// Every (I, J, K, L) with entries <= n, R <= max_r, L sorted ascending.
std::vector<BlockTermSpec> enumerate(std::size_t n, std::size_t max_r) {
    std::vector<BlockTermSpec> out;
    for (std::size_t I = 1; I <= n; ++I)
        for (std::size_t J = 1; J <= n; ++J)
            for (std::size_t K = 1; K <= n; ++K) {
                const std::size_t lmax = std::min(J, K);
                std::vector<std::vector<std::size_t>> ls{{}};
                for (std::size_t r = 1; r <= max_r; ++r) {
                    std::vector<std::vector<std::size_t>> next;
                    for (const auto& l : ls)
                        for (std::size_t x = l.empty() ? 1 : l.back(); x <= lmax; ++x) {
                            auto m = l;
                            m.push_back(x);
                            next.push_back(m);
                        }
                    for (const auto& l : next) out.emplace_back(I, J, K, l);
                    ls = std::move(next);
                }
            }
    return out;
}

}  // namespace

TEST_CASE("ambient fill numbers") {
    const auto a = ambient_fill_check(BlockTermSpec(2, 4, 4, {2, 2}));
    CHECK(a.sum == 26);
    CHECK(a.ambient == 32);
    CHECK(a.sign == '<');
    const auto b = ambient_fill_check(BlockTermSpec(2, 3, 3, {2, 2}));
    CHECK(b.sum == 18);
    CHECK(b.sign == '=');
    const auto c = ambient_fill_check(BlockTermSpec(2, 4, 6, {2, 2, 2}));
    CHECK(c.sum == 51);
    CHECK(c.ambient == 48);
    CHECK(c.sign == '>');
}

TEST_CASE("verdict table") {
    for (const auto& c : fixtures::condition_table()) {
        CAPTURE(c.spec.to_string());
        const auto t0 = std::chrono::steady_clock::now();
        const ConditionVerdict v = evaluate_theorem(c.spec);
        const auto us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
        CHECK(v.verdict == c.verdict);
        for (auto f : c.fired) CHECK(v.fires(f));
        CHECK(us < 1000.0);
    }
}

TEST_CASE("decisive tier for the listed examples") {
    const auto v = evaluate_theorem(BlockTermSpec(2, 4, 4, {2, 2}));
    CHECK(v.fired == std::set<Condition>{Condition::C, Condition::D, Condition::E});
    const auto w = evaluate_theorem(BlockTermSpec(4, 4, 8, {2, 2, 2, 2}));
    CHECK(w.fired == std::set<Condition>{Condition::E});
    CHECK(w.satisfied.count(Condition::A) == 1);
    const auto p = evaluate_theorem(BlockTermSpec(2, 5, 6, {2, 2, 2}));
    CHECK(p.fired == std::set<Condition>{Condition::A});
    const auto o = evaluate_theorem(BlockTermSpec(2, 4, 6, {2, 2, 2}));
    CHECK(o.fired == std::set<Condition>{Condition::AmbientOverfull});
}

TEST_CASE("equality and hypothesis failures give Unknown with a note") {
    const auto eq = evaluate_theorem(BlockTermSpec(2, 3, 3, {2, 2}));
    CHECK(eq.verdict == Verdict::Unknown);
    CHECK_FALSE(eq.notes.empty());
    const auto hyp = evaluate_theorem(BlockTermSpec(2, 5, 4, {2, 2}));
    CHECK_FALSE(hyp.hypothesis_ok);
    CHECK(hyp.verdict == Verdict::Unknown);
    CHECK_FALSE(hyp.notes.empty());
}

TEST_CASE("binomial threshold agrees with big-integer binomials") {
    for (unsigned n = 0; n <= 70; n += 3)
        for (unsigned k = 0; k <= n; k += 2)
            for (std::size_t bound : {std::size_t{1}, std::size_t{10}, std::size_t{1000000}, std::size_t{1} << 62}) {
                CAPTURE(n);
                CAPTURE(k);
                CHECK(binomial_at_least(n, k, bound) == (oracle::binomial(n, k) >= bound));
            }
}

TEST_CASE("exhaustive invariants for small specs") {
    std::size_t count = 0;
    for (const auto& s : enumerate(8, 4)) {
        const ConditionVerdict v = evaluate_theorem(s);
        ++count;
        if (s.hypothesis_ok() && v.satisfied.count(Condition::B)) CHECK(v.fill.sign == '>');
        if (v.satisfied.count(Condition::D)) CHECK(s.R() == 2);
        if (s.hypothesis_ok() && v.fill.sign == '<' && v.satisfied.count(Condition::C))
            CHECK(v.verdict == Verdict::EssentiallyUnique);
        switch (v.verdict) {
            case Verdict::EssentiallyUnique:
                CHECK((v.fires(Condition::C) || v.fires(Condition::D) || v.fires(Condition::E)));
                break;
            case Verdict::PartiallyUnique:
                CHECK(v.fires(Condition::A));
                CHECK_FALSE((v.fires(Condition::C) || v.fires(Condition::D) || v.fires(Condition::E)));
                break;
            case Verdict::InfinitelyMany:
                CHECK((v.fires(Condition::AmbientOverfull) || v.fires(Condition::B)));
                break;
            case Verdict::Unknown: break;
        }
        CHECK(evaluate_theorem(s).verdict == v.verdict);
        for (auto c : v.fired)
            if (c != Condition::AmbientOverfull) CHECK(v.satisfied.count(c) == 1);
    }
    CHECK(count > 10000);
}

namespace {

/// Specs with I*J*K <= 200 and the given verdict whose join of Sub_{1,L_r,L_r} is defective.
std::vector<std::string> defective_with_verdict(Verdict want, std::size_t& checked) {
    std::vector<std::string> bad;
    checked = 0;
    for (const auto& s : enumerate(6, 3)) {
        if (s.I * s.J * s.K > 200) continue;
        if (evaluate_theorem(s).verdict != want) continue;
        std::vector<SubspaceVarietySpec> specs;
        for (auto l : s.L) specs.emplace_back(s.shape(), std::vector<std::size_t>{1, l, l});
        TerraciniOptions o;
        o.arithmetic = Arithmetic::Float;
        o.seed = checked++;
        if (terracini_join_dim(specs, o).defect != 0) bad.push_back(s.to_string());
    }
    return bad;
}

std::string head(const std::vector<std::string>& v, std::size_t n = 8) {
    std::string out;
    for (std::size_t i = 0; i < std::min(n, v.size()); ++i) out += v[i] + "; ";
    return out + "(" + std::to_string(v.size()) + " total)";
}

}  // namespace

TEST_CASE("cross-validation: essentially unique verdicts come with a non-defective join") {
    std::size_t checked = 0;
    const auto bad = defective_with_verdict(Verdict::EssentiallyUnique, checked);
    INFO(head(bad));
    CHECK(bad.empty());
    CHECK(checked > 50);
}

TEST_CASE("cross-validation: partially unique verdicts come with a non-defective join") {
    std::size_t checked = 0;
    const auto bad = defective_with_verdict(Verdict::PartiallyUnique, checked);
    INFO(head(bad));
    CHECK(bad.empty());
    CHECK(checked > 50);
}

TEST_CASE("condition A alone on a defective format") {
    // fill 33 < 36 and C(3,2) = 3 >= 3, yet the join of three Sub_{1,2,2} has defect 3
    const BlockTermSpec spec(4, 3, 3, {2, 2, 2});
    const ConditionVerdict v = evaluate_theorem(spec);
    CHECK(v.verdict == Verdict::PartiallyUnique);
    std::vector<SubspaceVarietySpec> specs(3, SubspaceVarietySpec(spec.shape(), {1, 2, 2}));
    const JoinReport j = terracini_join_dim(specs);
    CHECK(j.sum_affine_dims == 33);
    CHECK(j.computed_affine_dim == 30);
}

TEST_CASE("string conversions") {
    for (auto v : {Verdict::EssentiallyUnique, Verdict::PartiallyUnique, Verdict::InfinitelyMany, Verdict::Unknown})
        CHECK(verdict_from_string(to_string(v)) == v);
    CHECK_THROWS(verdict_from_string("Sometimes"));
    CHECK(std::string(to_string(Condition::AmbientOverfull)) == "AmbientOverfull");
}
