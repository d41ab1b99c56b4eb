#include <doctest.h>

#include "btdid/fixtures.hpp"
#include "btdid/join.hpp"
#include "oracle.hpp"

using namespace btdid;

namespace {

SubspaceVarietySpec sub(std::vector<std::size_t> a, std::vector<std::size_t> k) {
    return SubspaceVarietySpec(Shape(std::move(a)), std::move(k));
}

TerraciniOptions rational(std::uint64_t seed = 0) {
    TerraciniOptions o;
    o.seed = seed;
    return o;
}

TerraciniOptions floating(std::uint64_t seed = 0) {
    TerraciniOptions o;
    o.arithmetic = Arithmetic::Float;
    o.seed = seed;
    return o;
}

template <class S>
VarietyPoint<Complex> as_complex(const VarietyPoint<S>& p) {
    std::vector<CMatrix> f;
    for (const auto& e : p.frames) f.push_back(to_complex(e));
    return make_point<Complex>(p.spec, f, to_complex(p.core));
}

}  // namespace

TEST_CASE("expected join dimension") {
    CHECK(expected_join_dim({sub({3, 5, 11}, {2, 3, 6}), sub({3, 5, 11}, {2, 3, 6})}) == 148);
    CHECK(expected_join_dim({sub({4, 4, 4}, {2, 2, 2}), sub({4, 4, 4}, {2, 2, 2})}) == 40);
    CHECK(expected_join_dim({sub({2, 2, 2}, {2, 2, 2}), sub({2, 2, 2}, {2, 2, 2})}) == 8);
    CHECK_THROWS(expected_join_dim({sub({4, 4, 4}, {2, 2, 2}), sub({4, 4, 5}, {2, 2, 2})}));
}

TEST_CASE("secant of the 2x3x6 subspace variety in 3x5x11") {
    const auto s = sub({3, 5, 11}, {2, 3, 6});
    const JoinReport r = terracini_join_dim({s, s}, rational());
    CHECK(r.expected_affine_dim == 148);
    CHECK(r.computed_affine_dim == 137);
    CHECK(r.defect == 11);
    CHECK_FALSE(r.certified);
    CHECK(r.trial_ranks == std::vector<std::size_t>{137, 137, 137});
    CHECK(terracini_join_dim({s, s}, floating()).computed_affine_dim == 137);
}

TEST_CASE("tangent spaces at the boundary pair meet in a line") {
    const auto p = fixtures::sub236_pair();
    const QMatrix t0 = tangent_basis(p[0]).basis, t1 = tangent_basis(p[1]).basis;
    const std::size_t sum = oracle::rational_rank(t0.hcat(t1));
    CHECK(t0.cols() + t1.cols() - sum == 1);
}

TEST_CASE("secant of Sub_{2,2,2} in 4x4x4 is non-defective") {
    const auto s = sub({4, 4, 4}, {2, 2, 2});
    for (auto o : {rational(), floating()}) {
        const JoinReport r = terracini_join_dim({s, s}, o);
        CHECK(r.computed_affine_dim == 40);
        CHECK(r.defect == 0);
        CHECK(r.certified);
    }
}

TEST_CASE("join filling a small ambient is formula-backed") {
    const auto s = sub({2, 2, 2}, {2, 2, 2});
    const JoinReport r = terracini_join_dim({s, s}, floating());
    CHECK(r.computed_affine_dim == 8);
    CHECK(r.defect >= 8);
    CHECK(r.evidence == "formula-backed");
}

TEST_CASE("terracini reports are deterministic in the seed") {
    const auto s = sub({3, 4, 4}, {2, 2, 2});
    CHECK(terracini_join_dim({s, s}, rational(5)) == terracini_join_dim({s, s}, rational(5)));
    CHECK(terracini_join_dim({s, s, s}, floating(5)) == terracini_join_dim({s, s, s}, floating(5)));
}

TEST_CASE("property: join dimension is monotone and bounded") {
    Rng rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<std::size_t> a(3);
        for (auto& x : a) x = static_cast<std::size_t>(rng.uniform_int(2, 5));
        std::vector<SubspaceVarietySpec> specs;
        std::size_t prev = 0;
        for (int k = 0; k < 3; ++k) {
            std::vector<std::size_t> r(3);
            do {
                for (std::size_t i = 0; i < 3; ++i) r[i] = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long>(a[i])));
            } while (SubspaceVarietySpec(Shape(a), r).unbalanced());
            specs.emplace_back(Shape(a), r);
            const JoinReport j = terracini_join_dim(specs, rational(trial));
            CAPTURE(j.computed_affine_dim);
            CHECK(j.computed_affine_dim >= prev);
            CHECK(j.computed_affine_dim <= j.expected_affine_dim);
            CHECK(j.computed_affine_dim >= affine_cone_dimension(specs.back()));
            CHECK(j.defect == static_cast<long>(j.sum_affine_dims) - static_cast<long>(j.computed_affine_dim));
            prev = j.computed_affine_dim;
        }
    }
}

TEST_CASE("property: rank at special points never exceeds the generic rank") {
    // semicontinuity: the boundary pair has 117-dimensional tangent sum, generic is 137
    const auto p = fixtures::sub236_pair();
    const std::size_t special = rank_of(tangent_basis(p[0]).basis.hcat(tangent_basis(p[1]).basis));
    const auto s = sub({3, 5, 11}, {2, 3, 6});
    CHECK(special == 117);
    CHECK(special <= terracini_join_dim({s, s}, floating()).computed_affine_dim);

    const auto t = fixtures::sub222_triple();
    const std::size_t twd = rank_of(tangent_basis(t[0]).basis.hcat(tangent_basis(t[1]).basis));
    CHECK(twd <= 40);
}

TEST_CASE("exact and float ranks agree on random joins") {
    Rng rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<std::size_t> a(3), k(3);
        for (std::size_t i = 0; i < 3; ++i) {
            a[i] = static_cast<std::size_t>(rng.uniform_int(2, 5));
            k[i] = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long>(a[i])));
        }
        const SubspaceVarietySpec s(Shape(a), k);
        if (s.unbalanced()) continue;
        CHECK(terracini_join_dim({s, s}, rational(trial)).computed_affine_dim ==
              terracini_join_dim({s, s}, floating(trial)).computed_affine_dim);
    }
}

TEST_CASE("two-join formula") {
    const auto p = defect_two_join_formula({4, 4, 4}, {3, 3, 3}, {3, 3, 3});
    CHECK(p.defect == 8);
    CHECK(defect_two_join_formula({4, 4, 4}, {2, 2, 2}, {2, 2, 2}).defect == 0);
    const auto q = defect_two_join_formula({3, 5, 11}, {2, 3, 6}, {2, 3, 6});
    CHECK(q.defect == 1);
    CHECK_FALSE(q.within_hypothesis);
    CHECK_FALSE(q.failed_hypotheses.empty());
}

namespace {

/// Some k_i equals the product of the other two, so the mode-i image fills E_j (x) E_l.
bool saturated(const std::array<std::size_t, 3>& k) {
    for (std::size_t i = 0; i < 3; ++i)
        if (k[i] == k[(i + 1) % 3] * k[(i + 2) % 3]) return true;
    return false;
}

}  // namespace

TEST_CASE("two-join formula matches Terracini inside its hypotheses without saturated modes") {
    Rng rng(2024);
    int checked = 0;
    for (int guard = 0; checked < 10 && guard < 200000; ++guard) {
        std::array<std::size_t, 3> a{}, k1{}, k2{};
        for (std::size_t i = 0; i < 3; ++i) {
            a[i] = static_cast<std::size_t>(rng.uniform_int(2, 6));
            k1[i] = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long>(a[i])));
            k2[i] = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long>(a[i])));
        }
        const auto pred = defect_two_join_formula(a, k1, k2);
        if (!pred.within_hypothesis || saturated(k1) || saturated(k2)) continue;
        const Shape sh({a[0], a[1], a[2]});
        const SubspaceVarietySpec s1(sh, {k1[0], k1[1], k1[2]}), s2(sh, {k2[0], k2[1], k2[2]});
        if (s1.unbalanced() || s2.unbalanced()) continue;
        CAPTURE(s1.to_string());
        CAPTURE(s2.to_string());
        CHECK(terracini_join_dim({s1, s2}, rational(guard)).defect == pred.defect);
        ++checked;
    }
    CHECK(checked == 10);
}

TEST_CASE("two-join formula undercounts when a mode is saturated") {
    // T at phi' contains E'_A (x) B (x) c', T at phi'' contains F''_A (x) b'' (x) C; they share (E'_A cap F''_A) (x) b'' (x) c'
    struct Case {
        std::array<std::size_t, 3> a, k1, k2;
        long measured;
    };
    for (const auto& c : {Case{{3, 4, 3}, {2, 2, 1}, {2, 1, 2}, 1}, Case{{3, 3, 6}, {2, 1, 2}, {2, 2, 1}, 1}}) {
        const auto pred = defect_two_join_formula(c.a, c.k1, c.k2);
        CHECK(pred.within_hypothesis);
        CHECK(pred.defect == 0);
        const Shape sh({c.a[0], c.a[1], c.a[2]});
        const SubspaceVarietySpec s1(sh, {c.k1[0], c.k1[1], c.k1[2]}), s2(sh, {c.k2[0], c.k2[1], c.k2[2]});
        CHECK(terracini_join_dim({s1, s2}, rational()).defect == c.measured);
        CHECK(terracini_join_dim({s1, s2}, floating()).defect == c.measured);
    }
}

TEST_CASE("many-join bounds") {
    const auto b = many_join_bounds({sub({4, 4, 4}, {2, 2, 2}), sub({4, 4, 4}, {2, 2, 2})});
    CHECK(b.nondefective_certificate);
    CHECK(b.defect_lower_bound == 0);
    const auto c = many_join_bounds({sub({2, 2, 2}, {2, 2, 2}), sub({2, 2, 2}, {2, 2, 2})});
    CHECK_FALSE(c.nondefective_certificate);
    CHECK(c.defect_lower_bound == 8);
}

TEST_CASE("tangent containment at the twd triple") {
    const auto t = fixtures::sub222_triple();
    CHECK(tangent_containment_probe<Rational>({t[0], t[1]}, t[2]));
    CHECK(tangent_containment_probe<Complex>({as_complex(t[0]), as_complex(t[1])}, as_complex(t[2])));
    const auto g = sample_point<Rational>(t[0].spec, Sampler::integer_uniform(), 3);
    CHECK_FALSE(tangent_containment_probe<Rational>({t[0], t[1]}, g));
}

TEST_CASE("no tangent containment for random witnesses at the 1x2x2 pair") {
    const auto pair = fixtures::sub122_pair();
    TwdOptions o;
    o.witnesses = 50;
    const TwdReport r = twd_probe_at<Rational>({pair[0], pair[1]}, 0, o);
    CHECK_FALSE(r.containment_found);
    CHECK(r.witnesses_tried == 50);
}

TEST_CASE("core-shift witnesses find containment on a defective join") {
    const auto s = sub({3, 5, 11}, {2, 3, 6});
    TwdOptions o;
    o.arithmetic = Arithmetic::Float;
    o.strategy = WitnessStrategy::CoreShift;
    o.witnesses = 5;
    const TwdReport r = twd_probe({s, s}, 0, o);
    CHECK(r.containment_found);
    REQUIRE(r.witness_entries.has_value());
    CHECK(r.witness_entries->size() == 165);
    CHECK(std::string(to_string(r.strategy)) == "core-shift");
}

TEST_CASE("core-shift needs frames that meet") {
    const auto s = sub({4, 4, 4}, {2, 2, 2});
    TwdOptions o;
    o.arithmetic = Arithmetic::Float;
    o.strategy = WitnessStrategy::CoreShift;
    o.witnesses = 5;
    const TwdReport r = twd_probe({s, s}, 0, o);
    CHECK_FALSE(r.containment_found);
    CHECK(r.witnesses_tried == 0);
    o.strategy = WitnessStrategy::Generic;
    const TwdReport g = twd_probe({s, s}, 0, o);
    CHECK_FALSE(g.containment_found);
    CHECK(g.witnesses_tried == 5);
}
