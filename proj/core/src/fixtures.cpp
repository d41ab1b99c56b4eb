#include "btdid/fixtures.hpp"

#include <stdexcept>

namespace btdid::fixtures {
namespace {

/// a x k frame whose columns are the given standard basis vectors (0-based).
QMatrix coordinate_frame(std::size_t a, const std::vector<std::size_t>& axes) {
    QMatrix m(a, axes.size());
    for (std::size_t c = 0; c < axes.size(); ++c) m(axes[c], c) = 1;
    return m;
}

struct Term {
    std::size_t i, j, k;
    long v;
};

QTensor sparse(const Shape& s, const std::vector<Term>& terms) {
    QTensor t(s);
    for (const auto& e : terms) t[t.flat_index({e.i, e.j, e.k})] += e.v;
    return t;
}

VarietyPoint<Rational> coordinate_point(const SubspaceVarietySpec& spec, const std::vector<std::vector<std::size_t>>& axes,
                                        const std::vector<Term>& core_terms) {
    std::vector<QMatrix> frames;
    std::vector<std::size_t> k;
    for (std::size_t i = 0; i < axes.size(); ++i) {
        frames.push_back(coordinate_frame(spec.ambient()[i], axes[i]));
        k.push_back(axes[i].size());
    }
    return make_point(spec, std::move(frames), sparse(Shape(k), core_terms));
}

}  // namespace

std::array<VarietyPoint<Rational>, 2> sub236_pair() {
    const SubspaceVarietySpec spec(Shape({3, 5, 11}), {2, 3, 6});
    // Local core indices refer to positions inside each frame.
    auto p1 = coordinate_point(spec, {{0, 1}, {0, 1, 2}, {0, 1, 2, 3, 4, 5}},
                               {{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}, {1, 1, 1, 1}, {1, 2, 2, -1}});
    auto p2 = coordinate_point(spec, {{1, 2}, {1, 3, 4}, {1, 6, 7, 8, 9, 10}},
                               {{1, 0, 0, 1}, {1, 1, 1, 1}, {1, 2, 2, 1}, {0, 0, 0, 1}, {0, 2, 2, -1}});
    return {std::move(p1), std::move(p2)};
}

std::array<VarietyPoint<Rational>, 3> sub222_triple() {
    const SubspaceVarietySpec spec(Shape({4, 4, 4}), {2, 2, 2});
    const std::vector<Term> diag{{0, 0, 0, 1}, {1, 1, 1, 1}};
    auto p1 = coordinate_point(spec, {{0, 1}, {0, 1}, {0, 1}}, diag);
    auto p2 = coordinate_point(spec, {{2, 3}, {2, 3}, {2, 3}}, diag);
    auto psi = coordinate_point(spec, {{0, 2}, {0, 2}, {0, 2}}, diag);
    return {std::move(p1), std::move(p2), std::move(psi)};
}

std::array<VarietyPoint<Rational>, 2> sub122_pair() {
    const SubspaceVarietySpec spec(Shape({2, 4, 4}), {1, 2, 2});
    const std::vector<Term> diag{{0, 0, 0, 1}, {0, 1, 1, 1}};
    auto p1 = coordinate_point(spec, {{0}, {0, 1}, {0, 1}}, diag);
    auto p2 = coordinate_point(spec, {{1}, {2, 3}, {2, 3}}, diag);
    return {std::move(p1), std::move(p2)};
}

std::vector<Rational> sub122_hyperplane(const std::array<Rational, 3>& l, const std::array<Rational, 3>& m) {
    QTensor h(Shape({2, 4, 4}));
    auto add = [&](std::size_t i, std::size_t j, std::size_t k, const Rational& v) { h[h.flat_index({i, j, k})] += v; };
    add(1, 0, 1, l[0]);
    add(1, 1, 0, l[1]);
    add(1, 0, 0, l[2]);
    add(1, 1, 1, -l[2]);
    add(0, 3, 2, m[0]);
    add(0, 2, 3, m[1]);
    add(0, 3, 3, m[2]);
    add(0, 2, 2, -m[2]);
    return h.entries();
}

VarietyPoint<Rational> sub122_hyperplane_point(const std::array<Rational, 3>& l) {
    if (sgn(l[2] * l[2] + l[0] * l[1]) == 0) throw std::invalid_argument("sub122_hyperplane_point: core is singular");
    const SubspaceVarietySpec spec(Shape({2, 4, 4}), {1, 2, 2});
    QTensor core(Shape({1, 2, 2}));
    core[core.flat_index({0, 0, 1})] = -l[1];
    core[core.flat_index({0, 1, 0})] = l[0];
    core[core.flat_index({0, 0, 0})] = l[2];
    core[core.flat_index({0, 1, 1})] = l[2];
    return make_point(spec, {coordinate_frame(2, {0}), coordinate_frame(4, {0, 1}), coordinate_frame(4, {0, 1})},
                      std::move(core));
}

namespace {

QMatrix diag4(std::array<long, 4> d) {
    QMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = d[i];
    return m;
}

}  // namespace

std::pair<QMatrix, QMatrix> disjoint_pencil() { return {diag4({1, 1, 0, 0}), diag4({0, 0, 1, 1})}; }

std::pair<QMatrix, QMatrix> overlapping_pencil() { return {diag4({1, 1, 0, 0}), diag4({0, 1, 1, 0})}; }

GroundTruth<Rational> sub122_block_terms() {
    GroundTruth<Rational> gt;
    gt.spec = BlockTermSpec(2, 4, 4, {2, 2});
    for (std::size_t r = 0; r < 2; ++r) {
        Block<Rational> b;
        b.a = {Rational(r == 0 ? 1 : 0), Rational(r == 0 ? 0 : 1)};
        b.B = coordinate_frame(4, {2 * r, 2 * r + 1});
        b.C = coordinate_frame(4, {2 * r, 2 * r + 1});
        gt.blocks.push_back(std::move(b));
    }
    return gt;
}

std::vector<ConditionCase> condition_table() {
    using C = Condition;
    return {
        {BlockTermSpec(2, 4, 4, {2, 2}), Verdict::EssentiallyUnique, {C::C, C::D}},
        {BlockTermSpec(4, 4, 8, {2, 2, 2, 2}), Verdict::EssentiallyUnique, {C::E}},
        {BlockTermSpec(2, 5, 6, {2, 2, 2}), Verdict::PartiallyUnique, {C::A}},
        {BlockTermSpec(2, 4, 6, {2, 2, 2}), Verdict::InfinitelyMany, {C::AmbientOverfull}},
    };
}

}  // namespace btdid::fixtures
