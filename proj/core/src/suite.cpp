#include "btdid/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "btdid/conditions.hpp"
#include "btdid/criterion.hpp"
#include "btdid/fixtures.hpp"
#include "btdid/join.hpp"

namespace btdid {

namespace {

template <class S>
VarietyPoint<S> convert(const VarietyPoint<Rational>& p);

template <>
VarietyPoint<Rational> convert(const VarietyPoint<Rational>& p) { return p; }

template <>
VarietyPoint<Complex> convert(const VarietyPoint<Rational>& p) {
    std::vector<CMatrix> frames;
    for (const auto& f : p.frames) frames.push_back(to_complex(f));
    return make_point<Complex>(p.spec, std::move(frames), to_complex(p.core));
}

template <class S>
std::vector<S> convert_vector(const std::vector<Rational>& v) {
    if constexpr (std::is_same_v<S, Rational>)
        return v;
    else
        return to_complex(v);
}

template <class S>
std::size_t stacked_rank(const std::vector<VarietyPoint<S>>& points) {
    Matrix<S> stacked = tangent_basis(points.front()).basis;
    for (std::size_t i = 1; i < points.size(); ++i) stacked = stacked.hcat(tangent_basis(points[i]).basis);
    return rank_of(stacked);
}

using Runner = std::function<FixtureResult(const SuiteOptions&)>;

FixtureResult join_fixture(const std::string& name, const std::vector<SubspaceVarietySpec>& specs,
                           std::size_t want_dim, long want_defect, bool want_certified, const SuiteOptions& o) {
    TerraciniOptions t;
    t.arithmetic = o.arithmetic;
    t.seed = o.seed;
    const JoinReport r = terracini_join_dim(specs, t);
    FixtureResult f{name, false, to_json(r)};
    f.passed = r.computed_affine_dim == want_dim && r.defect == want_defect && r.certified == want_certified;
    return f;
}

FixtureResult sub236_generic(const SuiteOptions& o) {
    const SubspaceVarietySpec s(Shape({3, 5, 11}), {2, 3, 6});
    return join_fixture("sub236-secant-defective", {s, s}, 137, 11, false, o);
}

template <class S>
FixtureResult sub236_boundary_impl() {
    const auto pair = fixtures::sub236_pair();
    std::vector<VarietyPoint<S>> pts{convert<S>(pair[0]), convert<S>(pair[1])};
    const std::size_t d0 = tangent_basis(pts[0]).dim(), d1 = tangent_basis(pts[1]).dim();
    const std::size_t sum = stacked_rank(pts);
    const std::size_t meet = d0 + d1 - sum;
    FixtureResult f{"sub236-boundary-pair", false, json::object()};
    f.details = {{"tangent_dims", {d0, d1}},
                 {"boundary", {pts[0].boundary, pts[1].boundary}},
                 {"sum_dim", sum},
                 {"intersection_dim", meet}};
    f.passed = d0 == 59 && d1 == 59 && meet == 1 && pts[0].boundary && pts[1].boundary;
    return f;
}

FixtureResult sub222_secant(const SuiteOptions& o) {
    const SubspaceVarietySpec s(Shape({4, 4, 4}), {2, 2, 2});
    return join_fixture("sub222-secant-nondefective", {s, s}, 40, 0, true, o);
}

template <class S>
FixtureResult sub222_twd_impl() {
    const auto t = fixtures::sub222_triple();
    const bool contained = tangent_containment_probe<S>({convert<S>(t[0]), convert<S>(t[1])}, convert<S>(t[2]));
    return {"sub222-twd-containment", contained, {{"containment", contained}}};
}

template <class S>
FixtureResult sub122_hyperplane_impl(std::uint64_t seed) {
    const auto pair = fixtures::sub122_pair();
    std::vector<VarietyPoint<S>> pts{convert<S>(pair[0]), convert<S>(pair[1])};
    const std::size_t sum = stacked_rank(pts);
    const std::size_t conormal = pts[0].spec.ambient().size() - sum;

    Rng rng(derive_seed(seed, {0x3e3}));
    json draws = json::array();
    bool all_tangent = true;
    for (std::size_t d = 0; d < 10;) {
        std::array<Rational, 3> l, m;
        for (auto& x : l) x = Rational(rng.uniform_int(-9, 9));
        for (auto& x : m) x = Rational(rng.uniform_int(-9, 9));
        if (l[2] * l[2] + l[0] * l[1] == 0 || (l[0] == 0 && l[1] == 0)) continue;
        const auto h = convert_vector<S>(fixtures::sub122_hyperplane(l, m));
        const auto psi = convert<S>(fixtures::sub122_hyperplane_point(l));
        const bool ok = is_tangent_hyperplane(h, psi) && is_tangent_hyperplane(h, pts[0]) &&
                        is_tangent_hyperplane(h, pts[1]);
        all_tangent = all_tangent && ok;
        draws.push_back({{"lambda", {l[0].get_str(), l[1].get_str(), l[2].get_str()}},
                         {"mu", {m[0].get_str(), m[1].get_str(), m[2].get_str()}},
                         {"tangent", ok}});
        ++d;
    }
    FixtureResult f{"sub122-tangent-hyperplane", all_tangent && conormal == 6, json::object()};
    f.details = {{"conormal_dim", conormal}, {"draws", draws}};
    return f;
}

template <class S>
FixtureResult sub122_not_twd_impl(std::uint64_t seed) {
    const auto pair = fixtures::sub122_pair();
    TwdOptions t;
    t.arithmetic = arithmetic_of<S>();
    t.witnesses = 50;
    t.seed = seed;
    const TwdReport r = twd_probe_at<S>({convert<S>(pair[0]), convert<S>(pair[1])}, 0, t);
    return {"sub122-not-twd", !r.containment_found && r.witnesses_tried == 50, to_json(r)};
}

FixtureResult condition_fixture(const SuiteOptions&) {
    json rows = json::array();
    bool ok = true;
    for (const auto& c : fixtures::condition_table()) {
        const ConditionVerdict v = evaluate_theorem(c.spec);
        const bool match = v.verdict == c.verdict &&
                           std::includes(v.fired.begin(), v.fired.end(), c.fired.begin(), c.fired.end());
        ok = ok && match;
        rows.push_back({{"spec", c.spec.to_string()}, {"result", to_json(v)}, {"match", match}});
    }
    return {"condition-table", ok, rows};
}

bool same_members(const PencilResult& r, const std::vector<std::pair<int, int>>& want) {
    if (r.vacuous || r.members.size() != want.size()) return false;
    for (const auto& [l, m] : want) {
        const auto hit = std::find_if(r.members.begin(), r.members.end(), [&](const PencilMember& p) {
            return std::abs(p.lambda - Complex(l)) < 1e-8 && std::abs(p.mu - Complex(m)) < 1e-8;
        });
        if (hit == r.members.end()) return false;
    }
    return true;
}

FixtureResult pencil_fixture(const std::string& name, const std::pair<QMatrix, QMatrix>& pencil,
                             const std::vector<std::pair<int, int>>& want, const SuiteOptions& o) {
    const PencilResult r = o.arithmetic == Arithmetic::Rational
                               ? pencil_low_rank_members(pencil.first, pencil.second, 2)
                               : pencil_low_rank_members(to_complex(pencil.first), to_complex(pencil.second), 2, o.seed);
    bool ok = same_members(r, want);
    if (o.arithmetic == Arithmetic::Rational)
        for (const auto& m : r.members) ok = ok && m.exact.has_value();
    return {name, ok, to_json(r)};
}

const std::vector<std::pair<std::string, Runner>>& registry() {
    static const std::vector<std::pair<std::string, Runner>> r = {
        {"sub236-secant-defective", sub236_generic},
        {"sub236-boundary-pair",
         [](const SuiteOptions& o) {
             return o.arithmetic == Arithmetic::Rational ? sub236_boundary_impl<Rational>()
                                                         : sub236_boundary_impl<Complex>();
         }},
        {"sub222-secant-nondefective", sub222_secant},
        {"sub222-twd-containment",
         [](const SuiteOptions& o) {
             return o.arithmetic == Arithmetic::Rational ? sub222_twd_impl<Rational>() : sub222_twd_impl<Complex>();
         }},
        {"sub122-tangent-hyperplane",
         [](const SuiteOptions& o) {
             return o.arithmetic == Arithmetic::Rational ? sub122_hyperplane_impl<Rational>(o.seed)
                                                         : sub122_hyperplane_impl<Complex>(o.seed);
         }},
        {"sub122-not-twd",
         [](const SuiteOptions& o) {
             return o.arithmetic == Arithmetic::Rational ? sub122_not_twd_impl<Rational>(o.seed)
                                                         : sub122_not_twd_impl<Complex>(o.seed);
         }},
        {"condition-table", condition_fixture},
        {"pencil-disjoint",
         [](const SuiteOptions& o) {
             return pencil_fixture("pencil-disjoint", fixtures::disjoint_pencil(), {{1, 0}, {0, 1}}, o);
         }},
        {"pencil-overlap",
         [](const SuiteOptions& o) {
             return pencil_fixture("pencil-overlap", fixtures::overlapping_pencil(), {{1, 0}, {0, 1}, {1, -1}}, o);
         }},
    };
    return r;
}

}  // namespace

bool SuiteReport::all_passed() const {
    return std::all_of(fixtures.begin(), fixtures.end(), [](const FixtureResult& f) { return f.passed; });
}

std::vector<std::string> SuiteReport::failures() const {
    std::vector<std::string> out;
    for (const auto& f : fixtures)
        if (!f.passed) out.push_back(f.name);
    return out;
}

const std::vector<std::string>& suite_fixture_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, run] : registry()) n.push_back(name);
        return n;
    }();
    return names;
}

SuiteReport run_suite(const SuiteOptions& opts) {
    for (const auto& n : opts.only)
        if (std::find(suite_fixture_names().begin(), suite_fixture_names().end(), n) == suite_fixture_names().end())
            throw std::invalid_argument("unknown fixture '" + n + "'");
    SuiteReport report;
    for (const auto& [name, run] : registry()) {
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), name) == opts.only.end()) continue;
        try {
            report.fixtures.push_back(run(opts));
        } catch (const std::exception& e) {
            report.fixtures.push_back({name, false, {{"error", e.what()}}});
        }
    }
    return report;
}

json to_json(const SuiteReport& r) {
    json fixtures = json::array();
    for (const auto& f : r.fixtures) fixtures.push_back({{"name", f.name}, {"passed", f.passed}, {"details", f.details}});
    return {{"all_passed", r.all_passed()}, {"failures", r.failures()}, {"fixtures", fixtures}};
}

}  // namespace btdid
