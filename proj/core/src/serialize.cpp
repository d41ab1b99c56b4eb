#include "btdid/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef BTDID_VERSION
#define BTDID_VERSION "0.0.0"
#endif

namespace btdid {

std::string tool_version() { return BTDID_VERSION; }

json to_json(const Report& r) {
    json j;
    j["schema"] = r.schema;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["results"] = r.results;
    j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
    j["tool_version"] = r.tool_version;
    j["wall_time_ms"] = r.wall_time_ms ? json(*r.wall_time_ms) : json(nullptr);
    return j;
}

Report report_from_json(const json& j) {
    Report r;
    r.schema = j.at("schema").get<int>();
    if (r.schema != kReportSchema) throw std::invalid_argument("unsupported report schema " + std::to_string(r.schema));
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.results = j.at("results");
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
    r.tool_version = j.at("tool_version").get<std::string>();
    if (!j.at("wall_time_ms").is_null()) r.wall_time_ms = j.at("wall_time_ms").get<double>();
    return r;
}

std::string serialize(const Report& r) { return to_json(r).dump(2) + "\n"; }

Report parse_report(const std::string& text) { return report_from_json(json::parse(text)); }

json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json to_json(const SubspaceVarietySpec& s) {
    return {{"ambient", s.ambient().dims()}, {"ranks", s.mode_ranks()}};
}

json to_json(const BlockTermSpec& s) { return {{"I", s.I}, {"J", s.J}, {"K", s.K}, {"L", s.L}}; }

SubspaceVarietySpec subspace_spec_from_json(const json& j) {
    return SubspaceVarietySpec(Shape(j.at("ambient").get<std::vector<std::size_t>>()),
                               j.at("ranks").get<std::vector<std::size_t>>());
}

BlockTermSpec block_term_spec_from_json(const json& j) {
    return BlockTermSpec(j.at("I").get<std::size_t>(), j.at("J").get<std::size_t>(), j.at("K").get<std::size_t>(),
                         j.at("L").get<std::vector<std::size_t>>());
}

json to_json(const JoinReport& r) {
    json v = json::array();
    for (const auto& s : r.specs) v.push_back(to_json(s));
    return {{"varieties", v},
            {"ambient_dim", r.ambient_dim},
            {"sum_affine_dims", r.sum_affine_dims},
            {"expected_affine_dim", r.expected_affine_dim},
            {"computed_affine_dim", r.computed_affine_dim},
            {"defect", r.defect},
            {"trials", r.trials},
            {"trial_ranks", r.trial_ranks},
            {"arithmetic", to_string(r.arithmetic)},
            {"seed", r.seed},
            {"certified", r.certified},
            {"evidence", r.evidence},
            {"notes", r.notes}};
}

JoinReport join_report_from_json(const json& j) {
    JoinReport r;
    for (const auto& s : j.at("varieties")) r.specs.push_back(subspace_spec_from_json(s));
    r.ambient_dim = j.at("ambient_dim").get<std::size_t>();
    r.sum_affine_dims = j.at("sum_affine_dims").get<std::size_t>();
    r.expected_affine_dim = j.at("expected_affine_dim").get<std::size_t>();
    r.computed_affine_dim = j.at("computed_affine_dim").get<std::size_t>();
    r.defect = j.at("defect").get<long>();
    r.trials = j.at("trials").get<std::size_t>();
    r.trial_ranks = j.at("trial_ranks").get<std::vector<std::size_t>>();
    r.arithmetic = arithmetic_from_string(j.at("arithmetic").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.certified = j.at("certified").get<bool>();
    r.evidence = j.at("evidence").get<std::string>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

json to_json(const TwdReport& r) {
    json v = json::array();
    for (const auto& s : r.base_specs) v.push_back(to_json(s));
    return {{"varieties", v},
            {"witness_variety", r.witness_spec},
            {"strategy", to_string(r.strategy)},
            {"arithmetic", to_string(r.arithmetic)},
            {"containment_found", r.containment_found},
            {"witnesses_tried", r.witnesses_tried},
            {"witness_budget", r.trials},
            {"seed", r.seed},
            {"witness_entries", r.witness_entries ? json(*r.witness_entries) : json(nullptr)},
            {"notes", r.notes}};
}

json to_json(const AmbientFill& f) {
    return {{"sum", f.sum}, {"ambient", f.ambient}, {"sign", std::string(1, f.sign)}};
}

namespace {

json condition_list(const std::set<Condition>& s) {
    json a = json::array();
    for (auto c : s) a.push_back(to_string(c));
    return a;
}

std::set<Condition> condition_set(const json& a) {
    std::set<Condition> s;
    for (const auto& x : a) {
        const auto name = x.get<std::string>();
        bool found = false;
        for (auto c : {Condition::A, Condition::B, Condition::C, Condition::D, Condition::E, Condition::AmbientOverfull})
            if (name == to_string(c)) s.insert(c), found = true;
        if (!found) throw std::invalid_argument("unknown condition '" + name + "'");
    }
    return s;
}

json complex_list(const std::vector<Complex>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

}  // namespace

json to_json(const ConditionVerdict& v) {
    return {{"verdict", to_string(v.verdict)},
            {"fired", condition_list(v.fired)},
            {"satisfied", condition_list(v.satisfied)},
            {"hypothesis_ok", v.hypothesis_ok},
            {"ambient_fill", to_json(v.fill)},
            {"notes", v.notes}};
}

ConditionVerdict condition_verdict_from_json(const json& j) {
    ConditionVerdict v;
    v.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    v.fired = condition_set(j.at("fired"));
    v.satisfied = condition_set(j.at("satisfied"));
    v.hypothesis_ok = j.at("hypothesis_ok").get<bool>();
    const auto& f = j.at("ambient_fill");
    v.fill.sum = f.at("sum").get<std::size_t>();
    v.fill.ambient = f.at("ambient").get<std::size_t>();
    v.fill.sign = f.at("sign").get<std::string>().at(0);
    v.notes = j.at("notes").get<std::vector<std::string>>();
    return v;
}

json to_json(const PencilMember& m) {
    json j = {{"coeffs", json::array({to_json(m.lambda), to_json(m.mu)})}, {"rank", m.rank}};
    j["exact"] = m.exact ? json::array({m.exact->first, m.exact->second}) : json(nullptr);
    return j;
}

json to_json(const PencilResult& p) {
    json m = json::array();
    for (const auto& x : p.members) m.push_back(to_json(x));
    return {{"members", m}, {"vacuous", p.vacuous}, {"notes", p.notes}};
}

json to_json(const CriterionReport& r) {
    json subsets = json::array();
    for (const auto& s : r.subsets)
        subsets.push_back({{"subset", s.subset},
                           {"L", s.L},
                           {"method", s.method},
                           {"violation", s.violation},
                           {"vacuous", s.vacuous}});
    json member = nullptr;
    if (r.violating_member) {
        const auto& v = *r.violating_member;
        member = {{"coeffs", complex_list(v.coeffs)},
                  {"exact", v.exact ? json(*v.exact) : json(nullptr)},
                  {"rank", v.rank},
                  {"exactly_verified", v.exactly_verified}};
    }
    return {{"holds", r.holds},
            {"confidence", r.confidence},
            {"violating_subset", r.violating_subset ? json(*r.violating_subset) : json(nullptr)},
            {"violating_member", member},
            {"subsets", subsets},
            {"notes", r.notes}};
}

namespace {

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(complex_list(m.row(r)));
    return rows;
}

}  // namespace

json to_json(const BTDSolution& s) {
    json blocks = json::array();
    for (const auto& b : s.blocks)
        blocks.push_back({{"a", complex_list(b.a)}, {"B", matrix_json(b.B)}, {"C", matrix_json(b.C)}});
    return {{"spec", to_json(s.spec)},
            {"residual", s.residual},
            {"sweeps", s.sweeps},
            {"blocks", blocks},
            {"notes", s.notes}};
}

json to_json(const CanonicalSolution& s) {
    json blocks = json::array();
    for (const auto& b : s.blocks)
        blocks.push_back({{"L", b.L}, {"a", complex_list(b.a)}, {"X", matrix_json(b.X)}, {"basis", matrix_json(b.basis)}});
    return {{"spec", to_json(s.spec)}, {"residual", s.residual}, {"blocks", blocks}};
}

json to_json(const JacobianRank& j) {
    return {{"rows", j.rows},     {"params", j.params},           {"rank", j.rank},
            {"gauge", j.gauge},   {"kernel", j.kernel()},         {"excess_kernel", j.excess_kernel()}};
}

json to_json(const UniquenessReport& r) {
    json reps = json::array();
    for (const auto& c : r.class_representatives) reps.push_back(to_json(c));
    return {{"spec", to_json(r.spec)},
            {"trials", r.trials},
            {"seed", r.seed},
            {"converged_count", r.converged_count},
            {"distinct_classes", r.distinct_classes},
            {"residuals", r.residuals},
            {"verdict", to_string(r.verdict)},
            {"jacobian", r.jacobian ? to_json(*r.jacobian) : json(nullptr)},
            {"continuum_evidence", r.continuum_evidence},
            {"matches_verdict", r.matches_verdict},
            {"inconclusive", r.inconclusive},
            {"class_representatives", reps},
            {"notes", r.notes}};
}

json tensor_to_json(const CTensor& t) {
    return {{"schema", kReportSchema}, {"shape", t.shape().dims()}, {"field", "complex"}, {"entries", complex_list(t.entries())}};
}

json tensor_to_json(const QTensor& t) {
    json e = json::array();
    for (const auto& x : t.entries()) {
        if (x.get_den() != 1 || !x.get_num().fits_slong_p())
            throw std::invalid_argument("integer fixture: entry " + x.get_str() + " is not a machine integer");
        e.push_back(json::array({x.get_num().get_si(), 0}));
    }
    return {{"schema", kReportSchema}, {"shape", t.shape().dims()}, {"field", "integer"}, {"entries", e}};
}

namespace {

Shape fixture_shape(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("tensor fixture: expected an object");
    if (j.contains("schema") && j.at("schema").get<int>() != kReportSchema)
        throw std::invalid_argument("tensor fixture: unsupported schema");
    return Shape(j.at("shape").get<std::vector<std::size_t>>());
}

const json& fixture_entries(const json& j, const Shape& s) {
    const json& e = j.at("entries");
    if (!e.is_array() || e.size() != s.size())
        throw std::invalid_argument("tensor fixture: expected " + std::to_string(s.size()) + " entries");
    for (const auto& x : e)
        if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number())
            throw std::invalid_argument("tensor fixture: entries must be [re, im] number pairs");
    return e;
}

}  // namespace

CTensor tensor_from_json(const json& j) {
    const Shape s = fixture_shape(j);
    const json& e = fixture_entries(j, s);
    std::vector<Complex> v;
    for (const auto& x : e) v.emplace_back(x[0].get<double>(), x[1].get<double>());
    return CTensor(s, std::move(v));
}

QTensor integer_tensor_from_json(const json& j) {
    const Shape s = fixture_shape(j);
    if (j.value("field", std::string("complex")) != "integer")
        throw std::invalid_argument("tensor fixture: not an integer fixture");
    const json& e = fixture_entries(j, s);
    std::vector<Rational> v;
    for (const auto& x : e) {
        if (!x[0].is_number_integer() || !x[1].is_number_integer() || x[1].get<long>() != 0)
            throw std::invalid_argument("tensor fixture: integer fixtures hold [n, 0] pairs");
        v.emplace_back(x[0].get<long>());
    }
    return QTensor(s, std::move(v));
}

CTensor read_tensor_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open tensor fixture '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("tensor fixture '" + path + "': " + e.what());
    }
    return tensor_from_json(j);
}

}  // namespace btdid
