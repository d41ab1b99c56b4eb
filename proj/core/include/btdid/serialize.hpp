#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "btdid/als.hpp"
#include "btdid/conditions.hpp"
#include "btdid/criterion.hpp"
#include "btdid/join.hpp"

namespace btdid {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

/// One document per invocation.
struct Report {
    int schema = kReportSchema;
    std::string command;
    json inputs = json::object();
    json results = json::object();
    std::optional<std::uint64_t> seed;
    std::string tool_version;
    /// Only filled when timing is requested, so that reports stay byte-identical otherwise.
    std::optional<double> wall_time_ms;

    bool operator==(const Report&) const = default;
};

std::string tool_version();

json to_json(const Report& r);
Report report_from_json(const json& j);
/// Pretty-printed JSON with a trailing newline.
std::string serialize(const Report& r);
Report parse_report(const std::string& text);

json to_json(const Complex& z);
json to_json(const SubspaceVarietySpec& s);
json to_json(const BlockTermSpec& s);
json to_json(const JoinReport& r);
json to_json(const TwdReport& r);
json to_json(const AmbientFill& f);
json to_json(const ConditionVerdict& v);
json to_json(const PencilMember& m);
json to_json(const PencilResult& p);
json to_json(const CriterionReport& r);
json to_json(const BTDSolution& s);
json to_json(const CanonicalSolution& s);
json to_json(const JacobianRank& j);
json to_json(const UniquenessReport& r);

JoinReport join_report_from_json(const json& j);
ConditionVerdict condition_verdict_from_json(const json& j);
SubspaceVarietySpec subspace_spec_from_json(const json& j);
BlockTermSpec block_term_spec_from_json(const json& j);

/// Tensor fixture: {"schema": 1, "shape": [...], "field": "complex" | "integer",
/// "entries": [[re, im], ...]} with entries in row-major order.
json tensor_to_json(const CTensor& t);
json tensor_to_json(const QTensor& t);  ///< requires integer entries
CTensor tensor_from_json(const json& j);
/// Integer fixtures only.
QTensor integer_tensor_from_json(const json& j);
CTensor read_tensor_file(const std::string& path);

}  // namespace btdid
