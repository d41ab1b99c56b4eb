#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "btdid/serialize.hpp"

namespace btdid {

struct FixtureResult {
    std::string name;
    bool passed = false;
    json details;
};

struct SuiteOptions {
    Arithmetic arithmetic = Arithmetic::Rational;
    std::uint64_t seed = 0;
    /// Run only these fixtures (all when empty). Unknown names throw std::invalid_argument.
    std::vector<std::string> only;
};

struct SuiteReport {
    std::vector<FixtureResult> fixtures;

    bool all_passed() const;
    std::vector<std::string> failures() const;
};

/// Deterministic regression fixtures, in execution order.
const std::vector<std::string>& suite_fixture_names();

SuiteReport run_suite(const SuiteOptions& opts = {});

json to_json(const SuiteReport& r);

}  // namespace btdid
