#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "btdid/serialize.hpp"

namespace btdid {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitInconclusive = 3 };

struct CommandResult {
    Report report;
    int exit_code = kExitOk;
};

/// Report for a command that could not run; results hold {"error": message}.
CommandResult error_result(const std::string& command, json inputs, const std::string& message,
                           int exit_code = kExitUsage);

CommandResult cmd_analyze(std::size_t I, std::size_t J, std::size_t K, const std::vector<std::size_t>& L);

struct DefectArgs {
    std::vector<std::size_t> ambient;
    std::vector<std::vector<std::size_t>> subs;
    Arithmetic arithmetic = Arithmetic::Rational;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

CommandResult cmd_defect(const DefectArgs& args);

struct DecomposeArgs {
    std::optional<std::string> file;
    std::optional<std::string> synth;  ///< "I,J,K,L1,...,LR"
    std::optional<std::vector<std::size_t>> L;  ///< block ranks for file input
    std::uint64_t seed = 0;
    std::size_t starts = 10;
    std::size_t max_sweeps = 20000;
};

CommandResult cmd_decompose(const DecomposeArgs& args);

struct SuiteArgs {
    bool list = false;
    Arithmetic arithmetic = Arithmetic::Rational;
    std::uint64_t seed = 0;
    std::vector<std::string> only;
};

CommandResult cmd_suite(const SuiteArgs& args);

struct CriterionArgs {
    std::string spec;  ///< "I,J,K,L1,...,LR"
    Arithmetic arithmetic = Arithmetic::Rational;
    std::uint64_t seed = 0;
    std::size_t multistarts = 50;
};

CommandResult cmd_criterion(const CriterionArgs& args);

struct ProbeArgs {
    std::string spec;
    std::size_t trials = 20;
    std::uint64_t seed = 0;
    std::size_t max_sweeps = 20000;
};

CommandResult cmd_probe(const ProbeArgs& args);

}  // namespace btdid
