#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "btdid/commands.hpp"

using namespace btdid;

namespace {

Arithmetic parse_arith(const std::string& s) { return arithmetic_from_string(s); }

int emit(CommandResult r, bool timing, std::chrono::steady_clock::time_point start) {
    if (timing)
        r.report.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (r.report.results.is_object() && r.report.results.contains("error"))
        std::cerr << "btd-identify " << r.report.command << ": " << r.report.results["error"].get<std::string>()
                  << "\n";
    std::cout << serialize(r.report);
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Identifiability analysis for block-term tensor decompositions", "btd-identify"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);
    bool timing = false;
    app.add_flag("--timing", timing, "Record wall_time_ms in the report");

    std::size_t I = 0, J = 0, K = 0;
    std::vector<std::size_t> L;
    auto* analyze = app.add_subcommand("analyze", "Evaluate the uniqueness conditions for a block-term format");
    analyze->add_option("-I", I)->required();
    analyze->add_option("-J", J)->required();
    analyze->add_option("-K", K)->required();
    analyze->add_option("-L", L, "Block ranks, comma separated")->required()->delimiter(',');

    DefectArgs defect;
    std::string defect_arith = "rational";
    auto* dcmd = app.add_subcommand("defect", "Terracini dimension count of a join of subspace varieties");
    dcmd->add_option("--ambient", defect.ambient, "Ambient dimensions, comma separated")->required()->delimiter(',');
    dcmd->add_option("--sub", defect.subs, "Mode ranks of one variety (repeat per variety)")
        ->required()
        ->delimiter(',')
        ->allow_extra_args(false);
    dcmd->add_option("--arith", defect_arith)->check(CLI::IsMember({"float", "rational"}));
    dcmd->add_option("--trials", defect.trials, "Trials (default 3 rational, 10 float)");
    dcmd->add_option("--seed", defect.seed);

    DecomposeArgs dec;
    std::string dec_file, dec_synth;
    std::vector<std::size_t> dec_L;
    auto* decompose = app.add_subcommand("decompose", "Fit a block-term decomposition by multistart ALS");
    decompose->add_option("file", dec_file, "Tensor fixture (JSON)");
    decompose->add_option("--synth", dec_synth, "Synthesize from I,J,K,L1,...,LR");
    decompose->add_option("-L", dec_L, "Block ranks for file input")->delimiter(',');
    decompose->add_option("--seed", dec.seed);
    decompose->add_option("--starts", dec.starts);
    decompose->add_option("--max-sweeps", dec.max_sweeps);

    SuiteArgs suite;
    std::string suite_arith = "rational";
    auto* scmd = app.add_subcommand("suite", "Run the regression fixtures");
    scmd->add_flag("--list", suite.list, "List fixture names without running");
    scmd->add_option("--arith", suite_arith)->check(CLI::IsMember({"float", "rational"}));
    scmd->add_option("--seed", suite.seed);
    scmd->add_option("--only", suite.only, "Run only these fixtures")->delimiter(',');

    CriterionArgs crit;
    std::string crit_arith = "rational";
    auto* ccmd = app.add_subcommand("criterion", "Pencil/span uniqueness criterion on a synthetic tensor");
    ccmd->add_option("--synth", crit.spec, "I,J,K,L1,...,LR")->required();
    ccmd->add_option("--arith", crit_arith)->check(CLI::IsMember({"float", "rational"}));
    ccmd->add_option("--seed", crit.seed);
    ccmd->add_option("--multistarts", crit.multistarts);

    ProbeArgs probe;
    auto* pcmd = app.add_subcommand("probe", "Compare multistart ALS with the theorem verdict");
    pcmd->add_option("--synth", probe.spec, "I,J,K,L1,...,LR")->required();
    pcmd->add_option("--trials", probe.trials);
    pcmd->add_option("--seed", probe.seed);
    pcmd->add_option("--max-sweeps", probe.max_sweeps);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (*analyze) return emit(cmd_analyze(I, J, K, L), timing, start);
        if (*dcmd) {
            defect.arithmetic = parse_arith(defect_arith);
            return emit(cmd_defect(defect), timing, start);
        }
        if (*decompose) {
            if (!dec_file.empty()) dec.file = dec_file;
            if (!dec_synth.empty()) dec.synth = dec_synth;
            if (!dec_L.empty()) dec.L = dec_L;
            return emit(cmd_decompose(dec), timing, start);
        }
        if (*scmd) {
            suite.arithmetic = parse_arith(suite_arith);
            return emit(cmd_suite(suite), timing, start);
        }
        if (*ccmd) {
            crit.arithmetic = parse_arith(crit_arith);
            return emit(cmd_criterion(crit), timing, start);
        }
        if (*pcmd) return emit(cmd_probe(probe), timing, start);
    } catch (const std::exception& e) {
        return emit(error_result(command, json::object(), e.what()), timing, start);
    }
    return kExitUsage;
}
