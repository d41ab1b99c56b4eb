#include "btdid/commands.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "btdid/als.hpp"
#include "btdid/conditions.hpp"
#include "btdid/criterion.hpp"
#include "btdid/join.hpp"
#include "btdid/suite.hpp"

namespace btdid {

namespace {

Report make_report(const std::string& command, json inputs, json results, std::optional<std::uint64_t> seed) {
    Report r;
    r.command = command;
    r.inputs = std::move(inputs);
    r.results = std::move(results);
    r.seed = seed;
    r.tool_version = tool_version();
    return r;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("'" + path + "': " + e.what());
    }
}

}  // namespace

CommandResult error_result(const std::string& command, json inputs, const std::string& message, int exit_code) {
    return {make_report(command, std::move(inputs), {{"error", message}}, std::nullopt), exit_code};
}

CommandResult cmd_analyze(std::size_t I, std::size_t J, std::size_t K, const std::vector<std::size_t>& L) {
    json inputs = {{"I", I}, {"J", J}, {"K", K}, {"L", L}};
    try {
        if (I == 0 || J == 0 || K == 0 || L.empty())
            throw std::invalid_argument("I, J, K must be positive and L non-empty");
        for (auto l : L)
            if (l == 0) throw std::invalid_argument("block ranks must be positive");
        const BlockTermSpec spec(I, J, K, L);
        return {make_report("analyze", inputs, to_json(evaluate_theorem(spec)), std::nullopt), kExitOk};
    } catch (const std::exception& e) {
        return error_result("analyze", inputs, e.what());
    }
}

CommandResult cmd_defect(const DefectArgs& a) {
    json inputs = {{"ambient", a.ambient},
                   {"subs", a.subs},
                   {"arith", to_string(a.arithmetic)},
                   {"trials", a.trials == 0 ? default_trials(a.arithmetic) : a.trials}};
    try {
        if (a.subs.empty()) throw std::invalid_argument("at least one --sub is required");
        std::vector<SubspaceVarietySpec> specs;
        for (const auto& k : a.subs) specs.emplace_back(Shape(a.ambient), k);
        TerraciniOptions t;
        t.arithmetic = a.arithmetic;
        t.trials = a.trials;
        t.seed = a.seed;
        return {make_report("defect", inputs, to_json(terracini_join_dim(specs, t)), a.seed), kExitOk};
    } catch (const std::exception& e) {
        return error_result("defect", inputs, e.what());
    }
}

CommandResult cmd_decompose(const DecomposeArgs& a) {
    json inputs = {{"file", a.file ? json(*a.file) : json(nullptr)},
                   {"synth", a.synth ? json(*a.synth) : json(nullptr)},
                   {"L", a.L ? json(*a.L) : json(nullptr)},
                   {"starts", a.starts},
                   {"max_sweeps", a.max_sweeps}};
    CTensor Y;
    BlockTermSpec spec;
    try {
        if (a.file.has_value() == a.synth.has_value())
            throw std::invalid_argument("give exactly one of an input file or --synth");
        if (a.starts == 0) throw std::invalid_argument("--starts must be positive");
        if (a.synth) {
            spec = BlockTermSpec::parse(*a.synth);
            Y = synth_block_term<Complex>(spec, a.seed, Sampler::complex_gaussian()).Y;
        } else {
            const json j = read_json_file(*a.file);
            Y = tensor_from_json(j);
            std::vector<std::size_t> L;
            if (a.L)
                L = *a.L;
            else if (j.contains("L"))
                L = j.at("L").get<std::vector<std::size_t>>();
            else
                throw std::invalid_argument("block ranks missing: pass -L or store \"L\" in the fixture");
            const auto& d = Y.shape().dims();
            if (d.size() != 3) throw std::invalid_argument("decompose needs a third-order tensor");
            spec = BlockTermSpec(d[0], d[1], d[2], L);
        }
    } catch (const std::exception& e) {
        return error_result("decompose", inputs, e.what());
    }
    inputs["spec"] = spec.to_string();

    MultistartOptions opts;
    opts.als.max_sweeps = a.max_sweeps;
    const MultistartResult ms = multistart_fit(Y, spec, a.starts, derive_seed(a.seed, {0xa15}), opts);
    const std::size_t best = ms.converged.empty() ? *ms.best : ms.converged.front();
    const BTDSolution& fit = ms.fits[best];
    const JacobianRank jac = parametrization_jacobian_rank(fit);
    const ConditionVerdict verdict = evaluate_theorem(spec);

    json residuals = json::array();
    for (const auto& f : ms.fits) residuals.push_back(f.residual);
    json canonical = nullptr;
    try {
        canonical = to_json(canonicalize(fit));
    } catch (const std::domain_error&) {
    }
    const bool converged = !ms.converged.empty();
    const bool nonunique = ms.classes.size() > 1 || jac.excess_kernel();
    json results = {{"converged", converged},
                    {"converged_count", ms.converged.size()},
                    {"distinct_classes", ms.classes.size()},
                    {"nonunique", nonunique},
                    {"best_start", best},
                    {"residual", fit.residual},
                    {"residuals", residuals},
                    {"solution", to_json(fit)},
                    {"canonical", canonical},
                    {"jacobian", to_json(jac)},
                    {"theorem_verdict", to_string(verdict.verdict)},
                    {"inconclusive", !converged}};
    return {make_report("decompose", inputs, std::move(results), a.seed), converged ? kExitOk : kExitInconclusive};
}

CommandResult cmd_suite(const SuiteArgs& a) {
    json inputs = {{"list", a.list}, {"arith", to_string(a.arithmetic)}, {"only", a.only}};
    if (a.list) return {make_report("suite", inputs, {{"fixtures", suite_fixture_names()}}, std::nullopt), kExitOk};
    try {
        SuiteOptions o;
        o.arithmetic = a.arithmetic;
        o.seed = a.seed;
        o.only = a.only;
        const SuiteReport r = run_suite(o);
        return {make_report("suite", inputs, to_json(r), a.seed), r.all_passed() ? kExitOk : kExitCheckFailed};
    } catch (const std::invalid_argument& e) {
        return error_result("suite", inputs, e.what());
    }
}

CommandResult cmd_criterion(const CriterionArgs& a) {
    json inputs = {{"spec", a.spec}, {"arith", to_string(a.arithmetic)}, {"multistarts", a.multistarts}};
    try {
        const BlockTermSpec spec = BlockTermSpec::parse(a.spec);
        CriterionOptions o;
        o.span.multistarts = a.multistarts;
        o.span.seed = derive_seed(a.seed, {0xc417});
        const CriterionReport r =
            a.arithmetic == Arithmetic::Rational
                ? delathauwer_check(synth_block_term<Rational>(spec, a.seed, Sampler::integer_uniform()).truth, o)
                : delathauwer_check(synth_block_term<Complex>(spec, a.seed, Sampler::complex_gaussian()).truth, o);
        const ConditionVerdict v = evaluate_theorem(spec);
        json results = to_json(r);
        results["condition_D"] = v.satisfied.count(Condition::D) != 0;
        results["agrees_with_condition_D"] = r.holds == (v.satisfied.count(Condition::D) != 0);
        return {make_report("criterion", inputs, std::move(results), a.seed), kExitOk};
    } catch (const std::exception& e) {
        return error_result("criterion", inputs, e.what());
    }
}

CommandResult cmd_probe(const ProbeArgs& a) {
    json inputs = {{"spec", a.spec}, {"trials", a.trials}, {"max_sweeps", a.max_sweeps}};
    UniquenessReport r;
    try {
        const BlockTermSpec spec = BlockTermSpec::parse(a.spec);
        MultistartOptions o;
        o.als.max_sweeps = a.max_sweeps;
        r = uniqueness_probe(spec, a.trials, a.seed, o);
    } catch (const std::exception& e) {
        return error_result("probe", inputs, e.what());
    }
    const int code = !r.matches_verdict ? kExitCheckFailed : r.inconclusive ? kExitInconclusive : kExitOk;
    return {make_report("probe", inputs, to_json(r), a.seed), code};
}

}  // namespace btdid
