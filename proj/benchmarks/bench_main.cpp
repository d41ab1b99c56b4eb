#include <benchmark/benchmark.h>

#include "btdid/als.hpp"
#include "btdid/block_term.hpp"
#include "btdid/conditions.hpp"
#include "btdid/criterion.hpp"
#include "btdid/join.hpp"
#include "btdid/rank.hpp"

using namespace btdid;

namespace {

template <class S>
Matrix<S> random_matrix(std::size_t r, std::size_t c, std::uint64_t seed, const Sampler& s) {
    Rng rng(seed);
    Matrix<S> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.draw<S>(s);
    return m;
}

void BM_RationalRank(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto m = random_matrix<Rational>(n, n, 1, Sampler::integer_uniform());
    for (auto _ : state) benchmark::DoNotOptimize(rational_rank(m));
}
BENCHMARK(BM_RationalRank)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_NumericalRank(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto m = random_matrix<Complex>(n, n, 1, Sampler::complex_gaussian());
    for (auto _ : state) benchmark::DoNotOptimize(numerical_rank(m));
}
BENCHMARK(BM_NumericalRank)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

// secant of Sub_{2,2,2} in 4x4x4
void BM_TerraciniSecant(benchmark::State& state) {
    SubspaceVarietySpec spec(Shape({4, 4, 4}), {2, 2, 2});
    TerraciniOptions opts;
    opts.arithmetic = state.range(0) ? Arithmetic::Rational : Arithmetic::Float;
    opts.trials = 1;
    for (auto _ : state) benchmark::DoNotOptimize(terracini_join_dim({spec, spec}, opts));
}
BENCHMARK(BM_TerraciniSecant)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EvaluateTheorem(benchmark::State& state) {
    BlockTermSpec spec(4, 4, 8, {2, 2, 2, 2});
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_theorem(spec));
}
BENCHMARK(BM_EvaluateTheorem);

void BM_ExactPencil(benchmark::State& state) {
    auto gt = synth_block_term<Rational>(BlockTermSpec(2, 4, 4, {2, 2}), 3, Sampler::integer_uniform()).truth;
    auto X = gt.matrices();
    for (auto _ : state) benchmark::DoNotOptimize(pencil_low_rank_members(X[0], X[1], 2));
}
BENCHMARK(BM_ExactPencil)->Unit(benchmark::kMillisecond);

void BM_FloatPencil(benchmark::State& state) {
    auto gt = synth_block_term<Complex>(BlockTermSpec(2, 4, 4, {2, 2}), 3, Sampler::complex_gaussian()).truth;
    auto X = gt.matrices();
    for (auto _ : state) benchmark::DoNotOptimize(pencil_low_rank_members(X[0], X[1], 2));
}
BENCHMARK(BM_FloatPencil)->Unit(benchmark::kMillisecond);

void BM_AlsFit(benchmark::State& state) {
    BlockTermSpec spec(2, 4, 4, {2, 2});
    auto syn = synth_block_term<Complex>(spec, 5, Sampler::complex_gaussian());
    for (auto _ : state) benchmark::DoNotOptimize(als_fit(syn.Y, spec, AlsInit::random(11)));
}
BENCHMARK(BM_AlsFit)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
