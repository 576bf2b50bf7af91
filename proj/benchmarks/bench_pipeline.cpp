#include <benchmark/benchmark.h>

#include <vector>

#include "elmiatt/assessment.hpp"
#include "elmiatt/generator.hpp"
#include "elmiatt/laf.hpp"
#include "elmiatt/loss.hpp"
#include "elmiatt/rng.hpp"

using namespace elmiatt;

namespace {

GeneratedScenario make_scenario(std::size_t m, std::size_t n, std::uint64_t seed) {
    const auto att = generate_att(m, true, seed);
    GenSpec spec;
    spec.m = m;
    spec.n = n;
    spec.coverage = 0.4;
    spec.noise = 0.2;
    spec.pattern = MiattPattern::CoverageHighDiversity;
    spec.seed = seed;
    return generate_miatts(att, spec);
}

void bench_generate(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto scenario = make_scenario(m, 4, seed++);
        benchmark::DoNotOptimize(scenario.miatts.length());
    }
    state.SetItemsProcessed(state.iterations());
}

void bench_assess(benchmark::State& state) {
    const auto scenario = make_scenario(static_cast<std::size_t>(state.range(0)), 4, 1);
    EvalConfig cfg;
    for (auto _ : state) {
        const auto report = quality_score(scenario.miatts, cfg);
        benchmark::DoNotOptimize(report.q_score);
    }
    state.SetItemsProcessed(state.iterations());
}

void bench_laf_sample(benchmark::State& state) {
    const auto scenario = make_scenario(static_cast<std::size_t>(state.range(0)), 4, 2);
    EvalConfig cfg;
    for (auto _ : state) {
        const auto s = evaluate_sample(scenario.att, scenario.miatts, cfg);
        benchmark::DoNotOptimize(s.score);
    }
    state.SetItemsProcessed(state.iterations());
}

void bench_dice_methods(benchmark::State& state) {
    const auto scenario = make_scenario(static_cast<std::size_t>(state.range(0)), 4, 3);
    for (auto _ : state) {
        const auto s = dice_method_scores(scenario.att, scenario.miatts);
        benchmark::DoNotOptimize(s.s_b);
    }
    state.SetItemsProcessed(state.iterations());
}

void bench_ce_methods(benchmark::State& state) {
    const auto scenario = make_scenario(static_cast<std::size_t>(state.range(0)), 4, 4);
    for (auto _ : state) {
        const auto s = ce_method_scores(scenario.att, scenario.miatts);
        benchmark::DoNotOptimize(s.s_b);
    }
    state.SetItemsProcessed(state.iterations());
}

} // namespace

BENCHMARK(bench_generate)->Arg(64)->Arg(512);
BENCHMARK(bench_assess)->Arg(64)->Arg(512);
BENCHMARK(bench_laf_sample)->Arg(64)->Arg(512);
BENCHMARK(bench_dice_methods)->Arg(64)->Arg(512);
BENCHMARK(bench_ce_methods)->Arg(64)->Arg(512);

BENCHMARK_MAIN();
