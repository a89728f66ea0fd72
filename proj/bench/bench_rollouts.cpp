// Serial reference vs OpenMP rollout evaluation on the UCLH returns scenario.
//
//   ./bench_rollouts --benchmark_filter=Evaluate

#include <benchmark/benchmark.h>

#include "pir/engine.hpp"
#include "pir/optimize.hpp"

namespace {

pir::PolicySpec bench_policy() {
    pir::WeeklySSPolicy ss;
    ss.reorder_point.fill(30);
    ss.order_up_to.fill(55);
    return {ss, pir::IssuingPolicy::yupr(0.7, 0.9)};
}

pir::EvalConfig bench_eval(int rollouts, int workers) {
    pir::EvalConfig e;
    e.n_rollouts = rollouts;
    e.seed = 2024;
    e.workers = workers;
    return e;
}

void BM_SingleRollout(benchmark::State& state) {
    auto cfg = pir::builtin_scenario("uclh-returns");
    auto policy = bench_policy();
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pir::rollout(cfg, policy, 465, 100, i++, 7));
    }
    state.SetItemsProcessed(state.iterations() * 465);
}
BENCHMARK(BM_SingleRollout)->Unit(benchmark::kMicrosecond);

void BM_EvaluateSerial(benchmark::State& state) {
    auto cfg = pir::builtin_scenario("uclh-returns");
    auto policy = bench_policy();
    auto eval = bench_eval(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(pir::evaluate_policy_serial(cfg, policy, eval));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateSerial)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_EvaluateParallel(benchmark::State& state) {
    auto cfg = pir::builtin_scenario("uclh-returns");
    auto policy = bench_policy();
    auto eval = bench_eval(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(pir::evaluate_policy(cfg, policy, eval));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateParallel)->Args({200, 1})->Args({200, 2})->Args({200, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
