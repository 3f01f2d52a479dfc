#include <benchmark/benchmark.h>

#include <sstream>

#include "confaudit/analysis.hpp"
#include "confaudit/log_io.hpp"
#include "confaudit/metrics.hpp"
#include "confaudit/simulate.hpp"

namespace {

using namespace confaudit;

SimConfig config_for(int envs, SimFeedback mode) {
    SimConfig config;
    config.n_envs = envs;
    config.confab_strength = 0.5;
    config.feedback_mode = mode;
    config.seed = 7;
    return config;
}

void BM_Simulate(benchmark::State& state) {
    SimConfig config = config_for(static_cast<int>(state.range(0)), SimFeedback::Binary);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(config));
    }
}
BENCHMARK(BM_Simulate)->Arg(10)->Arg(50);

void BM_SerializeParse(benchmark::State& state) {
    RunLog log = simulate(config_for(static_cast<int>(state.range(0)), SimFeedback::Extracted));
    for (auto _ : state) {
        std::istringstream in(serialize_run_log(log));
        benchmark::DoNotOptimize(parse_run_log(in));
    }
}
BENCHMARK(BM_SerializeParse)->Arg(10)->Arg(50);

void BM_AnalyzeRunLog(benchmark::State& state) {
    RunLog log = simulate(config_for(static_cast<int>(state.range(0)), SimFeedback::Binary));
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze_run_log(log));
    }
}
BENCHMARK(BM_AnalyzeRunLog)->Arg(10)->Arg(50);

void BM_Rrr(benchmark::State& state) {
    RunLog log = simulate(config_for(10, SimFeedback::Binary));
    const EnvironmentRun& env = log.environments.front();
    for (auto _ : state) {
        benchmark::DoNotOptimize(rrr(env.reflections));
    }
}
BENCHMARK(BM_Rrr);

} // namespace

BENCHMARK_MAIN();
