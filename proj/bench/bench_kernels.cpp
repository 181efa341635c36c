#include <benchmark/benchmark.h>

#include <map>
#include <vector>

#include "rds/experiment.hpp"
#include "rds/netgen.hpp"
#include "rds/rwwt.hpp"

using namespace rds;

namespace {

const Graph& bench_graph(std::size_t n) {
    static std::map<std::size_t, Graph> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        Rng rng(n);
        it = cache.emplace(n, build_configuration_model(n, DegreeModel{PowerLawCutoff{}, 10000}, rng).graph).first;
    }
    return it->second;
}

Execution exec_of(const benchmark::State& state) {
    return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void BM_ApplyTransition(benchmark::State& state) {
    const Graph& g = bench_graph(static_cast<std::size_t>(state.range(0)));
    const std::size_t n = g.num_vertices();
    std::vector<double> in(n, 1.0 / static_cast<double>(n)), out(n);
    const Execution exec = exec_of(state);
    for (auto _ : state) {
        apply_transition(g, 0.9, in, out, exec);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ApplyTransition)->ArgsProduct({{10000, 100000}, {0, 1}});

void BM_ExactStationary(benchmark::State& state) {
    const Graph& g = bench_graph(static_cast<std::size_t>(state.range(0)));
    PowerIterationOptions opts;
    opts.execution = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(exact_stationary(g, TeleportConfig{0.9}, opts));
}
BENCHMARK(BM_ExactStationary)->ArgsProduct({{10000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_RunExperiment(benchmark::State& state) {
    ExperimentSpec spec;
    spec.network.n = 5000;
    spec.network_samples = 2;
    spec.replications_per_network = 10;
    spec.seed_counts = {1, 10, 30};
    const Execution exec = state.range(0) == 0 ? Execution::serial : Execution::parallel;
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment(spec, exec));
}
BENCHMARK(BM_RunExperiment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
