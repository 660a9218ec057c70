#include <benchmark/benchmark.h>

#include "fcb/basis.hpp"
#include "fcb/force.hpp"
#include "fcb/grid.hpp"

using namespace fcb;

namespace {

StructuralModel frame(int stories, int spans) {
    GridSpec s;
    s.stories = stories;
    s.spans = spans;
    s.pattern = PropertyPattern::weak_beams;
    return generate_grid(s);
}

Execution mode(const benchmark::State& state) {
    return state.range(1) ? Execution::parallel : Execution::serial;
}

void candidates(benchmark::State& state) {
    const auto model = frame(static_cast<int>(state.range(0)), 6);
    const auto graph = build_graph(model);
    const auto spec = AlgorithmSpec::make(2);
    for (auto _ : state) benchmark::DoNotOptimize(generate_candidates(graph, spec, nullptr, mode(state)));
}

void adjacency(benchmark::State& state) {
    const auto model = frame(static_cast<int>(state.range(0)), 6);
    const auto graph = build_graph(model);
    const auto c = incidence_matrix(generate_basis(graph, AlgorithmSpec::make(1)));
    for (auto _ : state) benchmark::DoNotOptimize(adjacency_matrix(c, mode(state)));
}

void flexibility(benchmark::State& state) {
    const auto model = frame(static_cast<int>(state.range(0)), 6);
    const auto graph = build_graph(model);
    const auto b1 = build_b1(model, graph, generate_basis(graph, AlgorithmSpec::make(1)));
    const auto fm = unassembled_flexibility(model);
    for (auto _ : state) benchmark::DoNotOptimize(assemble_g(b1, fm, mode(state)));
}

}  // namespace

BENCHMARK(candidates)->ArgsProduct({{4, 12, 24}, {0, 1}})->ArgNames({"stories", "parallel"});
BENCHMARK(adjacency)->ArgsProduct({{4, 12, 24}, {0, 1}})->ArgNames({"stories", "parallel"});
BENCHMARK(flexibility)->ArgsProduct({{4, 12, 24}, {0, 1}})->ArgNames({"stories", "parallel"});

BENCHMARK_MAIN();
