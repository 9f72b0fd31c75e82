// Serial reference vs OpenMP path for the data-parallel kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "oracles.hpp"
#include "persistlab/grid_module.hpp"
#include "persistlab/kernels.hpp"

using namespace persistlab;

namespace {

std::vector<double> random_coords(std::size_t r, std::size_t d) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> x(r * d);
    for (auto& v : x) v = u(rng);
    return x;
}

Execution mode(const benchmark::State& state) { return state.range(1) ? Execution::parallel : Execution::serial; }

void pairwise_distances(benchmark::State& state) {
    const auto r = static_cast<std::size_t>(state.range(0));
    const auto x = random_coords(r, 3);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::pairwise_distances(x, 3, mode(state)));
    state.SetLabel(state.range(1) ? "parallel" : "serial");
}

void simplex_diameters(benchmark::State& state) {
    const auto r = static_cast<std::size_t>(state.range(0));
    const auto x = random_coords(r, 2);
    const auto d = kernels::pairwise_distances(x, 2, Execution::serial);
    const auto k = SimplicialComplex::full(r, 2);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::simplex_diameters(k.simplices(), d, r, mode(state)));
    state.SetLabel(state.range(1) ? "parallel" : "serial");
}

void hom_spaces(benchmark::State& state) {
    const auto s = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(3);
    const Grid g({s, s});
    const auto m = oracle::random_presented_module(g, rng, 6, 8);
    const auto hooks = enumerate_hooks(g);
    for (auto _ : state) benchmark::DoNotOptimize(persistlab::hom_spaces(hooks, m, mode(state)));
    state.SetLabel(state.range(1) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(pairwise_distances)->ArgsProduct({{500, 2000}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(simplex_diameters)->ArgsProduct({{60, 120}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(hom_spaces)->ArgsProduct({{6, 10}, {0, 1}})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
