#include <benchmark/benchmark.h>

#include "v2im/coloring.hpp"
#include "v2im/experiments.hpp"
#include "v2im/puzzles.hpp"

using namespace v2im;

namespace {

const ising_embedding& sudoku_embedding() {
  static const ising_embedding emb = build_coloring_ising(sudoku_graph(3), 9);
  return emb;
}

void BM_EomRhsSudoku(benchmark::State& st) {
  const auto& emb = sudoku_embedding();
  rng gen(1);
  auto state = emb.pinned_state();
  randomize(state, gen);
  for (auto _ : st) benchmark::DoNotOptimize(eom_rhs(emb.graph, state));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(emb.graph.edge_count()));
}
BENCHMARK(BM_EomRhsSudoku);

void BM_EulerStepSudoku(benchmark::State& st) {
  const auto& emb = sudoku_embedding();
  rng gen(2);
  auto state = emb.pinned_state();
  randomize(state, gen);
  solver_params p;
  for (auto _ : st) benchmark::DoNotOptimize(euler_step(emb.graph, state, p));
}
BENCHMARK(BM_EulerStepSudoku);

void BM_BruteForce(benchmark::State& st) {
  rng gen(3);
  auto g = random_weighted_graph(static_cast<std::size_t>(st.range(0)), 0.5, gen);
  for (auto _ : st) benchmark::DoNotOptimize(brute_force_maxcut(g).cut);
}
BENCHMARK(BM_BruteForce)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_EvolveRandomGraph(benchmark::State& st) {
  rng gen(4);
  const auto n = static_cast<std::size_t>(st.range(0));
  auto g = random_weighted_graph(n, 0.5, gen);
  solver_params p;
  p.max_steps = 5000;
  p.stall_window = 0;
  for (auto _ : st) {
    rng init(5);
    benchmark::DoNotOptimize(evolve(g, random_state(n, init), p).cut);
  }
}
BENCHMARK(BM_EvolveRandomGraph)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
