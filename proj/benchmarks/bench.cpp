#include <benchmark/benchmark.h>

#include "sirw/graph.hpp"
#include "sirw/rng.hpp"
#include "sirw/timelines.hpp"
#include "sirw/walk.hpp"
#include "sirw/weights.hpp"

namespace {

void BM_rng_uniform(benchmark::State& state) {
  sirw::Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(rng.uniform());
}
BENCHMARK(BM_rng_uniform);

void BM_walk_step_vertex(benchmark::State& state) {
  sirw::Graph g = sirw::Graph::line();
  sirw::WeightFunction w = sirw::WeightFunction::power(0, 1);
  sirw::Walker walker(g, w, sirw::Mode::vertex, 0, 7);
  for (auto _ : state) walker.step();
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_walk_step_vertex);

void BM_walk_step_edge_cycle(benchmark::State& state) {
  sirw::Graph g = sirw::Graph::cycle(6);
  sirw::WeightFunction w = sirw::WeightFunction::power(0, 1);
  sirw::Walker walker(g, w, sirw::Mode::edge, 0, 7);
  for (auto _ : state) walker.step();
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_walk_step_edge_cycle);

void BM_timeline_events(benchmark::State& state) {
  sirw::Graph g = sirw::Graph::line();
  sirw::WeightFunction w = sirw::WeightFunction::power(0, 1);
  std::uint64_t key = 1;
  for (auto _ : state) {
    sirw::AlarmCollection alarms(key++);
    benchmark::DoNotOptimize(
        sirw::simulate_vsirw_directed_timelines(g, w, 0, 1000, alarms));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_timeline_events);

}  // namespace

BENCHMARK_MAIN();
