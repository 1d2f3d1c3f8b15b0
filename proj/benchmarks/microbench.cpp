// Microbenchmarks for the step kernels. Reports Mups (million lattice
// site updates per second) as a user counter; for the paper-style
// throughput table use `fhp bench --all-backends --table`.

#include <benchmark/benchmark.h>

#include "fhp/backends.hpp"
#include "fhp/step.hpp"

namespace {

fhp::SimConfig bench_config(int width, int height) {
  fhp::SimConfig cfg;
  cfg.width = width;
  cfg.height = height;
  cfg.fill_density = 0.3;
  cfg.force_p = 0.01;
  cfg.seed = 7;
  return cfg;
}

void set_mups(benchmark::State& state, const fhp::SimConfig& cfg) {
  state.counters["Mups"] = benchmark::Counter(
      static_cast<double>(cfg.width) * cfg.height * state.iterations() / 1e6,
      benchmark::Counter::kIsRate);
}

void BM_ScalarStep(benchmark::State& state) {
  auto cfg = bench_config(static_cast<int>(state.range(0)),
                          static_cast<int>(state.range(1)));
  const auto table = fhp::build_table();
  auto lat = fhp::init_lattice(cfg);
  int step = 0;
  for (auto _ : state) {
    fhp::full_step(lat, table, cfg, step++);
  }
  set_mups(state, cfg);
}
BENCHMARK(BM_ScalarStep)->Args({256, 130})->Args({1024, 514});

void BM_LaneStep(benchmark::State& state) {
  auto cfg = bench_config(static_cast<int>(state.range(0)),
                          static_cast<int>(state.range(1)));
  cfg.lanes = static_cast<int>(state.range(2));
  const auto table = fhp::build_table();
  const auto plan = fhp::make_lane_plan(cfg.lanes);
  auto lat = fhp::init_lattice(cfg);
  int step = 0;
  for (auto _ : state) {
    fhp::step_lanes(lat, table, cfg, step++, plan);
  }
  set_mups(state, cfg);
}
BENCHMARK(BM_LaneStep)
    ->Args({1024, 514, 16})
    ->Args({1024, 514, 32})
    ->Args({1024, 514, 64});

void BM_StripStep(benchmark::State& state) {
  auto cfg = bench_config(1024, 514);
  cfg.threads = static_cast<int>(state.range(0));
  const auto table = fhp::build_table();
  const auto plan = fhp::make_strip_plan(cfg.height, cfg.threads);
  auto lat = fhp::init_lattice(cfg);
  int step = 0;
  for (auto _ : state) {
    fhp::step_strips(lat, table, cfg, step++, plan);
  }
  set_mups(state, cfg);
}
BENCHMARK(BM_StripStep)->Arg(1)->Arg(2)->Arg(4);

void BM_TileStep(benchmark::State& state) {
  auto cfg = bench_config(1024, 514);
  cfg.tile_x = static_cast<int>(state.range(0));
  cfg.tile_y = static_cast<int>(state.range(1));
  const auto table = fhp::build_table();
  const auto plan =
      fhp::make_tile_plan(cfg.width, cfg.height, cfg.tile_x, cfg.tile_y);
  auto lat = fhp::init_lattice(cfg);
  int step = 0;
  for (auto _ : state) {
    fhp::step_tiles(lat, table, cfg, step++, plan);
  }
  set_mups(state, cfg);
}
BENCHMARK(BM_TileStep)->Args({16, 8})->Args({32, 32});

}  // namespace

BENCHMARK_MAIN();
