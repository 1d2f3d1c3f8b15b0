#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fhp/config.hpp"

namespace fhp {

struct BenchRecord {
  std::string backend;
  int threads = 1;
  int lanes = 0;
  int tile_x = 0;
  int tile_y = 0;
  int width = 0;
  int height = 0;
  int steps = 0;
  int warmup_steps = 0;
  double wall_seconds = 0.0;
  double mups = 0.0;  // W*H*steps / (wall_seconds * 1e6)
  std::uint64_t state_digest = 0;
};

// Throws std::invalid_argument on nonpositive wall_seconds.
double compute_mups(int width, int height, int steps, double wall_seconds);

// Monotonic time in seconds; injectable for testing.
using ClockFn = std::function<double()>;

struct BenchResult {
  std::vector<BenchRecord> repeats;
  BenchRecord median;  // median wall time / mups; digests are identical
};

// Runs cfg.warmup_steps untimed, then times cfg.steps, once per repeat.
// Each repeat restarts from the same initial state, so digests double as
// a correctness check and must agree across repeats.
BenchResult run_bench(const SimConfig& cfg, int repeats, ClockFn clock = {});

std::string to_json_line(const BenchRecord& rec);
std::string ascii_table(const std::vector<BenchRecord>& recs);

}  // namespace fhp
