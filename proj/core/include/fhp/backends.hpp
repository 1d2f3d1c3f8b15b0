#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fhp/collision.hpp"
#include "fhp/config.hpp"
#include "fhp/lattice.hpp"

namespace fhp {

// Three parallel step implementations, each bit-exact equal to the scalar
// engine: lane-parallel wide words, strip-threaded rows, overlapping tiles.

struct LanePlan {
  int lane_width = 32;  // 16, 32 or 64 nodes per wide word
};
LanePlan make_lane_plan(int lanes);  // throws on unsupported width

struct StripPlan {
  // Half-open row ranges over interior rows 1..H-2; disjoint, balanced,
  // covering. The first worker additionally handles wall row 0 and the
  // last one wall row H-1.
  std::vector<std::pair<int, int>> rows;
};
StripPlan make_strip_plan(int height, int n);  // throws if n > H-2

struct TilePlan {
  struct Tile {
    int x0, x1;  // write region B, half-open columns within 1..W+1
    int r0, r1;  // half-open rows within 1..H-1
  };
  int tile_x = 0;
  int tile_y = 0;
  std::vector<Tile> tiles;
};
TilePlan make_tile_plan(int width, int height, int tile_x, int tile_y);

// Motion via wide-word bitwise kernels over lane_width consecutive nodes;
// destination byte-identical to scalar motion_step. Trailing columns that
// do not fill a wide word are processed scalar.
void motion_step_lanes(Lattice& lat, const LanePlan& plan);

// Full step with one worker per strip: pull-motion over own rows, phase
// barrier (buffer swap), collision over own rows, join. Returns the
// accepted forcing-swap count.
std::uint64_t step_strips(Lattice& lat, const CollisionTable& table,
                          const SimConfig& cfg, int step_index,
                          const StripPlan& plan);

// Multi-step strip run keeping the workers alive across steps, with two
// full-rendezvous barriers per step (motion|collision and end-of-step).
std::uint64_t run_strips(Lattice& lat, const CollisionTable& table,
                         const SimConfig& cfg, int first_step, int step_count,
                         const StripPlan& plan);

// Full step via overlapping tiles: each tile loads its read region A into
// local scratch C, push-propagates inside the scratch, and stores only its
// write region B. Wall rows are gathered scalar. Tiles run concurrently
// when cfg.threads > 1 and the sequential fallback is off.
std::uint64_t step_tiles(Lattice& lat, const CollisionTable& table,
                         const SimConfig& cfg, int step_index,
                         const TilePlan& plan);

// Lanes variant of the full step.
std::uint64_t step_lanes(Lattice& lat, const CollisionTable& table,
                         const SimConfig& cfg, int step_index,
                         const LanePlan& plan);

// Per-node coverage of a tile plan over the interior: how many tiles write
// and how many tiles read each node.
struct TileCoverage {
  std::vector<int> writes;  // H x (W+2), interior cells meaningful
  std::vector<int> reads;
};
TileCoverage tile_coverage(const TilePlan& plan, int width, int height);

}  // namespace fhp
