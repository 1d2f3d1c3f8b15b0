#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fhp/collision.hpp"
#include "fhp/config.hpp"
#include "fhp/lattice.hpp"

namespace fhp {

// Scalar reference semantics of one FHP time step:
// ghost sync -> motion (pull) -> buffer swap -> collision + forcing.
// Every parallel backend is verified against this module.

// Pull one destination node from the source buffer: moving bit k comes
// from neighbor_of(x, r, opposite(k)), the rest bit stays, bit 7 comes
// from the obstacle mask. Out-of-grid rows contribute nothing.
NodeState motion_gather(const Lattice& lat, int x, int r) noexcept;

// Rewrites every interior destination node from the source buffer.
// Ghost columns of the destination are left untouched.
void motion_step(Lattice& lat);

// Collision + forcing over rows [row_begin, row_end), interior columns.
// Chirality and forcing decisions come from the counter RNG keyed by the
// node's global coordinates. Returns the number of accepted forcing swaps.
std::uint64_t collide_rows(Lattice& lat, const CollisionTable& table,
                           int step_index, double force_p, std::uint64_t seed,
                           int row_begin, int row_end);

inline std::uint64_t collision_step(Lattice& lat, const CollisionTable& table,
                                    int step_index, double force_p,
                                    std::uint64_t seed) {
  return collide_rows(lat, table, step_index, force_p, seed, 0, lat.height());
}

// One full scalar step; returns the accepted forcing-swap count.
std::uint64_t full_step(Lattice& lat, const CollisionTable& table,
                        const SimConfig& cfg, int step_index);

// Advances step_count steps on the configured backend, building the
// backend plan from cfg. Strip runs keep their workers alive for the whole
// chunk. Returns the accepted forcing-swap count.
std::uint64_t advance(Lattice& lat, const CollisionTable& table,
                      const SimConfig& cfg, int first_step, int step_count);

struct ObservableSample {
  int step = 0;
  std::int64_t mass = 0;
  MomentumVec momentum{};
};

struct RunResult {
  Lattice lattice;
  std::vector<ObservableSample> series;
  std::uint64_t forcing_swaps = 0;
};

// Called after sampled steps (dump_every > 0) and once on the final state.
using DumpFn = std::function<void(int step, const Lattice&)>;

RunResult run(const SimConfig& cfg, const CollisionTable& table,
              const DumpFn& dump = {});

// Builds the DEFAULT table, or loads cfg.table_file when set.
RunResult run(const SimConfig& cfg);

}  // namespace fhp
