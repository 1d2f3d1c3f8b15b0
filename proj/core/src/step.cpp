#include "fhp/step.hpp"

#include <algorithm>
#include <stdexcept>

#include "fhp/backends.hpp"
#include "fhp/observables.hpp"
#include "fhp/rng.hpp"

namespace fhp {

const char* backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Lanes: return "lanes";
    case Backend::Strips: return "strips";
    case Backend::Tiles: return "tiles";
  }
  return "?";
}

void SimConfig::validate() const {
  if (width < 1) throw std::invalid_argument("width must be >= 1");
  if (height < 3) throw std::invalid_argument("height must be >= 3");
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (fill_density < 0.0 || fill_density > 1.0)
    throw std::invalid_argument("density must be in [0,1]");
  if (force_p < 0.0 || force_p > 1.0)
    throw std::invalid_argument("force-p must be in [0,1]");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (lanes != 16 && lanes != 32 && lanes != 64)
    throw std::invalid_argument("lanes must be 16, 32 or 64");
  if (tile_x < 1 || tile_y < 1)
    throw std::invalid_argument("tile dimensions must be >= 1");
  if (dump_every < 0) throw std::invalid_argument("dump-every must be >= 0");
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  if (warmup_steps < 0) throw std::invalid_argument("warmup must be >= 0");
}

NodeState motion_gather(const Lattice& lat, int x, int r) noexcept {
  const NodeState* src = lat.src();
  const int H = lat.height();
  NodeState v = src[lat.index(r, x)] & kRestBit;
  // Source of moving bit k is neighbor_of(x, r, opposite(k)).
  for (int k = 0; k < 6; ++k) {
    const Coord c = neighbor_of(x, r, opposite(Direction{k}));
    if (c.r < 0 || c.r >= H) continue;
    v |= src[lat.index(c.r, c.x)] & static_cast<NodeState>(1u << k);
  }
  if (lat.obstacle(r, x)) v |= kObstacleBit;
  return v;
}

void motion_step(Lattice& lat) {
  NodeState* dst = lat.dst();
  for (int r = 0; r < lat.height(); ++r) {
    for (int x = 1; x <= lat.width(); ++x) {
      dst[lat.index(r, x)] = motion_gather(lat, x, r);
    }
  }
}

std::uint64_t collide_rows(Lattice& lat, const CollisionTable& table,
                           int step_index, double force_p, std::uint64_t seed,
                           int row_begin, int row_end) {
  NodeState* buf = lat.src();
  const auto step = static_cast<std::uint64_t>(step_index);
  std::uint64_t swaps = 0;
  for (int r = row_begin; r < row_end; ++r) {
    for (int x = 1; x <= lat.width(); ++x) {
      const std::size_t i = lat.index(r, x);
      const NodeState s = buf[i];
      const int chirality = static_cast<int>(
          rng::node_random(seed, rng::Purpose::Chirality, step,
                           static_cast<std::uint64_t>(x),
                           static_cast<std::uint64_t>(r)) & 1u);
      NodeState out = table.apply(s, chirality);
      // Forcing: reverse a W mover into an E mover with probability p.
      if (!(out & kObstacleBit) && (out & 0x20) && !(out & 0x04)) {
        const std::uint64_t w =
            rng::node_random(seed, rng::Purpose::Forcing, step,
                             static_cast<std::uint64_t>(x),
                             static_cast<std::uint64_t>(r));
        if (rng::bernoulli(w, force_p)) {
          out = static_cast<NodeState>((out & ~0x20) | 0x04);
          ++swaps;
        }
      }
      buf[i] = out;
    }
  }
  return swaps;
}

std::uint64_t full_step(Lattice& lat, const CollisionTable& table,
                        const SimConfig& cfg, int step_index) {
  sync_ghost_columns(lat);
  motion_step(lat);
  lat.swap_buffers();
  return collision_step(lat, table, step_index, cfg.force_p, cfg.seed);
}

std::uint64_t advance(Lattice& lat, const CollisionTable& table,
                      const SimConfig& cfg, int first_step, int step_count) {
  std::uint64_t swaps = 0;
  switch (cfg.backend) {
    case Backend::Scalar:
      for (int s = first_step; s < first_step + step_count; ++s) {
        swaps += full_step(lat, table, cfg, s);
      }
      break;
    case Backend::Lanes: {
      const LanePlan plan = make_lane_plan(cfg.lanes);
      for (int s = first_step; s < first_step + step_count; ++s) {
        swaps += step_lanes(lat, table, cfg, s, plan);
      }
      break;
    }
    case Backend::Strips:
      swaps = run_strips(lat, table, cfg, first_step, step_count,
                         make_strip_plan(cfg.height, cfg.threads));
      break;
    case Backend::Tiles: {
      const TilePlan plan =
          make_tile_plan(cfg.width, cfg.height, cfg.tile_x, cfg.tile_y);
      for (int s = first_step; s < first_step + step_count; ++s) {
        swaps += step_tiles(lat, table, cfg, s, plan);
      }
      break;
    }
  }
  return swaps;
}

RunResult run(const SimConfig& cfg, const CollisionTable& table,
              const DumpFn& dump) {
  cfg.validate();

  Lattice lat = cfg.geometry_file.empty()
                    ? init_lattice(cfg)
                    : init_lattice(cfg, read_geometry_file(cfg.geometry_file));

  RunResult result{std::move(lat), {}, 0};
  auto sample = [&](int step) {
    result.series.push_back(
        {step, total_mass(result.lattice), total_momentum(result.lattice)});
  };
  sample(0);

  const int chunk = cfg.dump_every > 0 ? cfg.dump_every : cfg.steps;
  int step = 0;
  int last_dumped = -1;
  while (step < cfg.steps) {
    const int count = std::min(chunk, cfg.steps - step);
    result.forcing_swaps += advance(result.lattice, table, cfg, step, count);
    step += count;
    if (cfg.dump_every > 0 && step % cfg.dump_every == 0) {
      sample(step);
      if (dump) dump(step, result.lattice);
      last_dumped = step;
    }
  }
  if (last_dumped != cfg.steps) {
    if (cfg.steps > 0) sample(cfg.steps);
    if (dump) dump(cfg.steps, result.lattice);
  }
  return result;
}

RunResult run(const SimConfig& cfg) {
  const CollisionTable table =
      cfg.table_file.empty() ? build_table()
                             : load_table(read_table_file(cfg.table_file));
  return run(cfg, table);
}

}  // namespace fhp
