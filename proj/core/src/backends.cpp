#include "fhp/backends.hpp"

#include <algorithm>
#include <barrier>
#include <cstring>
#include <stdexcept>
#include <thread>

#include "fhp/step.hpp"

namespace fhp {

LanePlan make_lane_plan(int lanes) {
  if (lanes != 16 && lanes != 32 && lanes != 64) {
    throw std::invalid_argument("lane width must be 16, 32 or 64");
  }
  return {lanes};
}

StripPlan make_strip_plan(int height, int n) {
  const int interior = height - 2;
  if (n < 1) throw std::invalid_argument("strip count must be >= 1");
  if (n > interior) {
    throw std::invalid_argument("strip count exceeds interior row count");
  }
  StripPlan plan;
  const int base = interior / n;
  const int extra = interior % n;
  int row = 1;
  for (int i = 0; i < n; ++i) {
    const int rows = base + (i < extra ? 1 : 0);
    plan.rows.emplace_back(row, row + rows);
    row += rows;
  }
  return plan;
}

TilePlan make_tile_plan(int width, int height, int tile_x, int tile_y) {
  if (tile_x < 1 || tile_y < 1) {
    throw std::invalid_argument("tile dimensions must be >= 1");
  }
  TilePlan plan;
  plan.tile_x = tile_x;
  plan.tile_y = tile_y;
  for (int r0 = 1; r0 < height - 1; r0 += tile_y) {
    const int r1 = std::min(r0 + tile_y, height - 1);
    for (int x0 = 1; x0 < width + 1; x0 += tile_x) {
      const int x1 = std::min(x0 + tile_x, width + 1);
      plan.tiles.push_back({x0, x1, r0, r1});
    }
  }
  return plan;
}

namespace {

// Column offset of the pull source for moving bit k at a destination row
// of parity q. The source row offset pairs with it below.
struct PullOffset {
  int dx;
  int dr;
};

constexpr PullOffset pull_offset(int k, int q) noexcept {
  switch (k) {
    case 0: return {q, 1};       // NW bit arrives from SE neighbor
    case 1: return {q - 1, 1};   // NE from SW
    case 2: return {-1, 0};      // E from W
    case 3: return {q - 1, -1};  // SE from NW
    case 4: return {q, -1};      // SW from NE
    default: return {1, 0};      // W from E
  }
}

inline std::uint64_t broadcast_byte(std::uint8_t b) noexcept {
  return 0x0101010101010101ull * b;
}

// Pull-motion for lane_width consecutive destination nodes starting at
// column x0 of row r, done word-at-a-time on 64-bit chunks.
inline void motion_lane_chunk(const Lattice& lat, NodeState* dst, int x0,
                              int r, int lane_width) {
  const NodeState* src = lat.src();
  const std::uint8_t* mask = lat.obstacle_mask();
  const int H = lat.height();
  const int q = r & 1;
  const int words = lane_width / 8;

  std::uint64_t acc[8];  // lane_width <= 64
  std::uint64_t tmp[8];

  // Rest bits stay put.
  std::memcpy(acc, src + lat.index(r, x0), static_cast<std::size_t>(lane_width));
  const std::uint64_t rest = broadcast_byte(kRestBit);
  for (int w = 0; w < words; ++w) acc[w] &= rest;

  for (int k = 0; k < 6; ++k) {
    const PullOffset o = pull_offset(k, q);
    const int sr = r + o.dr;
    if (sr < 0 || sr >= H) continue;
    std::memcpy(tmp, src + lat.index(sr, x0 + o.dx),
                static_cast<std::size_t>(lane_width));
    const std::uint64_t kmask = broadcast_byte(static_cast<std::uint8_t>(1u << k));
    for (int w = 0; w < words; ++w) acc[w] |= tmp[w] & kmask;
  }

  // Obstacle mask bytes are 0 or 1; shift them into bit 7.
  std::memcpy(tmp, mask + lat.index(r, x0), static_cast<std::size_t>(lane_width));
  for (int w = 0; w < words; ++w) acc[w] |= tmp[w] << 7;

  std::memcpy(dst + lat.index(r, x0), acc, static_cast<std::size_t>(lane_width));
}

}  // namespace

void motion_step_lanes(Lattice& lat, const LanePlan& plan) {
  NodeState* dst = lat.dst();
  const int W = lat.width();
  const int L = plan.lane_width;
  for (int r = 0; r < lat.height(); ++r) {
    int x = 1;
    for (; x + L <= W + 1; x += L) motion_lane_chunk(lat, dst, x, r, L);
    for (; x <= W; ++x) dst[lat.index(r, x)] = motion_gather(lat, x, r);
  }
}

std::uint64_t step_lanes(Lattice& lat, const CollisionTable& table,
                         const SimConfig& cfg, int step_index,
                         const LanePlan& plan) {
  sync_ghost_columns(lat);
  motion_step_lanes(lat, plan);
  lat.swap_buffers();
  return collision_step(lat, table, step_index, cfg.force_p, cfg.seed);
}

namespace {

// Worker i covers its interior strip; the first and last also cover the
// wall rows so every row is written by exactly one worker.
std::pair<int, int> worker_rows(const StripPlan& plan, int i, int height) {
  auto [r0, r1] = plan.rows[i];
  if (i == 0) r0 = 0;
  if (i == static_cast<int>(plan.rows.size()) - 1) r1 = height;
  return {r0, r1};
}

}  // namespace

std::uint64_t run_strips(Lattice& lat, const CollisionTable& table,
                         const SimConfig& cfg, int first_step, int step_count,
                         const StripPlan& plan) {
  const int n = static_cast<int>(plan.rows.size());
  if (n == 0) throw std::invalid_argument("empty strip plan");
  for (const auto& [r0, r1] : plan.rows) {
    if (r1 <= r0) throw std::invalid_argument("empty strip in plan");
  }
  if (step_count <= 0) return 0;

  if (cfg.sequential_fallback || n == 1) {
    std::uint64_t swaps = 0;
    for (int step = first_step; step < first_step + step_count; ++step) {
      sync_ghost_columns(lat);
      for (int i = 0; i < n; ++i) {
        const auto [r0, r1] = worker_rows(plan, i, lat.height());
        NodeState* dst = lat.dst();
        for (int r = r0; r < r1; ++r) {
          for (int x = 1; x <= lat.width(); ++x) {
            dst[lat.index(r, x)] = motion_gather(lat, x, r);
          }
        }
      }
      lat.swap_buffers();
      for (int i = 0; i < n; ++i) {
        const auto [r0, r1] = worker_rows(plan, i, lat.height());
        swaps += collide_rows(lat, table, step, cfg.force_p, cfg.seed, r0, r1);
      }
    }
    return swaps;
  }

  // Workers stay alive for the whole run; two barriers per step. The phase
  // barrier's completion swaps the buffers, the end-of-step barrier's
  // completion re-syncs the ghost columns for the next motion pass.
  sync_ghost_columns(lat);
  const int last_step = first_step + step_count;
  int current = first_step;
  std::barrier phase(n, [&lat]() noexcept { lat.swap_buffers(); });
  std::barrier step_end(n, [&]() noexcept {
    if (++current < last_step) sync_ghost_columns(lat);
  });

  std::vector<std::uint64_t> swaps(n, 0);
  std::vector<std::thread> workers;
  workers.reserve(n);
  for (int i = 0; i < n; ++i) {
    workers.emplace_back([&, i] {
      const auto [r0, r1] = worker_rows(plan, i, lat.height());
      std::uint64_t local = 0;
      for (int step = first_step; step < last_step; ++step) {
        NodeState* dst = lat.dst();
        for (int r = r0; r < r1; ++r) {
          for (int x = 1; x <= lat.width(); ++x) {
            dst[lat.index(r, x)] = motion_gather(lat, x, r);
          }
        }
        phase.arrive_and_wait();
        local += collide_rows(lat, table, step, cfg.force_p, cfg.seed, r0, r1);
        step_end.arrive_and_wait();
      }
      swaps[i] = local;
    });
  }
  std::uint64_t total = 0;
  for (int i = 0; i < n; ++i) {
    workers[i].join();
    total += swaps[i];
  }
  return total;
}

std::uint64_t step_strips(Lattice& lat, const CollisionTable& table,
                          const SimConfig& cfg, int step_index,
                          const StripPlan& plan) {
  return run_strips(lat, table, cfg, step_index, 1, plan);
}

namespace {

// Push-propagation for one tile. Region A (read) is B grown by one node,
// clipped to the grid including ghost columns; the scratch C is A grown by
// one more to catch particles leaving A. Only B is stored back.
void tile_motion(const Lattice& lat, NodeState* global_dst,
                 const TilePlan::Tile& tile, std::vector<NodeState>& scratch) {
  const NodeState* src = lat.src();
  const int W = lat.width();
  const int H = lat.height();

  const int ax0 = std::max(tile.x0 - 1, 0);
  const int ax1 = std::min(tile.x1 + 1, W + 2);
  const int ar0 = std::max(tile.r0 - 1, 0);
  const int ar1 = std::min(tile.r1 + 1, H);

  const int cw = (ax1 - ax0) + 2;
  const int ch = (ar1 - ar0) + 2;
  scratch.assign(static_cast<std::size_t>(cw) * ch, 0);
  // Scratch coordinates: global (x, r) -> (x - ax0 + 1, r - ar0 + 1).
  auto scr = [&](int r, int x) -> NodeState& {
    return scratch[static_cast<std::size_t>(r - ar0 + 1) * cw + (x - ax0 + 1)];
  };

  for (int r = ar0; r < ar1; ++r) {
    for (int x = ax0; x < ax1; ++x) {
      const NodeState s = src[lat.index(r, x)];
      scr(r, x) |= s & kRestBit;
      const std::uint8_t moving = s & kMovingMask;
      if (!moving) continue;
      for (int k = 0; k < 6; ++k) {
        if (moving & (1u << k)) {
          const Coord c = neighbor_of(x, r, Direction{k});
          scr(c.r, c.x) |= static_cast<NodeState>(1u << k);
        }
      }
    }
  }

  for (int r = tile.r0; r < tile.r1; ++r) {
    for (int x = tile.x0; x < tile.x1; ++x) {
      NodeState v = scr(r, x) & 0x7F;
      if (lat.obstacle(r, x)) v |= kObstacleBit;
      global_dst[lat.index(r, x)] = v;
    }
  }
}

}  // namespace

std::uint64_t step_tiles(Lattice& lat, const CollisionTable& table,
                         const SimConfig& cfg, int step_index,
                         const TilePlan& plan) {
  sync_ghost_columns(lat);
  NodeState* dst = lat.dst();

  const int nthreads =
      cfg.sequential_fallback ? 1 : std::max(1, std::min(cfg.threads, static_cast<int>(plan.tiles.size())));
  if (nthreads == 1) {
    std::vector<NodeState> scratch;
    for (const auto& tile : plan.tiles) tile_motion(lat, dst, tile, scratch);
  } else {
    // B regions are disjoint, so tiles may run in any order concurrently.
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
      workers.emplace_back([&, t] {
        std::vector<NodeState> scratch;
        for (std::size_t i = t; i < plan.tiles.size(); i += nthreads) {
          tile_motion(lat, dst, plan.tiles[i], scratch);
        }
      });
    }
    for (auto& w : workers) w.join();
  }

  // Wall rows are outside every write region; gather them scalar.
  for (int x = 1; x <= lat.width(); ++x) {
    dst[lat.index(0, x)] = motion_gather(lat, x, 0);
    dst[lat.index(lat.height() - 1, x)] = motion_gather(lat, x, lat.height() - 1);
  }

  lat.swap_buffers();
  return collision_step(lat, table, step_index, cfg.force_p, cfg.seed);
}

TileCoverage tile_coverage(const TilePlan& plan, int width, int height) {
  TileCoverage cov;
  const std::size_t n = static_cast<std::size_t>(height) * (width + 2);
  cov.writes.assign(n, 0);
  cov.reads.assign(n, 0);
  auto idx = [&](int r, int x) {
    return static_cast<std::size_t>(r) * (width + 2) + x;
  };
  for (const auto& tile : plan.tiles) {
    for (int r = tile.r0; r < tile.r1; ++r) {
      for (int x = tile.x0; x < tile.x1; ++x) ++cov.writes[idx(r, x)];
    }
    const int ax0 = std::max(tile.x0 - 1, 0);
    const int ax1 = std::min(tile.x1 + 1, width + 2);
    const int ar0 = std::max(tile.r0 - 1, 0);
    const int ar1 = std::min(tile.r1 + 1, height);
    for (int r = ar0; r < ar1; ++r) {
      for (int x = ax0; x < ax1; ++x) ++cov.reads[idx(r, x)];
    }
  }
  return cov;
}

}  // namespace fhp
