#include "fhp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "fhp/backends.hpp"
#include "fhp/lattice.hpp"
#include "fhp/step.hpp"

#include <json.hpp>

namespace fhp {

double compute_mups(int width, int height, int steps, double wall_seconds) {
  if (wall_seconds <= 0.0) {
    throw std::invalid_argument("wall_seconds must be positive");
  }
  return static_cast<double>(width) * height * steps / (wall_seconds * 1e6);
}

namespace {

double steady_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

BenchRecord make_record(const SimConfig& cfg, double wall_seconds,
                        std::uint64_t digest) {
  BenchRecord rec;
  rec.backend = backend_name(cfg.backend);
  rec.threads = cfg.threads;
  rec.lanes = cfg.backend == Backend::Lanes ? cfg.lanes : 0;
  rec.tile_x = cfg.backend == Backend::Tiles ? cfg.tile_x : 0;
  rec.tile_y = cfg.backend == Backend::Tiles ? cfg.tile_y : 0;
  rec.width = cfg.width;
  rec.height = cfg.height;
  rec.steps = cfg.steps;
  rec.warmup_steps = cfg.warmup_steps;
  rec.wall_seconds = wall_seconds;
  rec.mups = compute_mups(cfg.width, cfg.height, cfg.steps, wall_seconds);
  rec.state_digest = digest;
  return rec;
}

}  // namespace

BenchResult run_bench(const SimConfig& cfg, int repeats, ClockFn clock) {
  cfg.validate();
  if (cfg.steps < 1) throw std::invalid_argument("bench needs steps >= 1");
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  if (!clock) clock = steady_seconds;

  const CollisionTable table =
      cfg.table_file.empty() ? build_table()
                             : load_table(read_table_file(cfg.table_file));

  BenchResult result;
  for (int rep = 0; rep < repeats; ++rep) {
    Lattice lat = cfg.geometry_file.empty()
                      ? init_lattice(cfg)
                      : init_lattice(cfg, read_geometry_file(cfg.geometry_file));
    advance(lat, table, cfg, 0, cfg.warmup_steps);
    const double t0 = clock();
    advance(lat, table, cfg, cfg.warmup_steps, cfg.steps);
    const double t1 = clock();
    result.repeats.push_back(make_record(cfg, t1 - t0, state_digest(lat)));
  }

  for (const auto& rec : result.repeats) {
    if (rec.state_digest != result.repeats.front().state_digest) {
      throw std::runtime_error("bench repeats produced diverging digests");
    }
  }

  std::vector<double> times;
  for (const auto& rec : result.repeats) times.push_back(rec.wall_seconds);
  std::sort(times.begin(), times.end());
  const double median_time = times[times.size() / 2];
  result.median = make_record(cfg, median_time, result.repeats.front().state_digest);
  return result;
}

std::string to_json_line(const BenchRecord& rec) {
  nlohmann::json j{
      {"backend", rec.backend},
      {"threads", rec.threads},
      {"lanes", rec.lanes},
      {"tile_x", rec.tile_x},
      {"tile_y", rec.tile_y},
      {"width", rec.width},
      {"height", rec.height},
      {"steps", rec.steps},
      {"warmup_steps", rec.warmup_steps},
      {"wall_seconds", rec.wall_seconds},
      {"mups", rec.mups},
      {"state_digest", rec.state_digest},
  };
  return j.dump();
}

std::string ascii_table(const std::vector<BenchRecord>& recs) {
  std::ostringstream os;
  os << std::left << std::setw(8) << "backend" << std::right << std::setw(8)
     << "threads" << std::setw(7) << "lanes" << std::setw(6) << "tile"
     << std::setw(10) << "WxH" << std::setw(7) << "steps" << std::setw(12)
     << "seconds" << std::setw(10) << "Mups" << '\n';
  for (const auto& r : recs) {
    std::ostringstream dims, tile;
    dims << r.width << 'x' << r.height;
    if (r.tile_x > 0) tile << r.tile_x << 'x' << r.tile_y;
    os << std::left << std::setw(8) << r.backend << std::right << std::setw(8)
       << r.threads << std::setw(7) << r.lanes << std::setw(6) << tile.str()
       << std::setw(10) << dims.str() << std::setw(7) << r.steps
       << std::setw(12) << std::fixed << std::setprecision(4) << r.wall_seconds
       << std::setw(10) << std::setprecision(1) << r.mups << '\n';
  }
  return os.str();
}

}  // namespace fhp
