#pragma once

#include <cstdint>
#include <string>

namespace fhp {

enum class Backend { Scalar, Lanes, Strips, Tiles };

const char* backend_name(Backend b) noexcept;

struct SimConfig {
  int width = 64;    // interior columns W
  int height = 34;   // rows H, including the two wall rows
  int steps = 100;
  double fill_density = 0.3;
  double force_p = 0.0;
  std::uint64_t seed = 1;
  Backend backend = Backend::Scalar;
  int threads = 1;
  int lanes = 32;       // 16, 32 or 64
  int tile_x = 16;
  int tile_y = 8;
  int dump_every = 0;   // 0: final state only
  std::string out_prefix;
  std::string geometry_file;
  std::string table_file;
  int repeats = 3;
  int warmup_steps = 10;
  // Run strip/tile plans serially on the calling thread (debugging aid).
  bool sequential_fallback = false;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace fhp
