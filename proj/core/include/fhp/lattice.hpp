#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fhp/config.hpp"
#include "fhp/node_state.hpp"

namespace fhp {

struct Coord {
  int x = 0;  // column, 0..W+1 (0 and W+1 are ghost columns)
  int r = 0;  // row, 0..H-1, growing southward
  friend constexpr bool operator==(Coord a, Coord b) noexcept = default;
};

// Hexagonal neighborhood on the parity-offset rectangular grid.
// Odd rows are shifted +1/2 in x; rows with smaller index lie north.
constexpr Coord neighbor_of(int x, int r, Direction d) noexcept {
  const int q = r & 1;
  switch (d) {
    case Direction::E:  return {x + 1, r};
    case Direction::W:  return {x - 1, r};
    case Direction::NE: return {x + q, r - 1};
    case Direction::NW: return {x - 1 + q, r - 1};
    case Direction::SE: return {x + q, r + 1};
    case Direction::SW: return {x - 1 + q, r + 1};
  }
  return {x, r};
}

// Double-buffered node storage, H rows by W+2 columns. Columns 0 and W+1
// mirror the opposite edge (periodic boundary); rows 0 and H-1 are walls
// unless a geometry overrides interior cells too.
class Lattice {
 public:
  Lattice(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int stride() const noexcept { return width_ + 2; }

  std::size_t index(int r, int x) const noexcept {
    return static_cast<std::size_t>(r) * stride() + x;
  }

  NodeState* src() noexcept { return buf_[cur_].data(); }
  const NodeState* src() const noexcept { return buf_[cur_].data(); }
  NodeState* dst() noexcept { return buf_[cur_ ^ 1].data(); }

  NodeState node(int r, int x) const noexcept { return src()[index(r, x)]; }
  void set_node(int r, int x, NodeState s) noexcept { src()[index(r, x)] = s; }

  bool obstacle(int r, int x) const noexcept { return obstacle_[index(r, x)] != 0; }
  const std::uint8_t* obstacle_mask() const noexcept { return obstacle_.data(); }
  // Setup only; also sets bit 7 in both buffers and re-mirrors ghost mask.
  void set_obstacle(int r, int x, bool on);

  void swap_buffers() noexcept { cur_ ^= 1; }

 private:
  int width_;
  int height_;
  int cur_ = 0;
  std::vector<NodeState> buf_[2];
  std::vector<std::uint8_t> obstacle_;
};

// Copies column W into ghost column 0 and column 1 into ghost column W+1
// of the current source buffer.
void sync_ghost_columns(Lattice& lat);

// Walls on rows 0 and H-1; every interior fluid node gets each of bits 0-6
// independently with probability cfg.fill_density from the counter RNG.
Lattice init_lattice(const SimConfig& cfg);

// Same, with extra obstacles from geometry rows ('.' fluid, '#' obstacle).
// Rows 0 and H-1 become walls regardless of the geometry content.
Lattice init_lattice(const SimConfig& cfg, const std::vector<std::string>& geometry);

// Reads a geometry file; throws std::runtime_error on I/O or format errors.
std::vector<std::string> read_geometry_file(const std::string& path);

// FNV-1a over the interior nodes of the current source buffer, row-major.
std::uint64_t state_digest(const Lattice& lat);

}  // namespace fhp
