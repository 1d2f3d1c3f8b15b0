#include "fhp/lattice.hpp"

#include <fstream>
#include <stdexcept>

#include "fhp/rng.hpp"

namespace fhp {

Lattice::Lattice(int width, int height) : width_(width), height_(height) {
  if (width < 1) throw std::invalid_argument("lattice width must be >= 1");
  if (height < 3) throw std::invalid_argument("lattice height must be >= 3");
  const std::size_t n = static_cast<std::size_t>(height) * (width + 2);
  buf_[0].assign(n, 0);
  buf_[1].assign(n, 0);
  obstacle_.assign(n, 0);
}

void Lattice::set_obstacle(int r, int x, bool on) {
  const std::uint8_t v = on ? 1 : 0;
  obstacle_[index(r, x)] = v;
  // Keep the ghost mask mirroring the opposite edge.
  if (x == 1) obstacle_[index(r, width_ + 1)] = v;
  if (x == width_) obstacle_[index(r, 0)] = v;
  for (auto& buf : buf_) {
    NodeState& s = buf[index(r, x)];
    s = on ? static_cast<NodeState>(s | kObstacleBit)
           : static_cast<NodeState>(s & ~kObstacleBit);
  }
}

void sync_ghost_columns(Lattice& lat) {
  NodeState* s = lat.src();
  const int W = lat.width();
  for (int r = 0; r < lat.height(); ++r) {
    s[lat.index(r, 0)] = s[lat.index(r, W)];
    s[lat.index(r, W + 1)] = s[lat.index(r, 1)];
  }
}

namespace {

// Per-bit acceptance: one counter word per node, re-mixed per bit index.
NodeState random_fill(std::uint64_t seed, int x, int r, double density) {
  const std::uint64_t w = rng::node_random(seed, rng::Purpose::Init, 0,
                                           static_cast<std::uint64_t>(x),
                                           static_cast<std::uint64_t>(r));
  NodeState s = 0;
  for (int b = 0; b < 7; ++b) {
    if (rng::bernoulli(rng::mix64(w + static_cast<std::uint64_t>(b)), density)) {
      s |= static_cast<NodeState>(1u << b);
    }
  }
  return s;
}

Lattice init_impl(const SimConfig& cfg, const std::vector<std::string>* geometry) {
  if (cfg.fill_density < 0.0 || cfg.fill_density > 1.0) {
    throw std::invalid_argument("fill_density must be in [0,1]");
  }
  Lattice lat(cfg.width, cfg.height);
  const int W = lat.width();
  const int H = lat.height();

  if (geometry) {
    if (static_cast<int>(geometry->size()) != H) {
      throw std::runtime_error("geometry height mismatch");
    }
    for (int r = 0; r < H; ++r) {
      const std::string& row = (*geometry)[r];
      if (static_cast<int>(row.size()) != W) {
        throw std::runtime_error("geometry width mismatch on row " +
                                 std::to_string(r));
      }
      for (int x = 1; x <= W; ++x) {
        if (row[x - 1] == '#') lat.set_obstacle(r, x, true);
      }
    }
  }
  for (int x = 1; x <= W; ++x) {
    lat.set_obstacle(0, x, true);
    lat.set_obstacle(H - 1, x, true);
  }

  for (int r = 1; r < H - 1; ++r) {
    for (int x = 1; x <= W; ++x) {
      if (lat.obstacle(r, x)) continue;
      lat.set_node(r, x, random_fill(cfg.seed, x, r, cfg.fill_density));
    }
  }
  sync_ghost_columns(lat);
  return lat;
}

}  // namespace

Lattice init_lattice(const SimConfig& cfg) { return init_impl(cfg, nullptr); }

Lattice init_lattice(const SimConfig& cfg, const std::vector<std::string>& geometry) {
  return init_impl(cfg, &geometry);
}

std::vector<std::string> read_geometry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open geometry file " + path);
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (char c : line) {
      if (c != '.' && c != '#') {
        throw std::runtime_error("geometry file: invalid character '" +
                                 std::string(1, c) + "'");
      }
    }
    rows.push_back(line);
  }
  return rows;
}

std::uint64_t state_digest(const Lattice& lat) {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a 64
  const NodeState* s = lat.src();
  for (int r = 0; r < lat.height(); ++r) {
    for (int x = 1; x <= lat.width(); ++x) {
      h ^= s[lat.index(r, x)];
      h *= 0x100000001B3ull;
    }
  }
  return h;
}

}  // namespace fhp
