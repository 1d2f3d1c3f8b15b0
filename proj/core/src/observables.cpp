#include "fhp/observables.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace fhp {

namespace {

constexpr double kSqrt3Half = 0.8660254037844386;

// Real-valued velocity of one integer momentum unit.
inline double ux_of(MomentumVec p) { return p.px * 0.5; }
inline double uy_of(MomentumVec p) { return p.py * kSqrt3Half; }

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

}  // namespace

std::int64_t total_mass(const Lattice& lat) {
  std::int64_t mass = 0;
  for (int r = 0; r < lat.height(); ++r) {
    for (int x = 1; x <= lat.width(); ++x) {
      mass += particle_count(lat.node(r, x));
    }
  }
  return mass;
}

MomentumVec total_momentum(const Lattice& lat) {
  MomentumVec p{};
  for (int r = 0; r < lat.height(); ++r) {
    for (int x = 1; x <= lat.width(); ++x) {
      const NodeState s = lat.node(r, x);
      if (s & kObstacleBit) continue;
      p += moving_momentum(s);
    }
  }
  return p;
}

FlowField coarse_grain(const Lattice& lat, int block) {
  if (block < 1) throw std::invalid_argument("block size must be >= 1");
  const int W = lat.width();
  const int interior_rows = lat.height() - 2;
  FlowField field;
  field.block = block;
  field.cells_x = (W + block - 1) / block;
  field.cells_y = (interior_rows + block - 1) / block;
  field.cells.assign(static_cast<std::size_t>(field.cells_x) * field.cells_y, {});

  std::vector<MomentumVec> momentum(field.cells.size());
  for (int r = 1; r <= interior_rows; ++r) {
    const int cy = (r - 1) / block;
    for (int x = 1; x <= W; ++x) {
      const int cx = (x - 1) / block;
      FlowCell& cell = field.cells[static_cast<std::size_t>(cy) * field.cells_x + cx];
      ++cell.nodes;
      const NodeState s = lat.node(r, x);
      cell.particles += particle_count(s);
      if (!(s & kObstacleBit)) {
        momentum[static_cast<std::size_t>(cy) * field.cells_x + cx] +=
            moving_momentum(s);
      }
    }
  }
  for (std::size_t i = 0; i < field.cells.size(); ++i) {
    FlowCell& cell = field.cells[i];
    cell.rho = cell.nodes ? static_cast<double>(cell.particles) / cell.nodes : 0.0;
    const int denom = std::max(cell.particles, 1);
    cell.ux = ux_of(momentum[i]) / denom;
    cell.uy = uy_of(momentum[i]) / denom;
  }
  return field;
}

std::vector<ProfileRow> velocity_profile(const Lattice& lat) {
  std::vector<ProfileRow> profile;
  profile.reserve(lat.height() - 2);
  for (int r = 1; r < lat.height() - 1; ++r) {
    ProfileRow row{r, 0.0, 0};
    std::int64_t px = 0;
    for (int x = 1; x <= lat.width(); ++x) {
      const NodeState s = lat.node(r, x);
      if (s & kObstacleBit) continue;
      ++row.sample_count;
      px += moving_momentum(s).px;
    }
    if (row.sample_count > 0) {
      row.mean_ux = static_cast<double>(px) / 2.0 / row.sample_count;
    }
    profile.push_back(row);
  }
  return profile;
}

void write_flow_csv(std::ostream& out, const FlowField& field) {
  // ux, uy are mean particle velocities: sum of unit direction vectors over
  // set moving bits, divided by the cell's particle count.
  out << "cell_x,cell_y,rho,ux,uy\n";
  for (int cy = 0; cy < field.cells_y; ++cy) {
    for (int cx = 0; cx < field.cells_x; ++cx) {
      const FlowCell& c = field.at(cy, cx);
      out << cx << ',' << cy << ',' << c.rho << ',' << c.ux << ',' << c.uy << '\n';
    }
  }
}

void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& profile) {
  // mean_ux = (sum of momentum_x over fluid nodes) / 2 / fluid node count.
  out << "row,mean_ux,sample_count\n";
  for (const auto& row : profile) {
    out << row.row << ',' << row.mean_ux << ',' << row.sample_count << '\n';
  }
}

void write_density_pgm(std::ostream& out, const FlowField& field) {
  out << "P5\n" << field.cells_x << ' ' << field.cells_y << "\n255\n";
  for (int cy = 0; cy < field.cells_y; ++cy) {
    for (int cx = 0; cx < field.cells_x; ++cx) {
      const double rho = field.at(cy, cx).rho;
      const int v = static_cast<int>(std::lround(255.0 * rho / 7.0));
      out.put(static_cast<char>(std::clamp(v, 0, 255)));
    }
  }
}

void write_flow_csv_file(const std::string& path, const FlowField& field) {
  auto out = open_out(path, std::ios::out);
  write_flow_csv(out, field);
}

void write_profile_csv_file(const std::string& path,
                            const std::vector<ProfileRow>& profile) {
  auto out = open_out(path, std::ios::out);
  write_profile_csv(out, profile);
}

void write_density_pgm_file(const std::string& path, const FlowField& field) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  write_density_pgm(out, field);
}

}  // namespace fhp
