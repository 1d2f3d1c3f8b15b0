#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fhp/lattice.hpp"

namespace fhp {

// Total particle count (bits 0-6) over interior nodes, wall rows included.
std::int64_t total_mass(const Lattice& lat);

// Integer momentum over the moving bits of interior fluid nodes.
MomentumVec total_momentum(const Lattice& lat);

// Block-averaged density and mean particle velocity. Velocity is in
// lattice units per step: ux = sum(px)/2 / particles, uy uses sqrt(3)/2
// per integer py unit.
struct FlowCell {
  double rho = 0.0;  // particles per node, in [0, 7]
  double ux = 0.0;
  double uy = 0.0;
  int nodes = 0;
  int particles = 0;
};

struct FlowField {
  int block = 1;
  int cells_x = 0;
  int cells_y = 0;
  std::vector<FlowCell> cells;
  const FlowCell& at(int cy, int cx) const {
    return cells[static_cast<std::size_t>(cy) * cells_x + cx];
  }
};

// Partitions the fluid interior (rows 1..H-2, columns 1..W) into
// block x block cells, edge cells clipped. Odd rows sit at +1/2 in
// physical x; cell assignment uses storage columns.
FlowField coarse_grain(const Lattice& lat, int block);

struct ProfileRow {
  int row = 0;
  double mean_ux = 0.0;  // sum(px)/2 over fluid nodes / fluid node count
  int sample_count = 0;  // fluid nodes in the row
};

// Mean x-velocity per interior row.
std::vector<ProfileRow> velocity_profile(const Lattice& lat);

// CSV: "cell_x,cell_y,rho,ux,uy".
void write_flow_csv(std::ostream& out, const FlowField& field);
// CSV: "row,mean_ux,sample_count".
void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& profile);
// PGM P5, maxval 255, pixel = round(255*rho/7), one pixel per cell.
void write_density_pgm(std::ostream& out, const FlowField& field);

void write_flow_csv_file(const std::string& path, const FlowField& field);
void write_profile_csv_file(const std::string& path, const std::vector<ProfileRow>& profile);
void write_density_pgm_file(const std::string& path, const FlowField& field);

}  // namespace fhp
