#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fhp/node_state.hpp"

namespace fhp {

enum class RuleVariant { Default };

// 512-entry look-up table: index = (chirality << 8) | state.
// Fluid entries conserve mass and integer momentum exactly; boundary
// entries (bit 7 set) reverse all moving bits (full bounce-back).
struct CollisionTable {
  std::array<NodeState, 512> entries{};

  NodeState apply(NodeState s, int chirality) const noexcept {
    return entries[(static_cast<std::size_t>(chirality & 1) << 8) | s];
  }
};

inline NodeState collide_node(const CollisionTable& t, NodeState s,
                              int chirality) noexcept {
  return t.apply(s, chirality);
}

struct ValidationIssue {
  enum class Kind { Mass, Momentum, BounceBack, ObstacleBit };
  int index = 0;  // 0..511
  Kind kind = Kind::Mass;
  int mass_delta = 0;
  MomentumVec momentum_delta{};
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid() const noexcept { return issues.empty(); }
  std::string summary() const;
};

CollisionTable build_table(RuleVariant variant = RuleVariant::Default);

ValidationReport validate_table(const CollisionTable& t);

// File format: 8-byte magic "FHPTAB01" followed by the 512 raw entries.
inline constexpr char kTableMagic[9] = "FHPTAB01";
inline constexpr std::size_t kTableFileSize = 8 + 512;

std::vector<std::uint8_t> save_table(const CollisionTable& t);

// Throws std::runtime_error on bad magic or length; rejects tables that
// fail validation unless `force` is set.
CollisionTable load_table(const std::vector<std::uint8_t>& bytes, bool force = false);

std::vector<std::uint8_t> read_table_file(const std::string& path);
void write_table_file(const std::string& path, const CollisionTable& t);

}  // namespace fhp
