#include "fhp/collision.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fhp {

namespace {

constexpr std::uint8_t rotate6(std::uint8_t moving, int by) {
  std::uint8_t out = 0;
  for (int i = 0; i < 6; ++i) {
    if (moving & (1u << i)) out |= static_cast<std::uint8_t>(1u << ((i + by) % 6));
  }
  return out;
}

// Collision outcome for a fluid state, matching on the exact moving-bit
// set M and the rest bit R. Unmatched states map to themselves.
NodeState fluid_outcome(NodeState s, int chirality) {
  const std::uint8_t moving = s & kMovingMask;
  const bool rest = (s & kRestBit) != 0;
  const int n = std::popcount(static_cast<unsigned>(moving));

  // Head-on pair {i, i+3}: rotate both by 1 or 2 depending on chirality.
  if (n == 2 && !rest && reverse6(moving) == moving) {
    return rotate6(moving, chirality ? 1 : 2);
  }
  // Symmetric three-body {i, i+2, i+4} -> the complementary triple.
  if (n == 3 && !rest && (moving == 0x15 || moving == 0x2A)) {
    return moving ^ kMovingMask;
  }
  // Rest absorption: {i} + rest -> {i-1, i+1}.
  if (n == 1 && rest) {
    const int i = std::countr_zero(static_cast<unsigned>(moving));
    return static_cast<NodeState>((1u << ((i + 5) % 6)) | (1u << ((i + 1) % 6)));
  }
  // Rest creation: {i, i+2} -> {i+1} + rest.
  if (n == 2 && !rest) {
    for (int i = 0; i < 6; ++i) {
      const std::uint8_t pair =
          static_cast<std::uint8_t>((1u << i) | (1u << ((i + 2) % 6)));
      if (moving == pair) {
        return static_cast<NodeState>((1u << ((i + 1) % 6)) | kRestBit);
      }
    }
  }
  return s;
}

}  // namespace

CollisionTable build_table(RuleVariant) {
  CollisionTable t;
  for (int chirality = 0; chirality < 2; ++chirality) {
    for (int s = 0; s < 256; ++s) {
      const auto state = static_cast<NodeState>(s);
      NodeState out;
      if (state & kObstacleBit) {
        // Bounce-back: reverse all moving bits, keep rest and obstacle bits.
        out = static_cast<NodeState>((state & (kRestBit | kObstacleBit)) |
                                     reverse6(state & kMovingMask));
      } else {
        out = fluid_outcome(state, chirality);
      }
      t.entries[(static_cast<std::size_t>(chirality) << 8) | s] = out;
    }
  }
  return t;
}

ValidationReport validate_table(const CollisionTable& t) {
  ValidationReport report;
  for (int idx = 0; idx < 512; ++idx) {
    const auto state = static_cast<NodeState>(idx & 0xFF);
    const NodeState out = t.entries[idx];
    if ((out & kObstacleBit) != (state & kObstacleBit)) {
      report.issues.push_back({idx, ValidationIssue::Kind::ObstacleBit, 0, {}});
      continue;
    }
    if (state & kObstacleBit) {
      const auto expected = static_cast<NodeState>(
          (state & (kRestBit | kObstacleBit)) | reverse6(state & kMovingMask));
      if (out != expected) {
        report.issues.push_back({idx, ValidationIssue::Kind::BounceBack, 0, {}});
      }
      continue;
    }
    const int dm = particle_count(out) - particle_count(state);
    if (dm != 0) {
      report.issues.push_back({idx, ValidationIssue::Kind::Mass, dm, {}});
    }
    const MomentumVec dp = moving_momentum(out) - moving_momentum(state);
    if (dp != MomentumVec{}) {
      report.issues.push_back({idx, ValidationIssue::Kind::Momentum, 0, dp});
    }
  }
  return report;
}

std::string ValidationReport::summary() const {
  if (issues.empty()) return "valid: 512 entries, 0 violations";
  std::ostringstream os;
  os << issues.size() << " violation(s):";
  for (const auto& v : issues) {
    os << " [index " << v.index;
    switch (v.kind) {
      case ValidationIssue::Kind::Mass:
        os << " mass delta " << v.mass_delta;
        break;
      case ValidationIssue::Kind::Momentum:
        os << " momentum delta (" << v.momentum_delta.px << ","
           << v.momentum_delta.py << ")";
        break;
      case ValidationIssue::Kind::BounceBack:
        os << " bounce-back";
        break;
      case ValidationIssue::Kind::ObstacleBit:
        os << " obstacle bit";
        break;
    }
    os << "]";
  }
  return os.str();
}

std::vector<std::uint8_t> save_table(const CollisionTable& t) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(kTableFileSize);
  bytes.insert(bytes.end(), kTableMagic, kTableMagic + 8);
  bytes.insert(bytes.end(), t.entries.begin(), t.entries.end());
  return bytes;
}

CollisionTable load_table(const std::vector<std::uint8_t>& bytes, bool force) {
  if (bytes.size() != kTableFileSize) {
    throw std::runtime_error("collision table: expected " +
                             std::to_string(kTableFileSize) + " bytes, got " +
                             std::to_string(bytes.size()));
  }
  if (!std::equal(kTableMagic, kTableMagic + 8, bytes.begin())) {
    throw std::runtime_error("collision table: bad magic");
  }
  CollisionTable t;
  std::copy(bytes.begin() + 8, bytes.end(), t.entries.begin());
  if (!force) {
    const auto report = validate_table(t);
    if (!report.valid()) {
      throw std::runtime_error("collision table: " + report.summary());
    }
  }
  return t;
}

std::vector<std::uint8_t> read_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_table_file(const std::string& path, const CollisionTable& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  const auto bytes = save_table(t);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fhp
