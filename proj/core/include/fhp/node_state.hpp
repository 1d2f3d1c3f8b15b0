#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace fhp {

// One lattice node packed into a byte: bits 0-5 are moving particles,
// bit 6 a particle at rest, bit 7 the obstacle flag.
using NodeState = std::uint8_t;

inline constexpr NodeState kMovingMask = 0x3F;
inline constexpr NodeState kRestBit = 0x40;
inline constexpr NodeState kObstacleBit = 0x80;

// Direction convention: 0=NW, 1=NE, 2=E, 3=SE, 4=SW, 5=W.
// Bits 2 and 5 are the two horizontal velocities; the forcing rule
// swaps exactly those.
enum class Direction : int { NW = 0, NE = 1, E = 2, SE = 3, SW = 4, W = 5 };

constexpr Direction opposite(Direction d) noexcept {
  return Direction{(static_cast<int>(d) + 3) % 6};
}

// Momentum in exact integer coordinates: px in units of c/2,
// py in units of (sqrt(3)/2)*c, y axis pointing north.
struct MomentumVec {
  int px = 0;
  int py = 0;

  constexpr MomentumVec& operator+=(MomentumVec o) noexcept {
    px += o.px;
    py += o.py;
    return *this;
  }
  constexpr MomentumVec& operator-=(MomentumVec o) noexcept {
    px -= o.px;
    py -= o.py;
    return *this;
  }
  friend constexpr MomentumVec operator+(MomentumVec a, MomentumVec b) noexcept {
    return {a.px + b.px, a.py + b.py};
  }
  friend constexpr MomentumVec operator-(MomentumVec a, MomentumVec b) noexcept {
    return {a.px - b.px, a.py - b.py};
  }
  friend constexpr MomentumVec operator-(MomentumVec a) noexcept {
    return {-a.px, -a.py};
  }
  friend constexpr bool operator==(MomentumVec a, MomentumVec b) noexcept = default;
};

inline constexpr std::array<MomentumVec, 6> kDirectionMomentum = {{
    {-1, 1},   // NW
    {1, 1},    // NE
    {2, 0},    // E
    {1, -1},   // SE
    {-1, -1},  // SW
    {-2, 0},   // W
}};

constexpr MomentumVec direction_momentum(Direction d) noexcept {
  return kDirectionMomentum[static_cast<int>(d)];
}

// Momentum carried by the moving bits of a node; rest particles carry none.
constexpr MomentumVec moving_momentum(NodeState s) noexcept {
  MomentumVec p{};
  for (int k = 0; k < 6; ++k) {
    if (s & (1u << k)) p += kDirectionMomentum[k];
  }
  return p;
}

// Particles present on a node, rest particle included.
constexpr int particle_count(NodeState s) noexcept {
  return std::popcount(static_cast<unsigned>(s & 0x7F));
}

// Map moving bit i to bit (i+3)%6: full velocity reversal.
constexpr std::uint8_t reverse6(std::uint8_t moving) noexcept {
  const unsigned m = moving & kMovingMask;
  return static_cast<std::uint8_t>(((m << 3) | (m >> 3)) & kMovingMask);
}

}  // namespace fhp
