#pragma once

#include <array>
#include <cstdint>

#include "treelab/types.hpp"

namespace treelab {

// Game-agnostic position record. Each game defines what `bits` and `accum`
// hold; `hash` is always the Zobrist key of (bits, side).
struct Position {
  std::array<std::uint64_t, 2> bits{};
  std::uint64_t hash = 0;
  std::int32_t accum = 0;
  std::uint16_t ply = 0;
  Side side = Side::Max;

  friend bool operator==(const Position&, const Position&) = default;
};

// splitmix64 finalizer; used for all seeded derivations so results do not
// depend on the standard library's RNG implementations.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b + 0x632BE59BD9B4E019ULL));
}

// Uniform double in [0, 1).
constexpr double unit_interval(std::uint64_t x) {
  return static_cast<double>(x >> 11) * (1.0 / 9007199254740992.0);
}

struct ZobristKeys {
  std::array<std::array<std::uint64_t, 64>, 2> piece{};
  std::array<std::uint64_t, 64> label{};
  std::uint64_t side_to_move = 0;
};

// Fixed-seed key table shared by every game.
const ZobristKeys& zobrist_keys();

}  // namespace treelab
