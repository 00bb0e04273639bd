#include "treelab/position.hpp"

namespace treelab {

namespace {

constexpr std::uint64_t kZobristSeed = 0x5EED0F0A1BE7A5ULL;

ZobristKeys build_keys() {
  ZobristKeys keys;
  std::uint64_t state = kZobristSeed;
  auto next = [&state] {
    state += 0x9E3779B97F4A7C15ULL;
    return mix64(state);
  };
  for (auto& side : keys.piece)
    for (auto& k : side) k = next();
  for (auto& k : keys.label) k = next();
  keys.side_to_move = next();
  return keys;
}

}  // namespace

const ZobristKeys& zobrist_keys() {
  static const ZobristKeys keys = build_keys();
  return keys;
}

}  // namespace treelab
