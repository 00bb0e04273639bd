#pragma once

#include <optional>
#include <span>

#include "treelab/game.hpp"
#include "treelab/stats.hpp"
#include "treelab/ttable.hpp"

namespace treelab {

// Enhanced Transposition Cutoffs: before expanding a node, look its children up
// in the table and stop if one of them already refutes the parent.
struct EtcConfig {
  bool enabled = false;
  int min_remaining_depth = 3;  // only at nodes more than two plies above the leaves
};

constexpr bool etc_enabled_at(int depth, const EtcConfig& config) {
  return config.enabled && depth >= config.min_remaining_depth;
}

struct EtcCutoff {
  Score value;
  Move move;
};

// Probes every child of `pos` in move order. A child entry deep enough for
// depth-1 whose (negated) value reaches beta settles the parent. Never stores.
template <GameModel G>
std::optional<EtcCutoff> etc_probe(const G& game, const Position& pos, std::span<const Move> moves, int depth,
                                   Score alpha, Score beta, TTable& table, SearchStats& stats) {
  for (Move m : moves) {
    const Position child = game.apply(pos, m);
    ++stats.etc_probes;
    const auto entry = table.probe(child.hash);
    if (!entry) continue;
    const auto child_value = TTable::sufficient(*entry, depth - 1, -beta, -alpha);
    if (child_value && -*child_value >= beta) {
      ++stats.etc_cutoffs;
      return EtcCutoff{-*child_value, m};
    }
  }
  return std::nullopt;
}

}  // namespace treelab
