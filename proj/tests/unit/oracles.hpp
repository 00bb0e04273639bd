#pragma once

// Independent reference implementations used only by tests: plain minimax with
// no pruning, a perfect-ordering move oracle, and an exhaustive minimum-cost
// alpha-beta traversal over all move orders.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "treelab/game.hpp"
#include "treelab/search.hpp"

namespace treelab::oracle {

template <GameModel G>
Score minimax(const G& game, const Position& pos, int depth, std::uint64_t* nodes = nullptr) {
  if (nodes) ++*nodes;
  MoveList moves;
  if (depth > 0) game.generate_moves(pos, moves);
  if (moves.empty()) return game.evaluate(pos);
  Score best = -kInfinity;
  for (Move m : moves) best = std::max<Score>(best, -minimax(game, game.apply(pos, m), depth - 1, nodes));
  return best;
}

// Memoized true values keyed by (hash, depth); the first best move in static order.
template <GameModel G>
class PerfectOrdering {
 public:
  explicit PerfectOrdering(const G& game) : game_(game) {}

  Score value(const Position& pos, int depth) {
    const std::uint64_t key = pos.hash * 64 + static_cast<std::uint64_t>(depth);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    MoveList moves;
    if (depth > 0) game_.generate_moves(pos, moves);
    Score best = -kInfinity;
    if (moves.empty()) {
      best = game_.evaluate(pos);
    } else {
      for (Move m : moves) best = std::max<Score>(best, -value(game_.apply(pos, m), depth - 1));
    }
    values_[key] = best;
    return best;
  }

  Move best_move(const Position& pos, int depth) {
    if (depth == 0) return kNoMove;
    MoveList moves;
    game_.generate_moves(pos, moves);
    if (moves.empty()) return kNoMove;
    const Score v = value(pos, depth);
    for (Move m : moves)
      if (-value(game_.apply(pos, m), depth - 1) == v) return m;
    return kNoMove;
  }

  MoveOracle as_oracle() {
    return [this](const Position& p, int depth) { return best_move(p, depth); };
  }

 private:
  const G& game_;
  std::unordered_map<std::uint64_t, Score> values_;
};

// Minimum number of node accesses of a fail-soft alpha-beta traversal of `pos`
// with window (alpha, beta), minimized over the move order at every node
// independently. Transpositions are not used. Control flow only depends on
// where a child's true value lies relative to the window, so true values
// stand in for the fail-soft returns.
template <GameModel G>
std::uint64_t min_traversal_cost(const G& game, PerfectOrdering<G>& truth, const Position& pos, int depth,
                                 Score alpha, Score beta) {
  MoveList moves;
  if (depth > 0) game.generate_moves(pos, moves);
  if (moves.empty()) return 1;
  std::vector<int> order(moves.size());
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t best = UINT64_MAX;
  do {
    std::uint64_t cost = 1;
    Score a = alpha;
    for (int idx : order) {
      const Position child = game.apply(pos, moves[static_cast<std::size_t>(idx)]);
      cost += min_traversal_cost(game, truth, child, depth - 1, -beta, -a);
      if (cost >= best) break;
      const Score v = -truth.value(child, depth - 1);
      a = std::max(a, v);
      if (a >= beta) break;
    }
    best = std::min(best, cost);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace treelab::oracle
