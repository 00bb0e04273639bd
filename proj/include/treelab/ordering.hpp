#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "treelab/stats.hpp"
#include "treelab/types.hpp"

namespace treelab {

// History heuristic scores, indexed by a game-supplied move signature.
class HistoryTable {
 public:
  static constexpr int kSize = 4096;

  HistoryTable() : scores_(kSize, 0) {}

  std::uint64_t score(int signature) const { return scores_[static_cast<std::size_t>(signature) % kSize]; }
  void add(int signature, std::uint64_t amount) { scores_[static_cast<std::size_t>(signature) % kSize] += amount; }
  void clear() { std::fill(scores_.begin(), scores_.end(), 0); }

 private:
  std::vector<std::uint64_t> scores_;
};

// Credit the move that cut off (or was best) with depth^2.
inline void history_update(HistoryTable& hist, int signature, int depth) {
  if (depth > 0) hist.add(signature, static_cast<std::uint64_t>(depth) * static_cast<std::uint64_t>(depth));
}

void record_cutoff_rank(SearchStats& stats, int level, int rank);

// Reported once per process when a table move is not in the move list.
void note_foreign_table_move();

// Reorders `moves` in place: `first` (when present in the list) leads, the rest
// follow by descending history score, ties keeping the static order. Returns
// whether `first` was found.
template <class SignatureFn>
bool order_moves(std::span<Move> moves, Move first, const HistoryTable* hist, SignatureFn&& signature) {
  std::size_t rest = 0;
  bool found = false;
  if (!first.is_none()) {
    auto it = std::find(moves.begin(), moves.end(), first);
    if (it != moves.end()) {
      std::rotate(moves.begin(), it, it + 1);
      rest = 1;
      found = true;
    } else {
      note_foreign_table_move();
    }
  }
  if (hist != nullptr && moves.size() - rest > 1) {
    std::stable_sort(moves.begin() + static_cast<std::ptrdiff_t>(rest), moves.end(), [&](Move a, Move b) {
      return hist->score(signature(a)) > hist->score(signature(b));
    });
  }
  return found;
}

}  // namespace treelab
