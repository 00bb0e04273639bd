#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace treelab {

// Deterministic node accounting for one search.
//
// A node access is either an expansion (moves generated and searched), a leaf
// evaluation (depth 0 or terminal), or a table cutoff. A node settled by a
// table entry counts once, whatever the size of the subtree it stands for.
struct SearchStats {
  std::uint64_t interior_expansions = 0;
  std::uint64_t leaf_evaluations = 0;
  std::uint64_t tt_cutoffs = 0;  // includes etc_cutoffs
  std::uint64_t tt_hits = 0;
  std::uint64_t etc_probes = 0;
  std::uint64_t etc_cutoffs = 0;
  std::uint64_t oracle_misses = 0;
  std::uint64_t re_searches = 0;
  std::uint64_t cheaper_cutoffs = 0;

  // cutoff_rank_histogram[level][rank]: beta cutoffs at tree level `level`
  // (root = 0) caused by the (rank+1)-th ordered move.
  std::vector<std::vector<std::uint64_t>> cutoff_rank_histogram;

  std::uint64_t node_accesses() const { return interior_expansions + leaf_evaluations + tt_cutoffs; }

  // Fraction of cutoff nodes at `level` where the first ordered move cut.
  std::optional<double> first_move_cutoff_rate(int level) const;

  SearchStats& operator+=(const SearchStats& other);
};

}  // namespace treelab
