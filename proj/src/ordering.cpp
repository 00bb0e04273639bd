#include "treelab/ordering.hpp"

#include <cstdio>
#include <mutex>

namespace treelab {

void record_cutoff_rank(SearchStats& stats, int level, int rank) {
  auto& hist = stats.cutoff_rank_histogram;
  if (hist.size() <= static_cast<std::size_t>(level)) hist.resize(static_cast<std::size_t>(level) + 1);
  auto& row = hist[static_cast<std::size_t>(level)];
  if (row.size() <= static_cast<std::size_t>(rank)) row.resize(static_cast<std::size_t>(rank) + 1, 0);
  ++row[static_cast<std::size_t>(rank)];
}

void note_foreign_table_move() {
  static std::once_flag once;
  std::call_once(once, [] { std::fputs("treelab: ignoring a table move that is not legal here\n", stderr); });
}

std::optional<double> SearchStats::first_move_cutoff_rate(int level) const {
  if (level < 0 || static_cast<std::size_t>(level) >= cutoff_rank_histogram.size()) return std::nullopt;
  const auto& row = cutoff_rank_histogram[static_cast<std::size_t>(level)];
  std::uint64_t total = 0;
  for (auto c : row) total += c;
  if (total == 0) return std::nullopt;
  return static_cast<double>(row[0]) / static_cast<double>(total);
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  interior_expansions += o.interior_expansions;
  leaf_evaluations += o.leaf_evaluations;
  tt_cutoffs += o.tt_cutoffs;
  tt_hits += o.tt_hits;
  etc_probes += o.etc_probes;
  etc_cutoffs += o.etc_cutoffs;
  oracle_misses += o.oracle_misses;
  re_searches += o.re_searches;
  cheaper_cutoffs += o.cheaper_cutoffs;
  if (cutoff_rank_histogram.size() < o.cutoff_rank_histogram.size())
    cutoff_rank_histogram.resize(o.cutoff_rank_histogram.size());
  for (std::size_t l = 0; l < o.cutoff_rank_histogram.size(); ++l) {
    auto& mine = cutoff_rank_histogram[l];
    const auto& theirs = o.cutoff_rank_histogram[l];
    if (mine.size() < theirs.size()) mine.resize(theirs.size(), 0);
    for (std::size_t r = 0; r < theirs.size(); ++r) mine[r] += theirs[r];
  }
  return *this;
}

}  // namespace treelab
