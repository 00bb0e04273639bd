#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treelab/etc.hpp"
#include "treelab/game.hpp"
#include "treelab/ordering.hpp"
#include "treelab/stats.hpp"
#include "treelab/ttable.hpp"

namespace treelab {

enum class Engine { AlphaBeta, NegaScout, AspNegaScout, MtdF };

std::string_view engine_name(Engine engine);
std::optional<Engine> parse_engine(std::string_view name);

inline constexpr Engine kAllEngines[] = {Engine::AlphaBeta, Engine::NegaScout, Engine::AspNegaScout, Engine::MtdF};

// Externally supplied first move for a node (used by tests for perfect ordering).
using MoveOracle = std::function<Move(const Position&, int depth)>;

struct SearchOptions {
  bool use_table = true;      // probe the table for moves and (optionally) values
  bool table_cutoffs = true;  // let sufficient entries settle nodes
  bool store_entries = true;
  StorePolicy store_policy = StorePolicy::TwoTier;
  bool use_history = true;
  EtcConfig etc{};
  Score aspiration_delta = 50;
  // At nodes with remaining depth <= this value, keep searching after a cutoff
  // and keep the cutoff move with the smallest subtree (0 disables).
  int cheapest_cutoff_depth = 0;
  // Count interior nodes that find no table entry (move-oracle coverage).
  bool count_oracle_misses = false;
  std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
  MoveOracle oracle;
};

struct SearchResult {
  Score value = 0;
  Move best_move{};
  int depth = 0;
  int passes = 1;
  SearchStats stats;
};

// Called after each completed iteration of iterative deepening.
using IterationCallback = std::function<void(const SearchResult&)>;

// Fail-soft negamax search over one game, optionally backed by a table.
// Returned values g obey: g <= alpha => true value <= g; g >= beta => true
// value >= g; otherwise g is the exact minimax value at that depth.
template <GameModel G>
class Searcher {
 public:
  Searcher(const G& game, TTable* table, SearchOptions options = {})
      : game_(game), table_(table), options_(std::move(options)) {}

  SearchResult alphabeta(const Position& pos, int depth, Score alpha = -kInfinity, Score beta = kInfinity);
  SearchResult negascout(const Position& pos, int depth, Score alpha = -kInfinity, Score beta = kInfinity);
  SearchResult aspiration(const Position& pos, int depth, Score guess, Score delta,
                          Engine inner = Engine::NegaScout);
  SearchResult mtdf(const Position& pos, int depth, Score first_guess);

  // One fixed-depth search with the given engine; `guess` seeds the
  // aspiration window and MTD(f).
  SearchResult run(Engine engine, const Position& pos, int depth, Score guess = 0);

  // Depths 1..max_depth sharing the table and history; one result per iteration.
  std::vector<SearchResult> iterative_deepening(const Position& pos, int max_depth, Engine engine,
                                               const IterationCallback& on_iteration = {});

  SearchStats& stats() { return stats_; }
  HistoryTable& history() { return history_; }
  SearchOptions& options() { return options_; }
  const G& game() const { return game_; }

 private:
  Score root_search(bool scout, const Position& pos, int depth, Score alpha, Score beta);
  template <bool kScout>
  Score node(const Position& pos, int depth, Score alpha, Score beta, int level);
  SearchResult finish(Score value, int depth, int passes) const;

  bool table_active() const { return table_ != nullptr && options_.use_table; }

  const G& game_;
  TTable* table_;
  SearchOptions options_;
  HistoryTable history_;
  SearchStats stats_;
  Move root_best_{};
  // Candidate-subtree budget for cheapest-cutoff search: accesses at which the
  // current candidate is abandoned.
  std::uint64_t abort_at_ = std::numeric_limits<std::uint64_t>::max();
  bool aborted_ = false;
};

template <GameModel G>
SearchResult Searcher<G>::finish(Score value, int depth, int passes) const {
  SearchResult r;
  r.value = value;
  r.best_move = root_best_;
  r.depth = depth;
  r.passes = passes;
  r.stats = stats_;
  return r;
}

template <GameModel G>
Score Searcher<G>::root_search(bool scout, const Position& pos, int depth, Score alpha, Score beta) {
  if (!(alpha < beta)) throw ContractViolation("search window must satisfy alpha < beta");
  if (depth < 0) throw ContractViolation("search depth must be non-negative");
  root_best_ = kNoMove;
  abort_at_ = std::numeric_limits<std::uint64_t>::max();
  aborted_ = false;
  return scout ? node<true>(pos, depth, alpha, beta, 0) : node<false>(pos, depth, alpha, beta, 0);
}

template <GameModel G>
SearchResult Searcher<G>::alphabeta(const Position& pos, int depth, Score alpha, Score beta) {
  stats_ = {};
  const Score v = root_search(false, pos, depth, alpha, beta);
  return finish(v, depth, 1);
}

template <GameModel G>
SearchResult Searcher<G>::negascout(const Position& pos, int depth, Score alpha, Score beta) {
  stats_ = {};
  const Score v = root_search(true, pos, depth, alpha, beta);
  return finish(v, depth, 1);
}

template <GameModel G>
SearchResult Searcher<G>::aspiration(const Position& pos, int depth, Score guess, Score delta, Engine inner) {
  if (delta <= 0) throw ContractViolation("aspiration delta must be positive");
  stats_ = {};
  const bool scout = inner != Engine::AlphaBeta;
  const Score alpha = static_cast<Score>(std::max<long long>(-kInfinity, static_cast<long long>(guess) - delta));
  const Score beta = static_cast<Score>(std::min<long long>(kInfinity, static_cast<long long>(guess) + delta));
  Score g = root_search(scout, pos, depth, alpha, beta);
  int passes = 1;
  if (g <= alpha && alpha > -kInfinity) {
    g = root_search(scout, pos, depth, -kInfinity, g + 1);
    ++passes;
  } else if (g >= beta && beta < kInfinity) {
    g = root_search(scout, pos, depth, g - 1, kInfinity);
    ++passes;
  }
  return finish(g, depth, passes);
}

template <GameModel G>
SearchResult Searcher<G>::mtdf(const Position& pos, int depth, Score first_guess) {
  stats_ = {};
  Score g = first_guess;
  Score lower = -kInfinity;
  Score upper = kInfinity;
  int passes = 0;
  while (lower < upper) {
    const Score beta = g == lower ? g + 1 : g;
    g = root_search(false, pos, depth, beta - 1, beta);
    if (g < beta)
      upper = g;
    else
      lower = g;
    if (++passes > 2 * kInfinity + 2) throw InvariantViolation("MTD(f) failed to converge");
  }
  return finish(g, depth, passes);
}

template <GameModel G>
SearchResult Searcher<G>::run(Engine engine, const Position& pos, int depth, Score guess) {
  switch (engine) {
    case Engine::AlphaBeta: return alphabeta(pos, depth);
    case Engine::NegaScout: return negascout(pos, depth);
    case Engine::AspNegaScout: return aspiration(pos, depth, guess, options_.aspiration_delta, Engine::NegaScout);
    case Engine::MtdF: return mtdf(pos, depth, guess);
  }
  throw ContractViolation("unknown engine");
}

template <GameModel G>
std::vector<SearchResult> Searcher<G>::iterative_deepening(const Position& pos, int max_depth, Engine engine,
                                                          const IterationCallback& on_iteration) {
  if (max_depth < 1) throw ContractViolation("iterative deepening needs max_depth >= 1");
  history_.clear();
  std::vector<SearchResult> iterations;
  Score guess = game_.evaluate(pos);
  for (int d = 1; d <= max_depth; ++d) {
    if (table_ != nullptr) table_->new_search();
    iterations.push_back(run(engine, pos, d, guess));
    guess = iterations.back().value;
    if (on_iteration) on_iteration(iterations.back());
  }
  return iterations;
}

template <GameModel G>
template <bool kScout>
Score Searcher<G>::node(const Position& pos, int depth, Score alpha, Score beta, int level) {
  const std::uint64_t accesses = stats_.node_accesses();
  if (accesses >= abort_at_) {
    aborted_ = true;
    return 0;
  }
  if (accesses >= options_.node_budget)
    throw BudgetExceeded("search exceeded the node budget of " + std::to_string(options_.node_budget));

  if (depth == 0) {
    ++stats_.leaf_evaluations;
    return game_.evaluate(pos);
  }

  Move table_move{};
  bool have_entry = false;
  if (table_active()) {
    if (const auto entry = table_->probe(pos.hash)) {
      have_entry = true;
      ++stats_.tt_hits;
      if (options_.table_cutoffs) {
        if (const auto v = TTable::sufficient(*entry, depth, alpha, beta)) {
          ++stats_.tt_cutoffs;
          if (level == 0) root_best_ = entry->best_move;
          return *v;
        }
      }
      table_move = entry->best_move;
    }
  }

  MoveList moves;
  game_.generate_moves(pos, moves);
  if (moves.empty()) {
    ++stats_.leaf_evaluations;
    return game_.evaluate(pos);
  }
  if (options_.count_oracle_misses && !have_entry) ++stats_.oracle_misses;

  Move first = table_move;
  if (options_.oracle) {
    const Move m = options_.oracle(pos, depth);
    if (!m.is_none()) first = m;
  }
  order_moves(moves.span(), first, options_.use_history ? &history_ : nullptr,
              [this](Move m) { return game_.history_index(m); });

  if (table_active() && options_.table_cutoffs && etc_enabled_at(depth, options_.etc)) {
    if (const auto cut = etc_probe(game_, pos, moves.span(), depth, alpha, beta, *table_, stats_)) {
      ++stats_.tt_cutoffs;
      if (options_.store_entries)
        table_->store({.key = pos.hash, .value = cut->value, .depth = static_cast<std::int16_t>(depth),
                       .bound = Bound::Lower, .best_move = cut->move},
                      options_.store_policy);
      if (level == 0) root_best_ = cut->move;
      return cut->value;
    }
  }

  ++stats_.interior_expansions;
  Score best = -kInfinity;
  Move best_move{};
  Score a = alpha;
  Score alpha_at_cut = alpha;
  std::uint64_t cut_cost = 0;
  int cut_rank = -1;

  for (std::size_t i = 0; i < moves.size(); ++i) {
    const Position child = game_.apply(pos, moves[i]);
    const std::uint64_t before = stats_.node_accesses();
    Score v;
    if constexpr (kScout) {
      if (i == 0) {
        v = -node<true>(child, depth - 1, -beta, -a, level + 1);
      } else {
        v = -node<true>(child, depth - 1, -a - 1, -a, level + 1);
        // Below depth 3 a fail-soft scout value inside the window is already exact.
        if (!aborted_ && v > a && v < beta && depth > 2) {
          ++stats_.re_searches;
          v = -node<true>(child, depth - 1, -beta, -v, level + 1);
        }
      }
    } else {
      v = -node<false>(child, depth - 1, -beta, -a, level + 1);
    }
    if (aborted_) return 0;
    if (v > best) {
      best = v;
      best_move = moves[i];
    }
    if (best > a) {
      alpha_at_cut = a;
      a = best;
    }
    if (a >= beta) {
      cut_rank = static_cast<int>(i);
      cut_cost = stats_.node_accesses() - before;
      break;
    }
  }

  bool cheapest_search = false;
  if (cut_rank >= 0) {
    record_cutoff_rank(stats_, level, cut_rank);
    if (depth <= options_.cheapest_cutoff_depth) {
      // Look for a cutoff among the remaining moves that needs a smaller subtree.
      cheapest_search = true;
      for (std::size_t j = static_cast<std::size_t>(cut_rank) + 1; j < moves.size(); ++j) {
        const Position child = game_.apply(pos, moves[j]);
        const std::uint64_t before = stats_.node_accesses();
        const std::uint64_t outer_abort = abort_at_;
        abort_at_ = std::min(outer_abort, before + cut_cost - 1);
        const Score v = -node<false>(child, depth - 1, -beta, -alpha_at_cut, level + 1);
        const std::uint64_t cost = stats_.node_accesses() - before;
        abort_at_ = outer_abort;
        if (aborted_) {
          if (stats_.node_accesses() >= outer_abort) return 0;
          aborted_ = false;
          continue;
        }
        if (v >= beta && cost < cut_cost) {
          ++stats_.cheaper_cutoffs;
          cut_cost = cost;
          best = v;
          best_move = moves[j];
        }
      }
    }
  }

  if (options_.use_history && !best_move.is_none() && (cut_rank >= 0 || best > alpha))
    history_update(history_, game_.history_index(best_move), depth);

  if (table_active() && options_.store_entries) {
    const Bound bound = best <= alpha ? Bound::Upper : best >= beta ? Bound::Lower : Bound::Exact;
    const StorePolicy policy = cheapest_search ? StorePolicy::NoEvict : options_.store_policy;
    table_->store({.key = pos.hash, .value = best, .depth = static_cast<std::int16_t>(depth), .bound = bound,
                   .best_move = best_move},
                  policy);
  }
  if (level == 0) root_best_ = best_move;
  return best;
}

extern template class Searcher<Othello6>;
extern template class Searcher<MiniCheckers>;
extern template class Searcher<SyntheticGame>;

}  // namespace treelab
