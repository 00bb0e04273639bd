#include "treelab/minimal_graphs.hpp"

#include <string>

namespace treelab {

std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::Actual: return "ACTUAL";
    case Quantity::Lfmt: return "LFMT";
    case Quantity::Lfmg: return "LFMG";
    case Quantity::Rmt: return "RMT";
    case Quantity::Armg: return "ARMG";
  }
  return "?";
}

std::optional<Quantity> parse_quantity(std::string_view name) {
  for (Quantity q : {Quantity::Actual, Quantity::Lfmt, Quantity::Lfmg, Quantity::Rmt, Quantity::Armg})
    if (quantity_name(q) == name) return q;
  return std::nullopt;
}

namespace {

template <GameModel G>
NodeCountReport make_report(Quantity q, const G& game, int depth, Score f) {
  NodeCountReport r;
  r.quantity = q;
  r.game = std::string(game_name(game_id(game)));
  r.engine = "-";
  r.depth = depth;
  r.f = f;
  r.window_alpha = f - 1;
  r.window_beta = f + 1;
  return r;
}

void fill_counts(NodeCountReport& r, const SearchStats& s) {
  r.leaf_count = s.leaf_evaluations;
  r.interior_count = s.interior_expansions;
  r.tt_cutoffs = s.tt_cutoffs;
  r.total_node_accesses = s.node_accesses();
  r.oracle_misses = s.oracle_misses;
  r.tt_hits = s.tt_hits;
  r.etc_cutoffs = s.etc_cutoffs;
}

// Step 1: minimax value and a best move for every node searched.
template <GameModel G>
Score find_value(const G& game, const Position& pos, int depth, TTable& table, const MetrologyConfig& config) {
  SearchOptions options;
  options.use_history = config.history;
  options.aspiration_delta = config.aspiration_delta;
  options.node_budget = config.node_budget;
  Searcher<G> searcher(game, &table, options);
  if (depth == 0) return searcher.alphabeta(pos, 0).value;
  const auto iterations = searcher.iterative_deepening(pos, depth, config.first_engine);
  const double occupancy = static_cast<double>(table.occupancy()) / static_cast<double>(table.capacity());
  if (occupancy > config.max_occupancy)
    throw TableSaturated("table of 2^" + std::to_string(table.bits()) + " slots is " +
                         std::to_string(static_cast<int>(occupancy * 100)) +
                         "% full after the first search; raise the table size");
  return iterations.back().value;
}

// Steps 2 and 3: oracle-guided traversal with window (f-1, f+1).
template <GameModel G>
SearchStats counting_pass(const G& game, const Position& pos, int depth, Score f, TTable& table,
                          bool transpositions, const MetrologyConfig& config, std::string_view what) {
  SearchOptions options;
  options.table_cutoffs = transpositions;
  options.store_entries = transpositions;
  options.store_policy = StorePolicy::KeepMove;
  options.use_history = false;
  options.count_oracle_misses = true;
  options.node_budget = config.node_budget;
  Searcher<G> searcher(game, &table, options);
  const SearchResult r = searcher.alphabeta(pos, depth, f - 1, f + 1);
  if (r.value != f)
    throw InvariantViolation(std::string(what) + " traversal returned " + std::to_string(r.value) +
                             " but the minimax value is " + std::to_string(f));
  return r.stats;
}

template <GameModel G>
LeftFirstReports left_first(const G& game, const Position& pos, int depth, const MetrologyConfig& config,
                            bool want_graph) {
  if (depth < 0) throw ContractViolation("depth must be non-negative");
  TTable table(config.tt_bits);
  const Score f = find_value(game, pos, depth, table, config);
  table.retain_best_moves_only();

  LeftFirstReports out;
  out.lfmt = make_report(Quantity::Lfmt, game, depth, f);
  fill_counts(out.lfmt, counting_pass(game, pos, depth, f, table, false, config, "LFMT"));
  if (want_graph) {
    table.retain_best_moves_only();
    out.lfmg = make_report(Quantity::Lfmg, game, depth, f);
    fill_counts(out.lfmg, counting_pass(game, pos, depth, f, table, true, config, "LFMG"));
    if (out.lfmg.total_node_accesses > out.lfmt.total_node_accesses)
      throw InvariantViolation("LFMG larger than LFMT");
  }
  return out;
}

std::uint64_t saturating_sub(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : 0; }

}  // namespace

template <GameModel G>
LeftFirstReports compute_left_first(const G& game, const Position& pos, int depth, const MetrologyConfig& config) {
  return left_first(game, pos, depth, config, true);
}

template <GameModel G>
NodeCountReport compute_lfmt(const G& game, const Position& pos, int depth, const MetrologyConfig& config) {
  return left_first(game, pos, depth, config, false).lfmt;
}

template <GameModel G>
NodeCountReport compute_lfmg(const G& game, const Position& pos, int depth, const MetrologyConfig& config) {
  return left_first(game, pos, depth, config, true).lfmg;
}

template <GameModel G>
NodeCountReport compute_armg(const G& game, const Position& pos, int depth, int mm_d, const MetrologyConfig& config) {
  if (depth < 0) throw ContractViolation("depth must be non-negative");
  if (mm_d < 0 || mm_d > depth) throw ContractViolation("mm_d must be in [0, depth]");
  TTable table(config.tt_bits);
  const Score f = find_value(game, pos, depth, table, config);
  table.retain_best_moves_only();

  if (mm_d > 0) {
    SearchOptions options;
    options.store_policy = StorePolicy::KeepMove;
    options.use_history = false;
    options.cheapest_cutoff_depth = mm_d;
    options.node_budget = config.node_budget;
    Searcher<G> searcher(game, &table, options);
    const SearchResult r = searcher.alphabeta(pos, depth, f - 1, f + 1);
    if (r.value != f)
      throw InvariantViolation("cheapest-cutoff pass returned " + std::to_string(r.value) +
                               " but the minimax value is " + std::to_string(f));
    table.retain_best_moves_only();
  }

  NodeCountReport report = make_report(Quantity::Armg, game, depth, f);
  report.mm_d = mm_d;
  fill_counts(report, counting_pass(game, pos, depth, f, table, true, config, "ARMG"));
  return report;
}

template <GameModel G>
NodeCountReport compute_rmt(const G& game, const Position& pos, int depth, const MetrologyConfig& config) {
  if (depth < 0) throw ContractViolation("depth must be non-negative");
  TTable table(config.tt_bits);
  const Score f = find_value(game, pos, depth, table, config);

  CheapestProofSearch<G> solver(game, config.node_budget);
  const auto result = solver.solve(pos, depth, f - 1, f + 1);
  if (result.aborted) throw InvariantViolation("unbounded cheapest-proof search aborted");
  if (result.value != f)
    throw InvariantViolation("cheapest-proof search returned " + std::to_string(result.value) +
                             " but the minimax value is " + std::to_string(f));
  NodeCountReport report = make_report(Quantity::Rmt, game, depth, f);
  report.leaf_count = result.cost.leaves;
  report.interior_count = result.cost.interior;
  report.total_node_accesses = result.cost.total();
  return report;
}

template <GameModel G>
typename CheapestProofSearch<G>::Result CheapestProofSearch<G>::solve(const Position& pos, int depth, Score alpha,
                                                                      Score beta, std::uint64_t limit) {
  if (++visits_ > budget_)
    throw BudgetExceeded("cheapest-proof search exceeded the node budget of " + std::to_string(budget_));
  if (beta - alpha > 2) throw ContractViolation("cheapest-proof search needs a window of width at most 2");
  Result out;
  if (limit == 0) {
    out.aborted = true;
    return out;
  }
  MoveList moves;
  if (depth > 0) game_.generate_moves(pos, moves);
  if (moves.empty()) {
    out.value = game_.evaluate(pos);
    out.cost.leaves = 1;
    return out;
  }

  const std::size_t n = moves.size();
  std::vector<Position> children;
  children.reserve(n);
  for (Move m : moves) children.push_back(game_.apply(pos, m));

  // Every move as the first one searched, full window. A move whose value
  // reaches beta is a cutoff candidate; once one is known, later candidates
  // only need to be searched while they stay strictly cheaper.
  std::vector<Result> first(n);
  int cut = -1;
  std::uint64_t cut_total = kUnlimited;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t child_limit = saturating_sub(limit, 1);
    if (cut >= 0) child_limit = std::min(child_limit, saturating_sub(cut_total, 2));
    first[i] = solve(children[i], depth - 1, -beta, -alpha, child_limit);
    if (first[i].aborted) continue;
    first[i].value = -first[i].value;
    const std::uint64_t total = 1 + first[i].cost.total();
    if (first[i].value >= beta && total < cut_total) {
      cut = static_cast<int>(i);
      cut_total = total;
    }
  }
  if (cut >= 0) {
    out.value = first[static_cast<std::size_t>(cut)].value;
    out.cost = first[static_cast<std::size_t>(cut)].cost;
    ++out.cost.interior;
    return out;
  }

  // No cutoff. With a window of width 2 an exact node can only take the value
  // alpha + 1; a child that overran its limit above can then only be a later
  // child searched with the window (alpha + 1, beta).
  Score best = -kInfinity;
  bool any_aborted = false;
  for (const auto& r : first) {
    if (r.aborted)
      any_aborted = true;
    else
      best = std::max(best, r.value);
  }

  if (best <= alpha) {
    if (any_aborted) {
      out.aborted = true;
      return out;
    }
    TreeCost sum{0, 1};
    for (const auto& r : first) {
      sum.leaves += r.cost.leaves;
      sum.interior += r.cost.interior;
    }
    if (sum.total() > limit) {
      out.aborted = true;
      return out;
    }
    out.value = best;
    out.cost = sum;
    return out;
  }

  // Exact node: one best move goes first with the full window; every other
  // move is searched either before it with the full window (if it fails low)
  // or after it with the window (best, beta).
  std::vector<Result> later(n);
  for (std::size_t j = 0; j < n; ++j) {
    later[j] = solve(children[j], depth - 1, -beta, -best, saturating_sub(limit, 1));
    if (!later[j].aborted) later[j].value = -later[j].value;
  }
  bool found = false;
  TreeCost chosen;
  for (std::size_t c = 0; c < n; ++c) {
    if (first[c].aborted || first[c].value != best) continue;
    TreeCost total{first[c].cost.leaves, first[c].cost.interior + 1};
    bool complete = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == c) continue;
      const Result* pick = nullptr;
      if (!later[j].aborted) pick = &later[j];
      const bool may_precede = !first[j].aborted && first[j].value < best;
      if (may_precede && (pick == nullptr || first[j].cost.total() < pick->cost.total())) pick = &first[j];
      if (pick == nullptr) {
        complete = false;
        break;
      }
      total.leaves += pick->cost.leaves;
      total.interior += pick->cost.interior;
    }
    if (complete && (!found || total.total() < chosen.total())) {
      found = true;
      chosen = total;
    }
  }
  if (!found || chosen.total() > limit) {
    out.aborted = true;
    return out;
  }
  out.value = best;
  out.cost = chosen;
  return out;
}

NodeCountReport actual_report(const SearchResult& last, std::string game, Engine engine) {
  NodeCountReport r;
  r.quantity = Quantity::Actual;
  r.game = std::move(game);
  r.engine = std::string(engine_name(engine));
  r.depth = last.depth;
  r.f = last.value;
  fill_counts(r, last.stats);
  return r;
}

Efficiency efficiency_ratio(const NodeCountReport& actual, const NodeCountReport& lfmg) {
  if (actual.game != lfmg.game || actual.depth != lfmg.depth)
    throw ConfigError("efficiency ratio needs reports for the same game and depth");
  if (actual.f != lfmg.f) throw ConfigError("efficiency ratio reports disagree on the minimax value");
  Efficiency e;
  e.total = lfmg.total_node_accesses == 0
                ? 0
                : static_cast<double>(actual.total_node_accesses) / static_cast<double>(lfmg.total_node_accesses);
  e.leaf = lfmg.leaf_count == 0 ? 0 : static_cast<double>(actual.leaf_count) / static_cast<double>(lfmg.leaf_count);
  return e;
}

#define TREELAB_INSTANTIATE(G)                                                                              \
  template LeftFirstReports compute_left_first<G>(const G&, const Position&, int, const MetrologyConfig&); \
  template NodeCountReport compute_lfmt<G>(const G&, const Position&, int, const MetrologyConfig&);        \
  template NodeCountReport compute_lfmg<G>(const G&, const Position&, int, const MetrologyConfig&);        \
  template NodeCountReport compute_rmt<G>(const G&, const Position&, int, const MetrologyConfig&);         \
  template NodeCountReport compute_armg<G>(const G&, const Position&, int, int, const MetrologyConfig&);   \
  template class CheapestProofSearch<G>;

TREELAB_INSTANTIATE(Othello6)
TREELAB_INSTANTIATE(MiniCheckers)
TREELAB_INSTANTIATE(SyntheticGame)

#undef TREELAB_INSTANTIATE

}  // namespace treelab
