#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treelab/game.hpp"
#include "treelab/search.hpp"
#include "treelab/ttable.hpp"

namespace treelab {

enum class Quantity { Actual, Lfmt, Lfmg, Rmt, Armg };

std::string_view quantity_name(Quantity q);
std::optional<Quantity> parse_quantity(std::string_view name);

// The table filled by the first search was too full to serve as a move oracle.
class TableSaturated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NodeCountReport {
  Quantity quantity = Quantity::Actual;
  std::string game;
  std::string engine;  // search engine for Actual, "-" for metrology quantities
  int depth = 0;
  int mm_d = 0;
  Score window_alpha = -kInfinity;
  Score window_beta = kInfinity;
  Score f = 0;  // minimax value the count proves
  std::uint64_t leaf_count = 0;
  std::uint64_t interior_count = 0;
  std::uint64_t tt_cutoffs = 0;
  std::uint64_t total_node_accesses = 0;
  std::uint64_t oracle_misses = 0;
  std::uint64_t tt_hits = 0;
  std::uint64_t etc_cutoffs = 0;
};

struct MetrologyConfig {
  int tt_bits = TTable::kDefaultBits;
  Engine first_engine = Engine::NegaScout;  // search that finds f and the best moves
  bool history = true;
  Score aspiration_delta = 50;
  std::uint64_t node_budget = 100'000'000;
  double max_occupancy = 0.9;
};

struct LeftFirstReports {
  NodeCountReport lfmt;
  NodeCountReport lfmg;
};

// Left-first minimal tree and graph: (1) iterative-deepening search for f that
// leaves a best move per node in the table, (2) keep only best moves and
// re-search with window (f-1, f+1) using them as the first move, no table
// cutoffs (tree), (3) the same traversal with table cutoffs allowed from
// entries written during the traversal itself (graph).
template <GameModel G>
LeftFirstReports compute_left_first(const G& game, const Position& pos, int depth, const MetrologyConfig& config);

template <GameModel G>
NodeCountReport compute_lfmt(const G& game, const Position& pos, int depth, const MetrologyConfig& config);

template <GameModel G>
NodeCountReport compute_lfmg(const G& game, const Position& pos, int depth, const MetrologyConfig& config);

// Real minimal tree: the smallest alpha-beta tree proving f with window
// (f-1, f+1) when every cutoff node may use its cheapest cutoff move.
// Exhaustive; transpositions are not used.
template <GameModel G>
NodeCountReport compute_rmt(const G& game, const Position& pos, int depth, const MetrologyConfig& config);

// Approximate real minimal graph: the left-first procedure where, in a pass
// between steps 1 and 3, nodes within `mm_d` plies of the horizon keep
// searching after a cutoff and record the cutoff move with the smallest
// subtree. The final count is a fresh traversal over the resulting moves.
template <GameModel G>
NodeCountReport compute_armg(const G& game, const Position& pos, int depth, int mm_d, const MetrologyConfig& config);

// Counts of the last iteration of an iterative-deepening run.
NodeCountReport actual_report(const SearchResult& last_iteration, std::string game, Engine engine);

struct Efficiency {
  double total = 0;  // actual.total_node_accesses / lfmg.total_node_accesses
  double leaf = 0;   // actual.leaf_count / lfmg.leaf_count
};

// Throws ConfigError when the reports describe different searches.
Efficiency efficiency_ratio(const NodeCountReport& actual, const NodeCountReport& lfmg);

// Cost of an alpha-beta traversal counted in nodes.
struct TreeCost {
  std::uint64_t leaves = 0;
  std::uint64_t interior = 0;
  std::uint64_t total() const { return leaves + interior; }
};

// Exhaustive minimum-cost proof search behind compute_rmt.
template <GameModel G>
class CheapestProofSearch {
 public:
  static constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

  struct Result {
    Score value = 0;
    TreeCost cost;
    bool aborted = false;
  };

  CheapestProofSearch(const G& game, std::uint64_t budget) : game_(game), budget_(budget) {}

  // Minimum cost of an alpha-beta traversal of `pos` with window (alpha, beta),
  // over all move orders at every node. The window must be at most 2 wide, as
  // every window derived from (f-1, f+1) is. Gives up (aborted) once the cost
  // provably exceeds `limit`.
  Result solve(const Position& pos, int depth, Score alpha, Score beta, std::uint64_t limit = kUnlimited);

  std::uint64_t visits() const { return visits_; }

 private:
  const G& game_;
  std::uint64_t budget_;
  std::uint64_t visits_ = 0;
};

}  // namespace treelab
