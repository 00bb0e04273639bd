#include "doctest.h"
#include "treelab/etc.hpp"
#include "treelab/search.hpp"

#include "oracles.hpp"

using namespace treelab;

TEST_CASE("etc_enabled_at") {
  const EtcConfig on{.enabled = true};
  CHECK(etc_enabled_at(3, on));
  CHECK_FALSE(etc_enabled_at(2, on));
  for (int d = 0; d < 10; ++d) CHECK_FALSE(etc_enabled_at(d, EtcConfig{}));
}

TEST_CASE("etc_probe on an empty table finds nothing") {
  const SyntheticGame g({.seed = 1, .min_branching = 3, .max_branching = 3, .depth = 6, .transpositions = 1.0});
  const Position root = g.initial();
  TTable t(12);
  SearchStats stats;
  const MoveList moves = g.legal_moves(root);
  CHECK_FALSE(etc_probe(g, root, moves.span(), 4, -10, 10, t, stats).has_value());
  CHECK(stats.etc_cutoffs == 0);
  CHECK(stats.etc_probes == 3);
  CHECK(t.occupancy() == 0);
}

TEST_CASE("transposed child already searched settles the parent without expansion") {
  // N = root + b; its child C = root + b + a is the same state as root + a + b
  // (shared labels commute), which a search of the left line has stored.
  const SyntheticGame g({.seed = 77, .min_branching = 3, .max_branching = 3, .depth = 6, .transpositions = 1.0});
  const Position root = g.initial();
  const MoveList root_moves = g.legal_moves(root);
  bool checked = false;
  for (Move a : root_moves) {
    for (Move b : root_moves) {
      if (a == b) continue;
      const Position pa = g.apply(root, a);
      const Position pb = g.apply(root, b);
      if (!g.legal_moves(pa).contains(b) || !g.legal_moves(pb).contains(a)) continue;
      const Position a_node = g.apply(pa, b);  // "A" in the figure
      const Position n_node = pb;              // "N"
      REQUIRE(g.apply(n_node, a).hash == a_node.hash);

      const int depth = 4;
      TTable t(12);
      // A searched earlier to depth-1 and proved to be at most -5 for its side to move.
      t.store({.key = a_node.hash, .value = -5, .depth = depth - 1, .bound = Bound::Upper, .best_move = kNoMove});
      const std::size_t before = t.occupancy();

      SearchStats stats;
      const MoveList moves = g.legal_moves(n_node);
      const auto cut = etc_probe(g, n_node, moves.span(), depth, -10, 5, t, stats);
      REQUIRE(cut.has_value());
      CHECK(cut->value == 5);
      CHECK(cut->move == a);
      CHECK(stats.etc_cutoffs == 1);
      CHECK(t.occupancy() == before);

      SearchOptions opts;
      opts.etc.enabled = true;
      Searcher<SyntheticGame> s(g, &t, opts);
      const auto r = s.alphabeta(n_node, depth, -10, 5);
      CHECK(r.value >= 5);
      CHECK(r.stats.interior_expansions == 0);
      CHECK(r.stats.leaf_evaluations == 0);
      CHECK(r.stats.tt_cutoffs == 1);
      CHECK(r.stats.etc_cutoffs == 1);
      CHECK(r.stats.node_accesses() == 1);

      // The same entry is not deep enough for a deeper parent.
      SearchStats shallow;
      CHECK_FALSE(etc_probe(g, n_node, moves.span(), depth + 2, -10, 5, t, shallow).has_value());
      checked = true;
      break;
    }
    if (checked) break;
  }
  CHECK(checked);
}

TEST_CASE("entries present but not sufficient: no cutoff and unchanged value") {
  const SyntheticGame g({.seed = 5, .min_branching = 3, .max_branching = 3, .depth = 6, .transpositions = 1.0});
  const Position root = g.initial();
  TTable t(12);
  for (Move m : g.legal_moves(root))
    t.store({.key = g.apply(root, m).hash, .value = 100, .depth = 5, .bound = Bound::Lower, .best_move = kNoMove});
  SearchStats stats;
  const MoveList moves = g.legal_moves(root);
  CHECK_FALSE(etc_probe(g, root, moves.span(), 6, -50, 50, t, stats).has_value());
}

TEST_CASE("ETC never changes the value") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const SyntheticGame g({.seed = seed, .min_branching = 2, .max_branching = 5, .depth = 7,
                           .transpositions = 0.25 * static_cast<double>(seed % 5)});
    const Position root = g.initial();
    const Score truth = oracle::minimax(g, root, 7);
    for (Engine e : kAllEngines) {
      SearchOptions opts;
      opts.etc.enabled = true;
      opts.etc.min_remaining_depth = 1 + static_cast<int>(seed % 3);
      TTable t(14);
      Searcher<SyntheticGame> s(g, &t, opts);
      CHECK(s.iterative_deepening(root, 7, e).back().value == truth);
    }
  }
}

TEST_CASE("ETC reduces node accesses on transposition-rich games") {
  std::uint64_t with_etc = 0;
  std::uint64_t without = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SyntheticGame g({.seed = seed, .min_branching = 4, .max_branching = 4, .depth = 7, .transpositions = 0.75});
    for (bool etc : {false, true}) {
      SearchOptions opts;
      opts.etc.enabled = etc;
      TTable t(18);
      Searcher<SyntheticGame> s(g, &t, opts);
      const auto r = s.iterative_deepening(g.initial(), 7, Engine::AspNegaScout).back();
      (etc ? with_etc : without) += r.stats.node_accesses();
    }
  }
  MESSAGE("node accesses, ETC off: " << without << ", on: " << with_etc);
  CHECK(with_etc <= without);
}
