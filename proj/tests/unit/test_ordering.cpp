#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "treelab/ordering.hpp"
#include "treelab/search.hpp"

#include "oracles.hpp"

using namespace treelab;

namespace {

std::vector<Move> ordered(std::vector<Move> moves, Move first, const HistoryTable* hist) {
  order_moves(std::span<Move>(moves), first, hist, [](Move m) { return static_cast<int>(m.code); });
  return moves;
}

}  // namespace

TEST_CASE("table move goes first") {
  const std::vector<Move> moves{Move(10), Move(11), Move(12), Move(13)};
  const auto out = ordered(moves, Move(12), nullptr);
  CHECK(out == std::vector<Move>{Move(12), Move(10), Move(11), Move(13)});
}

TEST_CASE("empty history and no table move keep the static order") {
  const std::vector<Move> moves{Move(5), Move(3), Move(9)};
  HistoryTable hist;
  CHECK(ordered(moves, kNoMove, &hist) == moves);
  CHECK(ordered(moves, kNoMove, nullptr) == moves);
}

TEST_CASE("history sorts the remaining moves") {
  const Move a(1);
  const Move b(2);
  HistoryTable hist;
  hist.add(b.code, 9);
  hist.add(a.code, 5);
  CHECK(ordered({a, b}, kNoMove, &hist) == std::vector<Move>{b, a});

  const Move c(3);
  CHECK(ordered({a, b, c}, c, &hist) == std::vector<Move>{c, b, a});
}

TEST_CASE("table move missing from the list is ignored") {
  const std::vector<Move> moves{Move(1), Move(2)};
  std::vector<Move> copy = moves;
  const bool found = order_moves(std::span<Move>(copy), Move(99), nullptr, [](Move m) { return int(m.code); });
  CHECK_FALSE(found);
  CHECK(copy == moves);
}

TEST_CASE("history update adds depth squared") {
  HistoryTable hist;
  history_update(hist, 7, 4);
  CHECK(hist.score(7) == 16);
  history_update(hist, 8, 0);
  CHECK(hist.score(8) == 0);
  history_update(hist, 9, 3);
  history_update(hist, 9, 2);
  CHECK(hist.score(9) == 13);
}

TEST_CASE("cutoff rank histogram") {
  SearchStats s;
  record_cutoff_rank(s, 3, 0);
  REQUIRE(s.cutoff_rank_histogram.size() >= 4);
  CHECK(s.cutoff_rank_histogram[3][0] == 1);
  record_cutoff_rank(s, 3, 2);
  record_cutoff_rank(s, 3, 0);
  record_cutoff_rank(s, 3, 0);
  CHECK(s.first_move_cutoff_rate(3).value() == doctest::Approx(0.75));
  CHECK_FALSE(s.first_move_cutoff_rate(1).has_value());
  CHECK_FALSE(s.first_move_cutoff_rate(10).has_value());
}

TEST_CASE("an ALL node records no cutoff") {
  // Depth-1 full-window search: the root examines every move and never cuts.
  const SyntheticGame g({.seed = 4, .min_branching = 3, .max_branching = 3, .depth = 1});
  Searcher<SyntheticGame> s(g, nullptr);
  const auto r = s.alphabeta(g.initial(), 1);
  CHECK(r.stats.cutoff_rank_histogram.empty());
}

TEST_CASE("ordering changes counts, never values") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const SyntheticGame g({.seed = seed, .min_branching = 2, .max_branching = 4, .depth = 5, .transpositions = 0.3});
    const Position root = g.initial();
    const Score truth = oracle::minimax(g, root, 5);
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 5; ++trial) {
      SearchOptions opts;
      opts.use_history = false;
      const std::uint64_t salt = rng();
      opts.oracle = [&g, salt](const Position& p, int) {
        const MoveList moves = g.legal_moves(p);
        return moves[mix64(p.hash, salt) % moves.size()];
      };
      Searcher<SyntheticGame> s(g, nullptr, opts);
      CHECK(s.alphabeta(root, 5).value == truth);
    }
  }
}

TEST_CASE("first-move cutoff rate is higher near the root than at the deepest ordered level") {
  const SyntheticGame g({.seed = 11, .min_branching = 4, .max_branching = 6, .depth = 7, .value_range = 100});
  TTable t(18);
  Searcher<SyntheticGame> s(g, &t);
  const auto last = s.iterative_deepening(g.initial(), 7, Engine::AspNegaScout).back();
  const auto shallow = last.stats.first_move_cutoff_rate(1);
  const auto deep = last.stats.first_move_cutoff_rate(6);
  REQUIRE(shallow.has_value());
  REQUIRE(deep.has_value());
  CHECK(*shallow > *deep);
}
