#include "doctest.h"
#include "treelab/search.hpp"
#include "treelab/ttable.hpp"

#include "oracles.hpp"

using namespace treelab;

namespace {

TTEntry entry(std::uint64_t key, Score value, int depth, Bound bound, Move best = kNoMove) {
  return {.key = key, .value = value, .depth = static_cast<std::int16_t>(depth), .bound = bound, .best_move = best};
}

}  // namespace

TEST_CASE("probe on an empty table misses") {
  TTable t(12);
  CHECK_FALSE(t.probe(12345).has_value());
  CHECK(t.counters().probes == 1);
  CHECK(t.counters().hits == 0);
  CHECK(t.counters().collisions == 0);
  CHECK(t.capacity() == 4096);
}

TEST_CASE("store then probe round trip") {
  TTable t(12);
  t.store(entry(99, 13, 5, Bound::Lower, Move(7)));
  const auto e = t.probe(99);
  REQUIRE(e.has_value());
  CHECK(e->value == 13);
  CHECK(e->depth == 5);
  CHECK(e->bound == Bound::Lower);
  CHECK(e->best_move == Move(7));
  CHECK(t.counters().hits == 1);
  CHECK(t.occupancy() == 1);
}

TEST_CASE("colliding keys are detected") {
  TTable t(12);
  const std::uint64_t k1 = 0xABCDEF000ULL | 5;
  const std::uint64_t k2 = k1 + (std::uint64_t{1} << 12);
  REQUIRE(t.slot_of(k1) == t.slot_of(k2));
  t.store(entry(k1, 1, 3, Bound::Exact));
  CHECK_FALSE(t.probe(k2).has_value());
  CHECK(t.counters().collisions == 1);
}

TEST_CASE("two-tier replacement") {
  const std::uint64_t k1 = 0x1000;
  const std::uint64_t k2 = k1 + (std::uint64_t{1} << 12);
  SUBCASE("shallow over deep, same age: deep retained") {
    TTable t(12);
    t.store(entry(k1, 1, 6, Bound::Exact));
    t.store(entry(k2, 2, 2, Bound::Exact));
    CHECK(t.peek(k1) != nullptr);
    CHECK(t.peek(k2) == nullptr);
    CHECK(t.counters().refused == 1);
  }
  SUBCASE("deep over shallow: deep stored") {
    TTable t(12);
    t.store(entry(k1, 1, 2, Bound::Exact));
    t.store(entry(k2, 2, 6, Bound::Exact));
    CHECK(t.peek(k1) == nullptr);
    REQUIRE(t.peek(k2) != nullptr);
    CHECK(t.peek(k2)->depth == 6);
    CHECK(t.counters().evictions == 1);
  }
  SUBCASE("newer age always replaces") {
    TTable t(12);
    t.store(entry(k1, 1, 9, Bound::Exact));
    t.new_search();
    t.store(entry(k2, 2, 1, Bound::Upper));
    REQUIRE(t.peek(k2) != nullptr);
    CHECK(t.peek(k2)->age == t.age());
  }
  SUBCASE("keep-move policy never evicts and keeps the existing move") {
    TTable t(12);
    t.store(entry(k1, 1, 1, Bound::Exact, Move(3)));
    t.new_search();
    t.store(entry(k2, 2, 9, Bound::Exact), StorePolicy::KeepMove);
    CHECK(t.peek(k2) == nullptr);
    t.store(entry(k1, 4, 2, Bound::Lower, Move(8)), StorePolicy::KeepMove);
    CHECK(t.peek(k1)->best_move == Move(3));
    CHECK(t.peek(k1)->value == 4);
    t.store(entry(k1, 5, 2, Bound::Lower, Move(8)), StorePolicy::NoEvict);
    CHECK(t.peek(k1)->best_move == Move(8));
  }
}

TEST_CASE("retain_best_moves_only") {
  TTable t(12);
  t.store(entry(77, 13, 5, Bound::Lower, Move(4)));
  t.retain_best_moves_only();
  const auto e = t.probe(77);
  REQUIRE(e.has_value());
  CHECK(e->best_move == Move(4));
  CHECK_FALSE(e->has_value());
  CHECK_FALSE(TTable::sufficient(*e, 0, -kInfinity, kInfinity).has_value());
  CHECK(t.occupancy() == 1);

  TTable empty(12);
  empty.retain_best_moves_only();
  CHECK(empty.occupancy() == 0);
}

TEST_CASE("sufficient") {
  CHECK(TTable::sufficient(entry(1, 10, 4, Bound::Lower), 3, -1, 1) == 10);
  CHECK_FALSE(TTable::sufficient(entry(1, 5, 2, Bound::Exact), 4, -kInfinity, kInfinity).has_value());
  CHECK_FALSE(TTable::sufficient(entry(1, 0, 4, Bound::Upper), 3, -1, 1).has_value());
  CHECK(TTable::sufficient(entry(1, -1, 4, Bound::Upper), 3, -1, 1) == -1);
  CHECK(TTable::sufficient(entry(1, 5, 4, Bound::Exact), 4, -kInfinity, kInfinity) == 5);
  CHECK_FALSE(TTable::sufficient(entry(1, 0, 4, Bound::Lower), 3, -1, 1).has_value());
}

TEST_CASE("table size limits") {
  CHECK_THROWS_AS(TTable(3), ConfigError);
  CHECK_THROWS_AS(TTable(29), ConfigError);
  CHECK(TTable().capacity() == (std::size_t{1} << 21));
}

TEST_CASE("table never changes the minimax value") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const SyntheticGame g({.seed = seed, .min_branching = 2, .max_branching = 4, .depth = 6,
                           .transpositions = (seed % 3) * 0.5});
    const Position root = g.initial();
    const Score truth = oracle::minimax(g, root, 6);
    TTable t(14);
    Searcher<SyntheticGame> with(g, &t);
    Searcher<SyntheticGame> without(g, nullptr);
    CHECK(with.iterative_deepening(root, 6, Engine::AlphaBeta).back().value == truth);
    CHECK(without.alphabeta(root, 6).value == truth);
  }
}

TEST_CASE("table counters are deterministic") {
  const SyntheticGame g({.seed = 3, .min_branching = 3, .max_branching = 3, .depth = 6, .transpositions = 0.5});
  auto run = [&] {
    TTable t(10);
    Searcher<SyntheticGame> s(g, &t);
    s.iterative_deepening(g.initial(), 6, Engine::NegaScout);
    return t.counters();
  };
  const auto a = run();
  const auto b = run();
  CHECK(a.probes == b.probes);
  CHECK(a.hits == b.hits);
  CHECK(a.collisions == b.collisions);
  CHECK(a.collisions > 0);
}
