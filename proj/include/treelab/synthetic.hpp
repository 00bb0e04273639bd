#pragma once

#include <cstdint>

#include "treelab/position.hpp"
#include "treelab/types.hpp"

namespace treelab {

struct SyntheticParams {
  std::uint64_t seed = 42;
  int min_branching = 3;
  int max_branching = 3;
  int depth = 4;              // nodes at this ply are terminal leaves
  double transpositions = 0;  // fraction of move slots drawn from the shared label pool
  int value_range = 100;      // per-move value deltas are uniform in [-v, v]

  friend bool operator==(const SyntheticParams&, const SyntheticParams&) = default;
};

// Seeded random game tree/DAG.
//
// A state is the set of shared labels played so far (bits[0]), the XOR of the
// path-unique labels played so far (bits[1]) and the side to move. Shared
// labels commute: any order of the same shared moves reaches the same state.
// With transpositions = 0 every label is path-unique and the space is a tree.
//
// Move codes: 0..63 name a shared label, 64 + k names the k-th unique slot.
// The value of a state is the sum of its labels' deltas (kept in `accum`, from
// MAX's view) plus a small hash-derived perturbation.
class SyntheticGame {
 public:
  static constexpr int kMaxBranching = 48;
  static constexpr int kPoolSize = 64;
  static constexpr std::uint16_t kUniqueBase = 64;

  explicit SyntheticGame(SyntheticParams params);

  const SyntheticParams& params() const { return params_; }

  Position initial(Side to_move = Side::Max) const;

  void generate_moves(const Position& pos, MoveList& out) const;
  MoveList legal_moves(const Position& pos) const;
  Position apply(const Position& pos, Move m) const;
  Score evaluate(const Position& pos) const;
  bool is_terminal(const Position& pos) const { return pos.ply >= params_.depth; }
  std::uint64_t zobrist_hash(const Position& pos) const;
  int history_index(Move m) const { return m.code; }

  // Throws ContractViolation when the parameters are out of range.
  static void validate(const SyntheticParams& params);

 private:
  std::uint64_t node_key(const Position& pos) const { return pos.hash ^ salt_; }
  Score label_delta(std::uint64_t label_key) const;

  SyntheticParams params_;
  std::uint64_t salt_;
};

}  // namespace treelab
