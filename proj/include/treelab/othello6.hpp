#pragma once

#include <cstdint>

#include "treelab/position.hpp"
#include "treelab/types.hpp"

namespace treelab {

// 6x6 Othello on 36-bit bitboards. Square index = row * 6 + col.
// bits[0] holds MAX's discs (first player), bits[1] holds MIN's discs.
// A side without a placement passes; the game ends when neither side can place.
class Othello6 {
 public:
  static constexpr int kSize = 6;
  static constexpr int kSquares = 36;
  static constexpr std::uint64_t kBoardMask = (std::uint64_t{1} << kSquares) - 1;
  static constexpr Move kPass{36};

  Position initial() const;
  Position from_discs(std::uint64_t max_discs, std::uint64_t min_discs, Side to_move,
                      int ply = 0) const;

  void generate_moves(const Position& pos, MoveList& out) const;
  MoveList legal_moves(const Position& pos) const;
  Position apply(const Position& pos, Move m) const;
  Score evaluate(const Position& pos) const;
  bool is_terminal(const Position& pos) const;
  std::uint64_t zobrist_hash(const Position& pos) const;
  int history_index(Move m) const { return m.code; }

  static std::uint64_t placements(std::uint64_t own, std::uint64_t opp);
  static std::uint64_t flips(std::uint64_t own, std::uint64_t opp, int square);
};

}  // namespace treelab
