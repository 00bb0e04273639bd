#pragma once

#include <cstdint>

#include "treelab/position.hpp"
#include "treelab/types.hpp"

namespace treelab {

// Checkers on a 6x6 board with six men per side, no kings and a single jump per
// move. Captures are forced. Pieces live on dark squares ((row + col) odd).
// bits[0] holds MAX's men (moving toward row 0), bits[1] MIN's men (toward row 5).
// A side with no legal move loses.
class MiniCheckers {
 public:
  static constexpr int kSize = 6;
  static constexpr int kSquares = 36;
  static constexpr std::uint64_t kDarkSquares = [] {
    std::uint64_t m = 0;
    for (int r = 0; r < kSize; ++r)
      for (int c = 0; c < kSize; ++c)
        if ((r + c) % 2 == 1) m |= std::uint64_t{1} << (r * kSize + c);
    return m;
  }();

  static constexpr Move encode(int from, int to) {
    return Move(static_cast<std::uint16_t>(from * kSquares + to));
  }
  static constexpr int from_square(Move m) { return m.code / kSquares; }
  static constexpr int to_square(Move m) { return m.code % kSquares; }
  static constexpr bool is_capture(Move m) {
    int d = from_square(m) / kSize - to_square(m) / kSize;
    return d == 2 || d == -2;
  }

  Position initial() const;
  Position from_men(std::uint64_t max_men, std::uint64_t min_men, Side to_move, int ply = 0) const;

  void generate_moves(const Position& pos, MoveList& out) const;
  MoveList legal_moves(const Position& pos) const;
  Position apply(const Position& pos, Move m) const;
  Score evaluate(const Position& pos) const;
  bool is_terminal(const Position& pos) const;
  std::uint64_t zobrist_hash(const Position& pos) const;
  int history_index(Move m) const { return m.code; }
};

}  // namespace treelab
