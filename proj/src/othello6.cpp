#include "treelab/othello6.hpp"

#include <bit>

namespace treelab {

namespace {

constexpr std::uint64_t kFull = Othello6::kBoardMask;
constexpr std::uint64_t kCol0 = 0x041041041ULL;  // column 0 of each row
constexpr std::uint64_t kCol5 = kCol0 << 5;
constexpr std::uint64_t kCorners = (1ULL << 0) | (1ULL << 5) | (1ULL << 30) | (1ULL << 35);

// Shift in one of the eight directions, dropping bits that wrap across a row edge.
constexpr std::uint64_t shift(std::uint64_t b, int dir) {
  switch (dir) {
    case 0: return (b << 1) & ~kCol0 & kFull;  // east
    case 1: return (b >> 1) & ~kCol5;          // west
    case 2: return (b << 6) & kFull;           // south
    case 3: return b >> 6;                     // north
    case 4: return (b << 7) & ~kCol0 & kFull;  // south-east
    case 5: return (b << 5) & ~kCol5 & kFull;  // south-west
    case 6: return (b >> 5) & ~kCol0;          // north-east
    default: return (b >> 7) & ~kCol5;         // north-west
  }
}

std::uint64_t hash_discs(std::uint64_t max_discs, std::uint64_t min_discs, Side side) {
  const auto& keys = zobrist_keys();
  std::uint64_t h = side == Side::Min ? keys.side_to_move : 0;
  for (std::uint64_t b = max_discs; b; b &= b - 1) h ^= keys.piece[0][std::countr_zero(b)];
  for (std::uint64_t b = min_discs; b; b &= b - 1) h ^= keys.piece[1][std::countr_zero(b)];
  return h;
}

}  // namespace

std::uint64_t Othello6::placements(std::uint64_t own, std::uint64_t opp) {
  const std::uint64_t empty = ~(own | opp) & kFull;
  std::uint64_t moves = 0;
  for (int dir = 0; dir < 8; ++dir) {
    std::uint64_t run = shift(own, dir) & opp;
    for (int i = 0; i < 3; ++i) run |= shift(run, dir) & opp;
    moves |= shift(run, dir) & empty;
  }
  return moves;
}

std::uint64_t Othello6::flips(std::uint64_t own, std::uint64_t opp, int square) {
  const std::uint64_t origin = std::uint64_t{1} << square;
  std::uint64_t flipped = 0;
  for (int dir = 0; dir < 8; ++dir) {
    std::uint64_t line = 0;
    std::uint64_t cur = shift(origin, dir);
    while (cur & opp) {
      line |= cur;
      cur = shift(cur, dir);
    }
    if (cur & own) flipped |= line;
  }
  return flipped;
}

Position Othello6::initial() const {
  // d3/c4 style start: (2,2) and (3,3) MIN, (2,3) and (3,2) MAX.
  const std::uint64_t max_discs = (1ULL << (2 * 6 + 3)) | (1ULL << (3 * 6 + 2));
  const std::uint64_t min_discs = (1ULL << (2 * 6 + 2)) | (1ULL << (3 * 6 + 3));
  return from_discs(max_discs, min_discs, Side::Max);
}

Position Othello6::from_discs(std::uint64_t max_discs, std::uint64_t min_discs, Side to_move,
                              int ply) const {
  if ((max_discs | min_discs) & ~kFull) throw ContractViolation("othello6: disc outside the board");
  if (max_discs & min_discs) throw ContractViolation("othello6: overlapping discs");
  Position p;
  p.bits = {max_discs, min_discs};
  p.side = to_move;
  p.ply = static_cast<std::uint16_t>(ply);
  p.hash = hash_discs(max_discs, min_discs, to_move);
  return p;
}

void Othello6::generate_moves(const Position& pos, MoveList& out) const {
  out.clear();
  const std::uint64_t own = pos.bits[index_of(pos.side)];
  const std::uint64_t opp = pos.bits[index_of(opponent(pos.side))];
  std::uint64_t moves = placements(own, opp);
  if (moves == 0) {
    if (placements(opp, own) != 0) out.push_back(kPass);
    return;
  }
  for (; moves; moves &= moves - 1) out.push_back(Move(static_cast<std::uint16_t>(std::countr_zero(moves))));
}

MoveList Othello6::legal_moves(const Position& pos) const {
  MoveList moves;
  generate_moves(pos, moves);
  if (moves.empty()) throw ContractViolation("othello6: legal_moves on a terminal position");
  return moves;
}

Position Othello6::apply(const Position& pos, Move m) const {
  const auto& keys = zobrist_keys();
  Position next = pos;
  next.side = opponent(pos.side);
  next.ply = static_cast<std::uint16_t>(pos.ply + 1);
  next.hash ^= keys.side_to_move;
  if (m == kPass) return next;
  if (m.code >= kSquares) throw ContractViolation("othello6: bad move code");

  const int me = index_of(pos.side);
  const int them = 1 - me;
  const std::uint64_t own = pos.bits[me];
  const std::uint64_t opp = pos.bits[them];
  const std::uint64_t origin = std::uint64_t{1} << m.code;
  if ((own | opp) & origin) throw ContractViolation("othello6: square occupied");
  const std::uint64_t flipped = flips(own, opp, m.code);
  if (flipped == 0) throw ContractViolation("othello6: placement flips nothing");

  next.bits[me] = own | origin | flipped;
  next.bits[them] = opp & ~flipped;
  next.hash ^= keys.piece[me][m.code];
  for (std::uint64_t b = flipped; b; b &= b - 1) {
    const int sq = std::countr_zero(b);
    next.hash ^= keys.piece[me][sq] ^ keys.piece[them][sq];
  }
  return next;
}

bool Othello6::is_terminal(const Position& pos) const {
  return placements(pos.bits[0], pos.bits[1]) == 0 && placements(pos.bits[1], pos.bits[0]) == 0;
}

Score Othello6::evaluate(const Position& pos) const {
  const std::uint64_t own = pos.bits[index_of(pos.side)];
  const std::uint64_t opp = pos.bits[index_of(opponent(pos.side))];
  const int disc_diff = std::popcount(own) - std::popcount(opp);
  if (is_terminal(pos)) {
    if (disc_diff > 0) return win_in(pos.ply);
    if (disc_diff < 0) return loss_in(pos.ply);
    return 0;
  }
  const int corner_diff = std::popcount(own & kCorners) - std::popcount(opp & kCorners);
  return clamp_heuristic(10LL * disc_diff + 40LL * corner_diff);
}

std::uint64_t Othello6::zobrist_hash(const Position& pos) const {
  return hash_discs(pos.bits[0], pos.bits[1], pos.side);
}

}  // namespace treelab
