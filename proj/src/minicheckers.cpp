#include "treelab/minicheckers.hpp"

#include <bit>

namespace treelab {

namespace {

constexpr int kSize = MiniCheckers::kSize;

std::uint64_t hash_men(std::uint64_t max_men, std::uint64_t min_men, Side side) {
  const auto& keys = zobrist_keys();
  std::uint64_t h = side == Side::Min ? keys.side_to_move : 0;
  for (std::uint64_t b = max_men; b; b &= b - 1) h ^= keys.piece[0][std::countr_zero(b)];
  for (std::uint64_t b = min_men; b; b &= b - 1) h ^= keys.piece[1][std::countr_zero(b)];
  return h;
}

bool on_board(int r, int c) { return r >= 0 && r < kSize && c >= 0 && c < kSize; }

}  // namespace

Position MiniCheckers::initial() const {
  std::uint64_t max_men = 0;
  std::uint64_t min_men = 0;
  for (int r = 0; r < kSize; ++r)
    for (int c = 0; c < kSize; ++c) {
      const std::uint64_t bit = std::uint64_t{1} << (r * kSize + c);
      if (!(bit & kDarkSquares)) continue;
      if (r <= 1) min_men |= bit;
      if (r >= 4) max_men |= bit;
    }
  return from_men(max_men, min_men, Side::Max);
}

Position MiniCheckers::from_men(std::uint64_t max_men, std::uint64_t min_men, Side to_move,
                                int ply) const {
  if ((max_men | min_men) & ~kDarkSquares) throw ContractViolation("minicheckers: man on a light square");
  if (max_men & min_men) throw ContractViolation("minicheckers: overlapping men");
  Position p;
  p.bits = {max_men, min_men};
  p.side = to_move;
  p.ply = static_cast<std::uint16_t>(ply);
  p.hash = hash_men(max_men, min_men, to_move);
  return p;
}

// Static order: by origin square, then left diagonal before right.
void MiniCheckers::generate_moves(const Position& pos, MoveList& out) const {
  out.clear();
  const int me = index_of(pos.side);
  const std::uint64_t own = pos.bits[me];
  const std::uint64_t opp = pos.bits[1 - me];
  const std::uint64_t occupied = own | opp;
  const int forward = pos.side == Side::Max ? -1 : 1;

  MoveList quiet;
  for (std::uint64_t b = own; b; b &= b - 1) {
    const int from = std::countr_zero(b);
    const int r = from / kSize;
    const int c = from % kSize;
    for (int dc : {-1, 1}) {
      const int r1 = r + forward;
      const int c1 = c + dc;
      if (!on_board(r1, c1)) continue;
      const int over = r1 * kSize + c1;
      const std::uint64_t over_bit = std::uint64_t{1} << over;
      if (!(occupied & over_bit)) {
        quiet.push_back(encode(from, over));
        continue;
      }
      if (!(opp & over_bit)) continue;
      const int r2 = r1 + forward;
      const int c2 = c1 + dc;
      if (!on_board(r2, c2)) continue;
      const int to = r2 * kSize + c2;
      if (!(occupied & (std::uint64_t{1} << to))) out.push_back(encode(from, to));
    }
  }
  if (out.empty())
    for (Move m : quiet) out.push_back(m);
}

MoveList MiniCheckers::legal_moves(const Position& pos) const {
  MoveList moves;
  generate_moves(pos, moves);
  if (moves.empty()) throw ContractViolation("minicheckers: legal_moves on a terminal position");
  return moves;
}

Position MiniCheckers::apply(const Position& pos, Move m) const {
  const auto& keys = zobrist_keys();
  const int me = index_of(pos.side);
  const int them = 1 - me;
  const int from = from_square(m);
  const int to = to_square(m);
  const std::uint64_t from_bit = std::uint64_t{1} << from;
  const std::uint64_t to_bit = std::uint64_t{1} << to;
  if (m.code >= kSquares * kSquares || !(pos.bits[me] & from_bit) ||
      ((pos.bits[0] | pos.bits[1]) & to_bit))
    throw ContractViolation("minicheckers: illegal move");

  Position next = pos;
  next.bits[me] = (pos.bits[me] & ~from_bit) | to_bit;
  next.hash ^= keys.piece[me][from] ^ keys.piece[me][to] ^ keys.side_to_move;
  if (is_capture(m)) {
    const int over = (from + to) / 2;
    const std::uint64_t over_bit = std::uint64_t{1} << over;
    if (!(pos.bits[them] & over_bit)) throw ContractViolation("minicheckers: jump over empty square");
    next.bits[them] &= ~over_bit;
    next.hash ^= keys.piece[them][over];
  }
  next.side = opponent(pos.side);
  next.ply = static_cast<std::uint16_t>(pos.ply + 1);
  return next;
}

bool MiniCheckers::is_terminal(const Position& pos) const {
  MoveList moves;
  generate_moves(pos, moves);
  return moves.empty();
}

// Material plus advancement; a side to move without moves has lost.
Score MiniCheckers::evaluate(const Position& pos) const {
  if (is_terminal(pos)) return loss_in(pos.ply);
  int advance[2] = {0, 0};
  for (std::uint64_t b = pos.bits[0]; b; b &= b - 1) advance[0] += (kSize - 1) - std::countr_zero(b) / kSize;
  for (std::uint64_t b = pos.bits[1]; b; b &= b - 1) advance[1] += std::countr_zero(b) / kSize;
  const long long max_view = 100LL * (std::popcount(pos.bits[0]) - std::popcount(pos.bits[1])) +
                             5LL * (advance[0] - advance[1]);
  return clamp_heuristic(pos.side == Side::Max ? max_view : -max_view);
}

std::uint64_t MiniCheckers::zobrist_hash(const Position& pos) const {
  return hash_men(pos.bits[0], pos.bits[1], pos.side);
}

}  // namespace treelab
