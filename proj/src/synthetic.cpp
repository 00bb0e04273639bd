#include "treelab/synthetic.hpp"

#include <bit>
#include <string>
#include <utility>

namespace treelab {

namespace {

// Stream tags keep the seeded derivations for different purposes independent.
enum : std::uint64_t {
  kTagBranching = 1,
  kTagShared = 0x100,
  kTagPick = 0x200,
  kTagShuffle = 0x300,
  kTagUnique = 0x400,
  kTagDelta = 0x500,
  kTagNoise = 0x600,
};

}  // namespace

void SyntheticGame::validate(const SyntheticParams& p) {
  if (p.min_branching < 1 || p.max_branching < p.min_branching || p.max_branching > kMaxBranching)
    throw ContractViolation("synthetic: branching must satisfy 1 <= min <= max <= " +
                            std::to_string(kMaxBranching));
  if (p.depth < 0 || p.depth > 60) throw ContractViolation("synthetic: depth must be in [0, 60]");
  if (!(p.transpositions >= 0.0 && p.transpositions <= 1.0))
    throw ContractViolation("synthetic: transposition density must be in [0, 1]");
  if (p.value_range < 0 || p.value_range > 1000)
    throw ContractViolation("synthetic: value range must be in [0, 1000]");
}

SyntheticGame::SyntheticGame(SyntheticParams params) : params_(params), salt_(mix64(params.seed, 0x5A17)) {
  validate(params_);
}

Position SyntheticGame::initial(Side to_move) const {
  Position p;
  p.side = to_move;
  p.hash = zobrist_hash(p);
  return p;
}

void SyntheticGame::generate_moves(const Position& pos, MoveList& out) const {
  out.clear();
  if (is_terminal(pos)) return;
  const std::uint64_t key = node_key(pos);
  const int span = params_.max_branching - params_.min_branching + 1;
  const int n = params_.min_branching + static_cast<int>(mix64(key, kTagBranching) % span);

  int shared = 0;
  for (int i = 0; i < n; ++i)
    if (unit_interval(mix64(key, kTagShared + i)) < params_.transpositions) ++shared;

  // Shared labels come from a small window of the lowest unused pool labels, so
  // sibling lines keep offering each other's moves (A,B and B,A commute).
  std::uint64_t unused = ~pos.bits[0];
  int window[kPoolSize];
  int window_size = 0;
  const int window_limit = shared + 2;
  for (; unused && window_size < window_limit; unused &= unused - 1) window[window_size++] = std::countr_zero(unused);
  if (shared > window_size) shared = window_size;
  for (int i = 0; i < shared; ++i) {
    const int j = i + static_cast<int>(mix64(key, kTagPick + i) % static_cast<std::uint64_t>(window_size - i));
    std::swap(window[i], window[j]);
    out.push_back(Move(static_cast<std::uint16_t>(window[i])));
  }
  for (int k = 0; k < n - shared; ++k) out.push_back(Move(static_cast<std::uint16_t>(kUniqueBase + k)));

  // Static order is a seeded shuffle.
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(mix64(key, kTagShuffle + i) % static_cast<std::uint64_t>(i + 1));
    std::swap(out[i], out[j]);
  }
}

MoveList SyntheticGame::legal_moves(const Position& pos) const {
  if (is_terminal(pos)) throw ContractViolation("synthetic: legal_moves on a terminal position");
  MoveList moves;
  generate_moves(pos, moves);
  return moves;
}

Score SyntheticGame::label_delta(std::uint64_t label_key) const {
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(params_.value_range) + 1;
  return static_cast<Score>(mix64(label_key, salt_ ^ kTagDelta) % span) - params_.value_range;
}

Position SyntheticGame::apply(const Position& pos, Move m) const {
  if (is_terminal(pos)) throw ContractViolation("synthetic: apply on a terminal position");
  const auto& keys = zobrist_keys();
  Position next = pos;
  if (m.code < kPoolSize) {
    const std::uint64_t bit = std::uint64_t{1} << m.code;
    if (pos.bits[0] & bit) throw ContractViolation("synthetic: shared label already played");
    next.bits[0] |= bit;
    next.hash ^= keys.label[m.code];
    next.accum += label_delta(m.code);
  } else {
    if (m.code - kUniqueBase >= kMaxBranching) throw ContractViolation("synthetic: bad move code");
    const std::uint64_t label = mix64(node_key(pos), kTagUnique + m.code) | 1;
    next.bits[1] ^= label;
    next.hash ^= label;
    next.accum += label_delta(label);
  }
  next.side = opponent(pos.side);
  next.hash ^= keys.side_to_move;
  next.ply = static_cast<std::uint16_t>(pos.ply + 1);
  return next;
}

Score SyntheticGame::evaluate(const Position& pos) const {
  const long long amplitude = params_.value_range / 2;
  const long long noise =
      static_cast<long long>(mix64(pos.hash, salt_ ^ kTagNoise) % static_cast<std::uint64_t>(2 * amplitude + 1)) -
      amplitude;
  const long long max_view = static_cast<long long>(pos.accum) + noise;
  return clamp_heuristic(pos.side == Side::Max ? max_view : -max_view);
}

std::uint64_t SyntheticGame::zobrist_hash(const Position& pos) const {
  const auto& keys = zobrist_keys();
  std::uint64_t h = pos.bits[1] ^ (pos.side == Side::Min ? keys.side_to_move : 0);
  for (std::uint64_t b = pos.bits[0]; b; b &= b - 1) h ^= keys.label[std::countr_zero(b)];
  return h;
}

}  // namespace treelab
