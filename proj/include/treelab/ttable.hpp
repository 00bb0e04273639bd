#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treelab/types.hpp"

namespace treelab {

enum class Bound : std::uint8_t { None, Exact, Lower, Upper };

struct TTEntry {
  static constexpr std::int16_t kNoDepth = -1;

  std::uint64_t key = 0;
  Score value = 0;
  std::int16_t depth = kNoDepth;
  Bound bound = Bound::None;
  bool occupied = false;
  std::uint16_t age = 0;
  Move best_move{};

  // False for best-move-only entries left by retain_best_moves_only().
  bool has_value() const { return bound != Bound::None && depth >= 0; }
};

enum class StorePolicy : std::uint8_t {
  // Replace entries from older searches; within one search prefer the deeper entry.
  TwoTier,
  // Never evict a different position. A same-position store refreshes the value
  // but keeps an existing best move (used by counting passes over a move oracle).
  KeepMove,
  // Like KeepMove, but the stored best move overrides the existing one.
  NoEvict,
};

struct TTableCounters {
  std::uint64_t probes = 0;
  std::uint64_t hits = 0;
  std::uint64_t collisions = 0;
  std::uint64_t stores = 0;
  std::uint64_t refused = 0;    // store dropped by the replacement policy
  std::uint64_t evictions = 0;  // a different position was overwritten
};

// Direct-mapped table with 2^bits slots and full 64-bit key verification.
// No rehashing: a slot holds at most one position.
class TTable {
 public:
  static constexpr int kDefaultBits = 21;
  static constexpr int kMinBits = 4;
  static constexpr int kMaxBits = 28;

  explicit TTable(int bits = kDefaultBits);

  int bits() const { return bits_; }
  std::size_t capacity() const { return slots_.size(); }
  std::size_t occupancy() const { return occupied_; }
  std::size_t slot_of(std::uint64_t key) const { return static_cast<std::size_t>(key & mask_); }

  std::optional<TTEntry> probe(std::uint64_t key);
  // Probe without touching the counters.
  const TTEntry* peek(std::uint64_t key) const;

  void store(const TTEntry& entry, StorePolicy policy = StorePolicy::TwoTier);

  // Drop depth/value/bound from every entry, keeping keys and best moves.
  void retain_best_moves_only();

  // Start a new search generation (one per iterative-deepening iteration).
  void new_search() { ++age_; }
  std::uint16_t age() const { return age_; }

  void clear();

  const TTableCounters& counters() const { return counters_; }
  void reset_counters() { counters_ = {}; }

  // Cutoff value when `entry` alone settles a search of `needed_depth` with
  // window (alpha, beta); nullopt otherwise.
  static std::optional<Score> sufficient(const TTEntry& entry, int needed_depth, Score alpha, Score beta);

 private:
  int bits_;
  std::uint64_t mask_;
  std::vector<TTEntry> slots_;
  std::size_t occupied_ = 0;
  std::uint16_t age_ = 0;
  TTableCounters counters_;
};

}  // namespace treelab
