#include "treelab/ttable.hpp"

#include <string>

namespace treelab {

TTable::TTable(int bits) : bits_(bits) {
  if (bits < kMinBits || bits > kMaxBits)
    throw ConfigError("table size exponent must be in [" + std::to_string(kMinBits) + ", " +
                      std::to_string(kMaxBits) + "], got " + std::to_string(bits));
  slots_.resize(std::size_t{1} << bits);
  mask_ = (std::uint64_t{1} << bits) - 1;
}

std::optional<TTEntry> TTable::probe(std::uint64_t key) {
  ++counters_.probes;
  const TTEntry& slot = slots_[slot_of(key)];
  if (!slot.occupied) return std::nullopt;
  if (slot.key != key) {
    ++counters_.collisions;
    return std::nullopt;
  }
  ++counters_.hits;
  return slot;
}

const TTEntry* TTable::peek(std::uint64_t key) const {
  const TTEntry& slot = slots_[slot_of(key)];
  return slot.occupied && slot.key == key ? &slot : nullptr;
}

void TTable::store(const TTEntry& entry, StorePolicy policy) {
  TTEntry& slot = slots_[slot_of(entry.key)];
  TTEntry incoming = entry;
  incoming.occupied = true;
  incoming.age = age_;

  if (!slot.occupied) {
    slot = incoming;
    ++occupied_;
    ++counters_.stores;
    return;
  }

  if (slot.key == entry.key) {
    if (policy == StorePolicy::KeepMove && !slot.best_move.is_none()) incoming.best_move = slot.best_move;
    if (incoming.best_move.is_none()) incoming.best_move = slot.best_move;
    slot = incoming;
    ++counters_.stores;
    return;
  }

  if (policy != StorePolicy::TwoTier) {
    ++counters_.refused;
    return;
  }
  const bool stale = slot.age != age_;
  if (stale || entry.depth >= slot.depth) {
    slot = incoming;
    ++counters_.stores;
    ++counters_.evictions;
  } else {
    ++counters_.refused;
  }
}

void TTable::retain_best_moves_only() {
  for (TTEntry& e : slots_) {
    if (!e.occupied) continue;
    e.depth = TTEntry::kNoDepth;
    e.value = 0;
    e.bound = Bound::None;
  }
}

void TTable::clear() {
  for (TTEntry& e : slots_) e = TTEntry{};
  occupied_ = 0;
  age_ = 0;
  counters_ = {};
}

std::optional<Score> TTable::sufficient(const TTEntry& entry, int needed_depth, Score alpha, Score beta) {
  if (!entry.has_value() || entry.depth < needed_depth) return std::nullopt;
  switch (entry.bound) {
    case Bound::Exact: return entry.value;
    case Bound::Lower:
      if (entry.value >= beta) return entry.value;
      break;
    case Bound::Upper:
      if (entry.value <= alpha) return entry.value;
      break;
    case Bound::None: break;
  }
  return std::nullopt;
}

}  // namespace treelab
