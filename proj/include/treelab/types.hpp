#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace treelab {

// Scores are always from the point of view of the side to move (negamax).
using Score = std::int32_t;

inline constexpr Score kWinScore = 32000;
inline constexpr Score kInfinity = 32500;
inline constexpr Score kMaxHeuristic = 10000;

constexpr Score win_in(int ply) { return kWinScore - ply; }
constexpr Score loss_in(int ply) { return -(kWinScore - ply); }

constexpr Score clamp_heuristic(long long v) {
  if (v > kMaxHeuristic) return kMaxHeuristic;
  if (v < -kMaxHeuristic) return -kMaxHeuristic;
  return static_cast<Score>(v);
}

enum class Side : std::uint8_t { Max = 0, Min = 1 };

constexpr Side opponent(Side s) { return s == Side::Max ? Side::Min : Side::Max; }
constexpr int index_of(Side s) { return static_cast<int>(s); }

// Compact game-specific move code. Codes are stable for a given position.
struct Move {
  static constexpr std::uint16_t kNoneCode = 0xFFFF;

  std::uint16_t code = kNoneCode;

  constexpr Move() = default;
  constexpr explicit Move(std::uint16_t c) : code(c) {}

  constexpr bool is_none() const { return code == kNoneCode; }
  friend constexpr bool operator==(Move, Move) = default;
};

inline constexpr Move kNoMove{};

class MoveList {
 public:
  static constexpr std::size_t kCapacity = 64;

  void push_back(Move m) { moves_[size_++] = m; }
  void clear() { size_ = 0; }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  Move& operator[](std::size_t i) { return moves_[i]; }
  Move operator[](std::size_t i) const { return moves_[i]; }

  Move* begin() { return moves_.data(); }
  Move* end() { return moves_.data() + size_; }
  const Move* begin() const { return moves_.data(); }
  const Move* end() const { return moves_.data() + size_; }

  std::span<Move> span() { return {moves_.data(), size_}; }
  std::span<const Move> span() const { return {moves_.data(), size_}; }

  bool contains(Move m) const {
    for (Move x : *this)
      if (x == m) return true;
    return false;
  }

 private:
  std::array<Move, kCapacity> moves_{};
  std::size_t size_ = 0;
};

// A caller broke an operation's precondition (illegal move, terminal position...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal consistency check failed; results cannot be trusted.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive procedure would exceed its configured node budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration or command line values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed fixture or data file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, int column, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) +
                           (column > 0 ? ":" + std::to_string(column) : std::string()) + ": " +
                           what),
        source_(std::move(source)),
        line_(line),
        column_(column) {}

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string source_;
  int line_;
  int column_;
};

}  // namespace treelab
