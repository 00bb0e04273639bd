#pragma once

#include <concepts>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "treelab/minicheckers.hpp"
#include "treelab/othello6.hpp"
#include "treelab/position.hpp"
#include "treelab/synthetic.hpp"
#include "treelab/types.hpp"

namespace treelab {

// What the search code needs from a game. `generate_moves` may return an empty
// list (terminal position); `legal_moves` requires a non-terminal position.
template <class G>
concept GameModel = requires(const G& g, const Position& p, Move m, MoveList& ml) {
  { g.generate_moves(p, ml) } -> std::same_as<void>;
  { g.legal_moves(p) } -> std::same_as<MoveList>;
  { g.apply(p, m) } -> std::same_as<Position>;
  { g.evaluate(p) } -> std::same_as<Score>;
  { g.is_terminal(p) } -> std::same_as<bool>;
  { g.zobrist_hash(p) } -> std::same_as<std::uint64_t>;
  { g.history_index(m) } -> std::convertible_to<int>;
};

enum class GameId { Othello6, MiniCheckers, Synthetic };

std::string_view game_name(GameId id);
std::optional<GameId> parse_game_id(std::string_view name);

struct GameSpec {
  GameId id = GameId::Synthetic;
  SyntheticParams synthetic{};

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

using AnyGame = std::variant<Othello6, MiniCheckers, SyntheticGame>;

AnyGame make_game(const GameSpec& spec);

constexpr GameId game_id(const Othello6&) { return GameId::Othello6; }
constexpr GameId game_id(const MiniCheckers&) { return GameId::MiniCheckers; }
constexpr GameId game_id(const SyntheticGame&) { return GameId::Synthetic; }

// A game plus a root position, as stored in fixture files.
struct Fixture {
  GameSpec spec;
  Position root;
};

// Fixture text format:
//   line 1: game id (othello6 | minicheckers | synthetic)
//   line 2: side to move (max | min)
//   othello6:     six rows of six characters, '.' empty, 'X' MAX disc, 'O' MIN disc
//   minicheckers: six rows of six characters, '.' empty, 'x' MAX man, 'o' MIN man;
//                 men only on dark squares ((row + col) odd); row 0 is MAX's goal row
//   synthetic:    one line `seed=<n> w=<k|a..b> d=<n> t=<float> [v=<n>]`
// Lines starting with '#' and trailing blank lines are ignored.
Fixture parse_fixture_text(std::string_view text, const std::string& source = "<string>");
Fixture parse_fixture_file(const std::filesystem::path& path);
std::string write_fixture(const Fixture& fixture);

SyntheticParams parse_synthetic_params(std::string_view line, const std::string& source = "<string>",
                                       int line_number = 1);
std::string format_synthetic_params(const SyntheticParams& params);

}  // namespace treelab
