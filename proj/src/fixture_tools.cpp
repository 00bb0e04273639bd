#include <algorithm>
#include <set>

#include "treelab/harness.hpp"

namespace treelab {

namespace {

template <GameModel G>
std::vector<Fixture> random_positions(const G& game, Position start, const FixtureGenOptions& o) {
  if (o.min_plies < 0 || o.max_plies < o.min_plies) throw ConfigError("fixture plies must satisfy 0 <= min <= max");
  std::vector<Fixture> out;
  std::set<std::uint64_t> seen;
  std::uint64_t state = mix64(o.seed, 0xF1C7);
  auto next = [&state] { return state = mix64(state); };
  const int span = o.max_plies - o.min_plies + 1;
  for (int attempt = 0; static_cast<int>(out.size()) < o.count; ++attempt) {
    if (attempt > o.count * 1000) throw ConfigError("could not find enough distinct positions; widen the ply range");
    const int plies = o.min_plies + static_cast<int>(next() % static_cast<std::uint64_t>(span));
    Position p = start;
    bool dead = false;
    for (int i = 0; i < plies; ++i) {
      MoveList moves;
      game.generate_moves(p, moves);
      if (moves.empty()) {
        dead = true;
        break;
      }
      p = game.apply(p, moves[next() % moves.size()]);
    }
    if (dead || game.is_terminal(p)) continue;
    if (game.legal_moves(p).size() < 2) continue;
    if (!seen.insert(p.hash).second) continue;
    // Round-trip through text so the stored root starts at ply 0.
    Fixture f{GameSpec{game_id(game), {}}, p};
    out.push_back(parse_fixture_text(write_fixture(f)));
  }
  return out;
}

}  // namespace

std::vector<Fixture> generate_fixtures(const FixtureGenOptions& o) {
  if (o.count < 1) throw ConfigError("fixture count must be positive");
  switch (o.game) {
    case GameId::Othello6: {
      const Othello6 g;
      return random_positions(g, g.initial(), o);
    }
    case GameId::MiniCheckers: {
      const MiniCheckers g;
      return random_positions(g, g.initial(), o);
    }
    case GameId::Synthetic: {
      std::vector<Fixture> out;
      for (int i = 0; i < o.count; ++i) {
        SyntheticParams p = o.synthetic;
        p.seed = o.seed + static_cast<std::uint64_t>(i);
        out.push_back({GameSpec{GameId::Synthetic, p}, SyntheticGame(p).initial(Side::Max)});
      }
      return out;
    }
  }
  throw ContractViolation("unknown game");
}

std::vector<FixtureCheck> check_fixtures(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    for (const auto& f : fs::directory_iterator(path))
      if (f.is_regular_file() && f.path().extension() == ".pos") files.push_back(f.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<FixtureCheck> out;
  for (const auto& file : files) {
    FixtureCheck check{file.string(), true, "ok"};
    try {
      const Fixture f = parse_fixture_file(file);
      const Fixture back = parse_fixture_text(write_fixture(f), file.string());
      const bool terminal = std::visit([&](const auto& g) { return g.is_terminal(f.root); }, make_game(f.spec));
      if (!(back.root == f.root) || !(back.spec == f.spec)) {
        check.ok = false;
        check.message = "does not round-trip through the text format";
      } else if (terminal) {
        check.ok = false;
        check.message = "root position is terminal";
      }
    } catch (const std::exception& e) {
      check.ok = false;
      check.message = e.what();
    }
    out.push_back(std::move(check));
  }
  if (out.empty()) out.push_back({path.string(), false, "no .pos files found"});
  return out;
}

}  // namespace treelab
