#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <locale>
#include <sstream>
#include <vector>

#include "treelab/game.hpp"

namespace treelab {

std::string_view game_name(GameId id) {
  switch (id) {
    case GameId::Othello6: return "othello6";
    case GameId::MiniCheckers: return "minicheckers";
    case GameId::Synthetic: return "synthetic";
  }
  return "?";
}

std::optional<GameId> parse_game_id(std::string_view name) {
  if (name == "othello6") return GameId::Othello6;
  if (name == "minicheckers") return GameId::MiniCheckers;
  if (name == "synthetic") return GameId::Synthetic;
  return std::nullopt;
}

AnyGame make_game(const GameSpec& spec) {
  switch (spec.id) {
    case GameId::Othello6: return Othello6{};
    case GameId::MiniCheckers: return MiniCheckers{};
    case GameId::Synthetic: return SyntheticGame(spec.synthetic);
  }
  throw ContractViolation("unknown game id");
}

namespace {

struct Line {
  int number;
  std::string text;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string line = trim(text.substr(start, end - start));
    if (!line.empty() && line[0] != '#') lines.push_back({number, std::move(line)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

template <class T>
T parse_number(std::string_view value, const std::string& source, int line, int column, std::string_view key) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ParseError(source, line, column, "synthetic: bad value for '" + std::string(key) + "': '" +
                                               std::string(value) + "'");
  return out;
}

double parse_double(std::string_view value, const std::string& source, int line, int column) {
  std::string copy(value);
  std::istringstream in(copy);
  in.imbue(std::locale::classic());
  double out = 0;
  in >> out;
  if (!in || !in.eof()) throw ParseError(source, line, column, "synthetic: bad value for 't': '" + copy + "'");
  return out;
}

void parse_grid(const std::vector<Line>& lines, const std::string& source, GameId id, Side side,
                int last_line, Fixture& fixture) {
  const bool othello = id == GameId::Othello6;
  constexpr int kSize = 6;
  if (lines.size() != 2 + kSize) {
    const int at = lines.size() > 2 + kSize ? lines[2 + kSize].number : last_line;
    throw ParseError(source, at, 0,
                     std::string(game_name(id)) + ": expected 6 board rows, found " +
                         std::to_string(static_cast<int>(lines.size()) - 2));
  }
  std::uint64_t max_bits = 0;
  std::uint64_t min_bits = 0;
  for (int r = 0; r < kSize; ++r) {
    const Line& line = lines[2 + r];
    if (line.text.size() != kSize)
      throw ParseError(source, line.number, 0,
                       std::string(game_name(id)) + ": board row must have 6 cells, found " +
                           std::to_string(line.text.size()));
    for (int c = 0; c < kSize; ++c) {
      const char ch = line.text[c];
      const std::uint64_t bit = std::uint64_t{1} << (r * kSize + c);
      const char max_ch = othello ? 'X' : 'x';
      const char min_ch = othello ? 'O' : 'o';
      if (ch == '.') continue;
      if (ch != max_ch && ch != min_ch)
        throw ParseError(source, line.number, c + 1, std::string("illegal board character '") + ch + "'");
      if (!othello && (r + c) % 2 == 0)
        throw ParseError(source, line.number, c + 1, "minicheckers: man on a light square");
      (ch == max_ch ? max_bits : min_bits) |= bit;
    }
  }
  if (othello)
    fixture.root = Othello6{}.from_discs(max_bits, min_bits, side);
  else
    fixture.root = MiniCheckers{}.from_men(max_bits, min_bits, side);
}

}  // namespace

SyntheticParams parse_synthetic_params(std::string_view text, const std::string& source, int line_number) {
  SyntheticParams params;
  bool seen_seed = false, seen_w = false, seen_d = false, seen_t = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    const std::string_view token = text.substr(pos, end - pos);
    const int column = static_cast<int>(pos) + 1;
    const std::size_t eq = token.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(source, line_number, column, "synthetic: expected key=value, got '" + std::string(token) + "'");
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);
    if (key == "seed") {
      params.seed = parse_number<std::uint64_t>(value, source, line_number, column, key);
      seen_seed = true;
    } else if (key == "w") {
      const std::size_t dots = value.find("..");
      if (dots == std::string_view::npos) {
        params.min_branching = params.max_branching = parse_number<int>(value, source, line_number, column, key);
      } else {
        params.min_branching = parse_number<int>(value.substr(0, dots), source, line_number, column, key);
        params.max_branching = parse_number<int>(value.substr(dots + 2), source, line_number, column, key);
      }
      seen_w = true;
    } else if (key == "d") {
      params.depth = parse_number<int>(value, source, line_number, column, key);
      seen_d = true;
    } else if (key == "t") {
      params.transpositions = parse_double(value, source, line_number, column);
      seen_t = true;
    } else if (key == "v") {
      params.value_range = parse_number<int>(value, source, line_number, column, key);
    } else {
      throw ParseError(source, line_number, column, "synthetic: unknown parameter '" + std::string(key) + "'");
    }
    pos = end;
  }
  if (!seen_seed || !seen_w || !seen_d || !seen_t)
    throw ParseError(source, line_number, 0, "synthetic: parameters seed, w, d and t are required");
  try {
    SyntheticGame::validate(params);
  } catch (const ContractViolation& e) {
    throw ParseError(source, line_number, 0, std::string("out of range: ") + e.what());
  }
  return params;
}

std::string format_synthetic_params(const SyntheticParams& p) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "seed=" << p.seed << " w=";
  if (p.min_branching == p.max_branching)
    out << p.min_branching;
  else
    out << p.min_branching << ".." << p.max_branching;
  out << " d=" << p.depth << " t=" << p.transpositions << " v=" << p.value_range;
  return out.str();
}

Fixture parse_fixture_text(std::string_view text, const std::string& source) {
  const std::vector<Line> lines = content_lines(text);
  const int last_line = static_cast<int>(std::count(text.begin(), text.end(), '\n')) + 1;
  if (lines.empty()) throw ParseError(source, 1, 0, "empty fixture");

  Fixture fixture;
  const auto id = parse_game_id(lines[0].text);
  if (!id) throw ParseError(source, lines[0].number, 1, "unknown game id '" + lines[0].text + "'");
  fixture.spec.id = *id;

  if (lines.size() < 2) throw ParseError(source, last_line, 0, "missing side-to-move line");
  Side side;
  if (lines[1].text == "max")
    side = Side::Max;
  else if (lines[1].text == "min")
    side = Side::Min;
  else
    throw ParseError(source, lines[1].number, 1, "side to move must be 'max' or 'min', got '" + lines[1].text + "'");

  if (*id == GameId::Synthetic) {
    if (lines.size() != 3)
      throw ParseError(source, lines.size() > 3 ? lines[3].number : last_line, 0,
                       "synthetic: expected exactly one parameter line");
    fixture.spec.synthetic = parse_synthetic_params(lines[2].text, source, lines[2].number);
    fixture.root = SyntheticGame(fixture.spec.synthetic).initial(side);
    return fixture;
  }
  parse_grid(lines, source, *id, side, last_line, fixture);
  return fixture;
}

Fixture parse_fixture_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open fixture file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fixture_text(buf.str(), path.string());
}

std::string write_fixture(const Fixture& fixture) {
  std::string out(game_name(fixture.spec.id));
  out += '\n';
  out += fixture.root.side == Side::Max ? "max\n" : "min\n";
  if (fixture.spec.id == GameId::Synthetic) {
    out += format_synthetic_params(fixture.spec.synthetic);
    out += '\n';
    return out;
  }
  const bool othello = fixture.spec.id == GameId::Othello6;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      const std::uint64_t bit = std::uint64_t{1} << (r * 6 + c);
      if (fixture.root.bits[0] & bit)
        out += othello ? 'X' : 'x';
      else if (fixture.root.bits[1] & bit)
        out += othello ? 'O' : 'o';
      else
        out += '.';
    }
    out += '\n';
  }
  return out;
}

}  // namespace treelab
