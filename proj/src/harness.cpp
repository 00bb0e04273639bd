#include "treelab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace treelab {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    std::string item = trim(s.substr(start, comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = comma + 1;
  }
  return out;
}

long long parse_integer(const std::string& text, const std::string& source, int line, std::string_view key) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw ParseError(source, line, 0, "bad integer for '" + std::string(key) + "': '" + text + "'");
  return v;
}

std::pair<long long, long long> parse_range(const std::string& text, const std::string& source, int line,
                                            std::string_view key) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const long long v = parse_integer(text, source, line, key);
    return {v, v};
  }
  const long long a = parse_integer(trim(text.substr(0, dots)), source, line, key);
  const long long b = parse_integer(trim(text.substr(dots + 2)), source, line, key);
  if (a > b) throw ParseError(source, line, 0, "empty range for '" + std::string(key) + "': " + text);
  return {a, b};
}

bool parse_switch(const std::string& text, const std::string& source, int line, std::string_view key) {
  if (text == "on" || text == "true" || text == "1") return true;
  if (text == "off" || text == "false" || text == "0") return false;
  throw ParseError(source, line, 0, "'" + std::string(key) + "' must be on or off, got '" + text + "'");
}

std::string on_off(bool b) { return b ? "on" : "off"; }

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

void validate(const ExperimentConfig& c) {
  if (c.fixture_paths.empty() && !c.seeds) throw ConfigError("experiment needs 'fixtures' or 'seeds'");
  if (c.seeds && c.game != GameId::Synthetic) throw ConfigError("'seeds' only applies to the synthetic game");
  if (c.min_depth < 1 || c.max_depth < c.min_depth || c.max_depth > 60)
    throw ConfigError("depths must satisfy 1 <= a <= b <= 60");
  if (c.engines.empty()) throw ConfigError("no engines selected");
  if (c.tt_bits < TTable::kMinBits || c.tt_bits > TTable::kMaxBits)
    throw ConfigError("tt_bits must be in [" + std::to_string(TTable::kMinBits) + ", " +
                      std::to_string(TTable::kMaxBits) + "]");
  if (c.etc_settings.empty()) throw ConfigError("no etc setting selected");
  if (c.etc_min_depth < 1) throw ConfigError("etc_min_depth must be at least 1");
  if (c.mm_d < 0) throw ConfigError("mm_d must be non-negative");
  if (c.metrology.empty()) throw ConfigError("no quantities selected");
  if (c.budget == 0) throw ConfigError("budget must be positive");
  if (c.aspiration_delta <= 0) throw ConfigError("asp_delta must be positive");
  SyntheticGame::validate(c.synthetic);
}

std::string synthetic_template_text(const SyntheticParams& p) {
  const std::string full = format_synthetic_params(p);
  const auto space = full.find(' ');
  return full.substr(space + 1);
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text, const std::string& source) {
  ExperimentConfig c;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string content = trim(raw);
    if (content.empty() || content.front() == '#') continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ParseError(source, line, 0, "expected key = value, got '" + content + "'");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (!seen.insert(key).second) throw ParseError(source, line, 0, "duplicate key '" + key + "'");

    if (key == "game") {
      const auto id = parse_game_id(value);
      if (!id) throw ParseError(source, line, 0, "unknown game '" + value + "'");
      c.game = *id;
    } else if (key == "fixtures") {
      c.fixture_paths = split_list(value);
    } else if (key == "seeds") {
      const auto [a, b] = parse_range(value, source, line, key);
      if (a < 0) throw ParseError(source, line, 0, "seeds must be non-negative");
      c.seeds = std::make_pair(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    } else if (key == "synthetic") {
      if (value.find("seed=") != std::string::npos)
        throw ParseError(source, line, 0, "the synthetic template takes its seeds from 'seeds'");
      c.synthetic = parse_synthetic_params("seed=0 " + value, source, line);
    } else if (key == "depths") {
      const auto [a, b] = parse_range(value, source, line, key);
      c.min_depth = static_cast<int>(a);
      c.max_depth = static_cast<int>(b);
    } else if (key == "engines") {
      c.engines.clear();
      if (value == "all") {
        c.engines.assign(std::begin(kAllEngines), std::end(kAllEngines));
      } else {
        for (const auto& name : split_list(value)) {
          const auto e = parse_engine(name);
          if (!e) throw ParseError(source, line, 0, "unknown engine '" + name + "'");
          if (std::find(c.engines.begin(), c.engines.end(), *e) == c.engines.end()) c.engines.push_back(*e);
        }
      }
    } else if (key == "tt_bits") {
      c.tt_bits = static_cast<int>(parse_integer(value, source, line, key));
    } else if (key == "etc") {
      c.etc_settings.clear();
      for (const auto& v : split_list(value)) {
        const bool b = parse_switch(v, source, line, key);
        if (std::find(c.etc_settings.begin(), c.etc_settings.end(), b) == c.etc_settings.end())
          c.etc_settings.push_back(b);
      }
      std::sort(c.etc_settings.begin(), c.etc_settings.end());
    } else if (key == "etc_min_depth") {
      c.etc_min_depth = static_cast<int>(parse_integer(value, source, line, key));
    } else if (key == "history") {
      c.history = parse_switch(value, source, line, key);
    } else if (key == "metrology") {
      c.metrology.clear();
      for (const auto& name : split_list(value)) {
        std::string upper = name;
        std::transform(upper.begin(), upper.end(), upper.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
        const auto q = parse_quantity(upper);
        if (!q) throw ParseError(source, line, 0, "unknown quantity '" + name + "'");
        if (std::find(c.metrology.begin(), c.metrology.end(), *q) == c.metrology.end()) c.metrology.push_back(*q);
      }
      std::sort(c.metrology.begin(), c.metrology.end());
    } else if (key == "mm_d") {
      c.mm_d = static_cast<int>(parse_integer(value, source, line, key));
    } else if (key == "budget") {
      double b = 0;
      std::istringstream num(value);
      num.imbue(std::locale::classic());
      num >> b;
      if (!num || !num.eof() || b < 1 || b > 1e18) throw ParseError(source, line, 0, "bad budget '" + value + "'");
      c.budget = static_cast<std::uint64_t>(b);
    } else if (key == "asp_delta") {
      c.aspiration_delta = static_cast<Score>(parse_integer(value, source, line, key));
    } else if (key == "out") {
      c.out = value;
    } else {
      throw ParseError(source, line, 0, "unknown key '" + key + "'");
    }
  }
  validate(c);
  return c;
}

ExperimentConfig read_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str(), path.string());
}

std::string format_experiment_config(const ExperimentConfig& c) {
  std::vector<std::string> engines;
  for (Engine e : c.engines) engines.emplace_back(engine_name(e));
  std::vector<std::string> etc;
  for (bool b : c.etc_settings) etc.push_back(on_off(b));
  std::vector<std::string> quantities;
  for (Quantity q : c.metrology) quantities.emplace_back(quantity_name(q));

  std::string out;
  out += "game = " + std::string(game_name(c.game)) + "\n";
  if (!c.fixture_paths.empty()) out += "fixtures = " + join(c.fixture_paths, ",") + "\n";
  if (c.seeds) {
    out += "seeds = " + std::to_string(c.seeds->first) + ".." + std::to_string(c.seeds->second) + "\n";
    out += "synthetic = " + synthetic_template_text(c.synthetic) + "\n";
  }
  out += "depths = " + std::to_string(c.min_depth) + ".." + std::to_string(c.max_depth) + "\n";
  out += "engines = " + join(engines, ",") + "\n";
  out += "tt_bits = " + std::to_string(c.tt_bits) + "\n";
  out += "etc = " + join(etc, ",") + "\n";
  out += "etc_min_depth = " + std::to_string(c.etc_min_depth) + "\n";
  out += "history = " + on_off(c.history) + "\n";
  out += "metrology = " + join(quantities, ",") + "\n";
  out += "mm_d = " + std::to_string(c.mm_d) + "\n";
  out += "budget = " + std::to_string(c.budget) + "\n";
  out += "asp_delta = " + std::to_string(c.aspiration_delta) + "\n";
  if (!c.out.empty()) out += "out = " + c.out + "\n";
  return out;
}

std::vector<NamedFixture> resolve_fixtures(const ExperimentConfig& c) {
  namespace fs = std::filesystem;
  std::vector<NamedFixture> out;
  auto add_file = [&](const fs::path& file) {
    NamedFixture nf{file.stem().string(), parse_fixture_file(file)};
    if (nf.fixture.spec.id != c.game)
      throw ConfigError("fixture " + file.string() + " is a " + std::string(game_name(nf.fixture.spec.id)) +
                        " position but the experiment game is " + std::string(game_name(c.game)));
    out.push_back(std::move(nf));
  };
  for (const auto& entry : c.fixture_paths) {
    const fs::path p(entry);
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> files;
      for (const auto& f : fs::directory_iterator(p))
        if (f.is_regular_file() && f.path().extension() == ".pos") files.push_back(f.path());
      std::sort(files.begin(), files.end());
      if (files.empty()) throw ConfigError("fixture directory " + entry + " contains no .pos files");
      for (const auto& f : files) add_file(f);
    } else {
      add_file(p);
    }
  }
  if (c.seeds) {
    for (std::uint64_t s = c.seeds->first;; ++s) {
      SyntheticParams params = c.synthetic;
      params.seed = s;
      const SyntheticGame g(params);
      out.push_back({"seed" + std::to_string(s), Fixture{GameSpec{GameId::Synthetic, params}, g.initial(Side::Max)}});
      if (s == c.seeds->second) break;
    }
  }
  return out;
}

std::string config_hash(const ExperimentConfig& c, const std::vector<NamedFixture>& fixtures) {
  ExperimentConfig canonical = c;
  canonical.out.clear();
  std::string text = format_experiment_config(canonical);
  for (const auto& nf : fixtures) text += "fixture " + nf.id + "\n" + write_fixture(nf.fixture);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::vector<std::string>& experiment_columns() {
  static const std::vector<std::string> cols{
      "config_hash", "game",     "fixture",        "depth",       "quantity",  "engine",
      "etc",         "mm_d",     "label",          "status",      "f",         "leaf_count",
      "interior_count", "tt_cutoffs", "total_node_accesses", "tt_hits", "etc_cutoffs", "oracle_misses",
      "note"};
  return cols;
}

namespace {

std::string engine_label(Engine e) {
  switch (e) {
    case Engine::AlphaBeta: return "AB";
    case Engine::NegaScout: return "NS";
    case Engine::AspNegaScout: return "AspNS";
    case Engine::MtdF: return "MTD(f)";
  }
  return "?";
}

struct Cell {
  std::size_t fixture = 0;
  int depth = 0;
  Quantity quantity = Quantity::Actual;
  int engine_rank = 0;
  int etc_rank = 0;
  bool ok = false;
  Score f = 0;
  std::vector<std::string> fields;
};

class CellWriter {
 public:
  CellWriter(const ExperimentConfig& c, std::string hash, std::vector<Cell>& cells)
      : config_(c), hash_(std::move(hash)), cells_(cells) {}

  void add(std::size_t fixture, const std::string& fixture_id, int depth, Quantity q, int engine_rank,
           const std::string& engine, std::optional<bool> etc, std::optional<int> mm_d, const std::string& label,
           const NodeCountReport* report, const SearchStats* stats, const std::string& note) {
    Cell cell;
    cell.fixture = fixture;
    cell.depth = depth;
    cell.quantity = q;
    cell.engine_rank = engine_rank;
    cell.etc_rank = etc.value_or(false) ? 1 : 0;
    cell.ok = report != nullptr;
    auto& v = cell.fields;
    v = {hash_,
         std::string(game_name(config_.game)),
         fixture_id,
         std::to_string(depth),
         std::string(quantity_name(q)),
         engine,
         etc ? on_off(*etc) : "-",
         mm_d ? std::to_string(*mm_d) : "",
         label,
         report ? "OK" : "SKIPPED"};
    if (report) {
      cell.f = report->f;
      v.push_back(std::to_string(report->f));
      for (std::uint64_t n : {report->leaf_count, report->interior_count, report->tt_cutoffs,
                              report->total_node_accesses, report->tt_hits, report->etc_cutoffs,
                              report->oracle_misses})
        v.push_back(std::to_string(n));
    } else {
      for (int i = 0; i < 8; ++i) v.emplace_back();
    }
    v.push_back(note);
    for (int level = 0; level < config_.max_depth; ++level) {
      std::string rate;
      if (stats != nullptr && level < depth) {
        if (const auto r = stats->first_move_cutoff_rate(level)) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.6f", *r);
          rate = buf;
        }
      }
      v.push_back(rate);
    }
    cells_.push_back(std::move(cell));
  }

 private:
  const ExperimentConfig& config_;
  std::string hash_;
  std::vector<Cell>& cells_;
};

std::string skip_note(const std::exception& e, std::string_view kind) { return std::string(kind) + ": " + e.what(); }

template <GameModel G>
void run_fixture(const G& game, const NamedFixture& nf, std::size_t index, const ExperimentConfig& c,
                 CellWriter& out) {
  const Position& root = nf.fixture.root;
  const std::string gname(game_name(c.game));
  auto wants = [&](Quantity q) { return std::find(c.metrology.begin(), c.metrology.end(), q) != c.metrology.end(); };

  if (wants(Quantity::Actual)) {
    for (bool etc : c.etc_settings) {
      for (std::size_t ei = 0; ei < c.engines.size(); ++ei) {
        const Engine engine = c.engines[ei];
        SearchOptions options;
        options.use_history = c.history;
        options.etc = {.enabled = etc, .min_remaining_depth = c.etc_min_depth};
        options.aspiration_delta = c.aspiration_delta;
        options.node_budget = c.budget;
        TTable table(c.tt_bits);
        Searcher<G> searcher(game, &table, options);
        std::vector<SearchResult> done;
        std::string note;
        try {
          searcher.iterative_deepening(root, c.max_depth, engine,
                                       [&](const SearchResult& r) { done.push_back(r); });
        } catch (const BudgetExceeded& e) {
          note = skip_note(e, "budget");
        }
        std::string label = engine_label(engine) + "+TT+ID";
        if (c.history) label += "+HH";
        if (etc) label += "+ETC";
        for (int d = c.min_depth; d <= c.max_depth; ++d) {
          if (static_cast<std::size_t>(d) <= done.size()) {
            const SearchResult& r = done[static_cast<std::size_t>(d - 1)];
            const NodeCountReport report = actual_report(r, gname, engine);
            out.add(index, nf.id, d, Quantity::Actual, static_cast<int>(ei), report.engine, etc, std::nullopt, label,
                    &report, &r.stats, "");
          } else {
            out.add(index, nf.id, d, Quantity::Actual, static_cast<int>(ei), std::string(engine_name(engine)), etc,
                    std::nullopt, label, nullptr, nullptr, note);
          }
        }
      }
    }
  }

  MetrologyConfig mc;
  mc.tt_bits = c.tt_bits;
  mc.history = c.history;
  mc.aspiration_delta = c.aspiration_delta;
  mc.node_budget = c.budget;

  for (int d = c.min_depth; d <= c.max_depth; ++d) {
    auto emit = [&](Quantity q, std::optional<int> mm, const std::string& label, const NodeCountReport* r,
                    const std::string& note) {
      out.add(index, nf.id, d, q, 0, "-", std::nullopt, mm, label, r, nullptr, note);
    };
    auto guarded = [&](auto&& compute, auto&& on_skip) {
      try {
        compute();
      } catch (const BudgetExceeded& e) {
        on_skip(skip_note(e, "budget"));
      } catch (const TableSaturated& e) {
        on_skip(skip_note(e, "saturated"));
      }
    };
    if (wants(Quantity::Lfmt) || wants(Quantity::Lfmg)) {
      guarded(
          [&] {
            const LeftFirstReports lf = compute_left_first(game, root, d, mc);
            if (wants(Quantity::Lfmt)) emit(Quantity::Lfmt, std::nullopt, "LFMT", &lf.lfmt, "");
            if (wants(Quantity::Lfmg)) emit(Quantity::Lfmg, std::nullopt, "LFMG", &lf.lfmg, "");
          },
          [&](const std::string& note) {
            if (wants(Quantity::Lfmt)) emit(Quantity::Lfmt, std::nullopt, "LFMT", nullptr, note);
            if (wants(Quantity::Lfmg)) emit(Quantity::Lfmg, std::nullopt, "LFMG", nullptr, note);
          });
    }
    if (wants(Quantity::Rmt)) {
      guarded(
          [&] {
            const NodeCountReport r = compute_rmt(game, root, d, mc);
            emit(Quantity::Rmt, std::nullopt, "RMT", &r, "");
          },
          [&](const std::string& note) { emit(Quantity::Rmt, std::nullopt, "RMT", nullptr, note); });
    }
    if (wants(Quantity::Armg)) {
      const int mm = std::min(c.mm_d, d);
      const std::string label = "ARMG(" + std::to_string(mm) + ")";
      guarded(
          [&] {
            const NodeCountReport r = compute_armg(game, root, d, mm, mc);
            emit(Quantity::Armg, mm, label, &r, "");
          },
          [&](const std::string& note) { emit(Quantity::Armg, mm, label, nullptr, note); });
    }
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();
  const std::vector<NamedFixture> fixtures = resolve_fixtures(config);
  ExperimentOutput result;
  result.hash = config_hash(config, fixtures);

  std::vector<Cell> cells;
  CellWriter writer(config, result.hash, cells);
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const AnyGame game = make_game(fixtures[i].fixture.spec);
    std::visit([&](const auto& g) { run_fixture(g, fixtures[i], i, config, writer); }, game);
  }

  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.fixture, a.depth, a.quantity, a.engine_rank, a.etc_rank) <
           std::tie(b.fixture, b.depth, b.quantity, b.engine_rank, b.etc_rank);
  });

  std::map<std::pair<std::size_t, int>, const Cell*> value_of;
  for (const Cell& cell : cells) {
    if (!cell.ok) continue;
    const auto [it, inserted] = value_of.emplace(std::make_pair(cell.fixture, cell.depth), &cell);
    if (!inserted && it->second->f != cell.f)
      throw InvariantViolation("minimax value disagreement on fixture " + fixtures[cell.fixture].id + " at depth " +
                               std::to_string(cell.depth) + ": " + it->second->fields[4] + "/" +
                               it->second->fields[5] + " gives " + std::to_string(it->second->f) + ", " +
                               cell.fields[4] + "/" + cell.fields[5] + " gives " + std::to_string(cell.f));
  }

  CsvTable& t = result.table;
  t.header = experiment_columns();
  for (int level = 0; level < config.max_depth; ++level) t.header.push_back("fmc_L" + std::to_string(level));
  for (Cell& cell : cells) t.rows.push_back(std::move(cell.fields));

  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.3f", elapsed);
  t.comments.push_back("treelab experiment");
  t.comments.push_back("config_hash=" + result.hash);
  t.comments.push_back("generated_utc=" + utc_timestamp());
  t.comments.push_back(std::string("elapsed_seconds=") + secs);
  std::istringstream echo(format_experiment_config(config));
  for (std::string line; std::getline(echo, line);) t.comments.push_back("config: " + line);
  return result;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("error writing " + path.string());
}

}  // namespace treelab
