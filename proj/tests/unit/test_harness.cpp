#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "doctest.h"
#include "treelab/harness.hpp"

using namespace treelab;

namespace {

const char* kSmallConfig =
    "# five synthetic roots\n"
    "game = synthetic\n"
    "seeds = 1..5\n"
    "synthetic = w=2..4 d=8 t=0.5 v=100\n"
    "depths = 1..4\n"
    "engines = all\n"
    "tt_bits = 16\n"
    "metrology = ACTUAL, LFMT, LFMG\n";

std::string cell(const CsvTable& t, const std::vector<std::string>& row, std::string_view col) {
  return row[t.require_column(col)];
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("treelab_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("CSV escaping and parsing round-trip") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");

  CsvTable t;
  t.comments = {"note"};
  t.header = {"a", "b"};
  t.rows = {{"1", "x,y"}, {"2", "q\"uote"}};
  const std::string text = format_csv(t);
  CHECK(text.rfind("# note\na,b\n", 0) == 0);
  const CsvTable back = parse_csv(text);
  CHECK(back.comments == t.comments);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(format_csv_body(back) == "a,b\n1,\"x,y\"\n2,\"q\"\"uote\"\n");
  CHECK(back.require_column("b") == 1);
  CHECK_FALSE(back.column("c"));
  CHECK_THROWS_AS(back.require_column("c"), ConfigError);
  CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), ParseError);
  CHECK_THROWS_AS(parse_csv("a,b\n\"open,2\n"), ParseError);
}

TEST_CASE("config parses and formats canonically") {
  const ExperimentConfig c = parse_experiment_config(kSmallConfig);
  CHECK(c.game == GameId::Synthetic);
  REQUIRE(c.seeds);
  CHECK(c.seeds->first == 1);
  CHECK(c.seeds->second == 5);
  CHECK(c.synthetic.min_branching == 2);
  CHECK(c.synthetic.max_branching == 4);
  CHECK(c.min_depth == 1);
  CHECK(c.max_depth == 4);
  CHECK(c.engines.size() == 4);
  CHECK(c.tt_bits == 16);
  CHECK(c.metrology == std::vector<Quantity>{Quantity::Actual, Quantity::Lfmt, Quantity::Lfmg});

  const std::string canon = format_experiment_config(c);
  const ExperimentConfig again = parse_experiment_config(canon);
  CHECK(format_experiment_config(again) == canon);
}

TEST_CASE("config errors name the line") {
  auto parse_error = [](const std::string& text) {
    try {
      parse_experiment_config(text, "cfg");
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(parse_error("game = synthetic\ncolour = red\n").rfind("cfg:2:", 0) == 0);
  CHECK(parse_error("game = synthetic\ngame = othello6\n").find("duplicate") != std::string::npos);
  CHECK(parse_error("engines = alphabeta, quiescence\n").find("unknown engine") != std::string::npos);
  CHECK(parse_error("metrology = ACTUAL, RMG\n").find("unknown quantity") != std::string::npos);
  CHECK(parse_error("depths = 5..2\n").find("empty range") != std::string::npos);
  CHECK(parse_error("etc = maybe\n").find("on or off") != std::string::npos);
  CHECK(parse_error("just words\n").find("key = value") != std::string::npos);
  CHECK(parse_error("synthetic = seed=4 w=2 d=3 t=0\n").find("seeds") != std::string::npos);

  CHECK_THROWS_AS(parse_experiment_config("game = synthetic\ndepths = 1..3\n"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_config("game = othello6\nseeds = 1..2\n"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_config("game = synthetic\nseeds = 1..2\nsynthetic = w=2 d=4 t=0\ntt_bits = 40\n"),
                  ConfigError);
  CHECK_THROWS_AS(read_experiment_config("/nonexistent/treelab.cfg"), ParseError);
}

TEST_CASE("experiment over five synthetic roots has one row per cell and agreeing values") {
  const ExperimentOutput out = run_experiment(parse_experiment_config(kSmallConfig));
  const CsvTable& t = out.table;
  CHECK(t.rows.size() == 5 * 4 * (4 + 2));
  CHECK(out.hash.size() == 16);

  std::map<std::pair<std::string, std::string>, std::set<std::string>> f_by_cell;
  std::set<std::tuple<std::string, std::string, std::string, std::string>> cells;
  for (const auto& row : t.rows) {
    CHECK(cell(t, row, "status") == "OK");
    CHECK(cell(t, row, "config_hash") == out.hash);
    CHECK(cell(t, row, "oracle_misses") == "0");
    f_by_cell[{cell(t, row, "fixture"), cell(t, row, "depth")}].insert(cell(t, row, "f"));
    cells.insert({cell(t, row, "fixture"), cell(t, row, "depth"), cell(t, row, "quantity"), cell(t, row, "engine")});
    const long long total = std::stoll(cell(t, row, "total_node_accesses"));
    const long long parts = std::stoll(cell(t, row, "leaf_count")) + std::stoll(cell(t, row, "interior_count")) +
                            std::stoll(cell(t, row, "tt_cutoffs"));
    CHECK(total == parts);
  }
  CHECK(cells.size() == t.rows.size());
  CHECK(f_by_cell.size() == 5 * 4);
  for (const auto& [key, fs] : f_by_cell) CHECK(fs.size() == 1);
  CHECK(t.header.back() == "fmc_L3");
}

TEST_CASE("experiment bodies are byte-identical across runs") {
  const ExperimentConfig c = parse_experiment_config(kSmallConfig);
  const ExperimentOutput a = run_experiment(c);
  const ExperimentOutput b = run_experiment(c);
  CHECK(a.hash == b.hash);
  CHECK(format_csv_body(a.table) == format_csv_body(b.table));
  bool echoed = false;
  for (const auto& line : a.table.comments) echoed = echoed || line == "config_hash=" + a.hash;
  CHECK(echoed);
}

TEST_CASE("config hash tracks the config and fixtures but not the output path") {
  ExperimentConfig c = parse_experiment_config(kSmallConfig);
  const auto fixtures = resolve_fixtures(c);
  const std::string h = config_hash(c, fixtures);
  c.out = "elsewhere.csv";
  CHECK(config_hash(c, fixtures) == h);
  c.max_depth = 3;
  CHECK(config_hash(c, fixtures) != h);
}

TEST_CASE("RMT row never exceeds the LFMT row") {
  const ExperimentOutput out = run_experiment(parse_experiment_config(
      "game = synthetic\nseeds = 1..10\nsynthetic = w=2 d=3 t=0\ndepths = 3\nmetrology = LFMT, RMT\ntt_bits = 12\n"));
  const CsvTable& t = out.table;
  std::map<std::string, std::map<std::string, long long>> total;
  for (const auto& row : t.rows)
    total[cell(t, row, "fixture")][cell(t, row, "quantity")] = std::stoll(cell(t, row, "total_node_accesses"));
  CHECK(total.size() == 10);
  for (const auto& [fixture, q] : total) CHECK(q.at("RMT") <= q.at("LFMT"));
}

TEST_CASE("budget overruns produce SKIPPED rows") {
  const ExperimentOutput out = run_experiment(parse_experiment_config(
      "game = synthetic\nseeds = 1..1\nsynthetic = w=4 d=6 t=0\ndepths = 6\nengines = alphabeta\n"
      "metrology = ACTUAL, RMT\nbudget = 50\ntt_bits = 12\n"));
  REQUIRE(out.table.rows.size() == 2);
  for (const auto& row : out.table.rows) {
    CHECK(cell(out.table, row, "status") == "SKIPPED");
    CHECK(cell(out.table, row, "note").rfind("budget", 0) == 0);
  }
}

TEST_CASE("fixture directories resolve in name order and must match the game") {
  const auto dir = scratch_dir("fixtures");
  FixtureGenOptions o;
  o.game = GameId::MiniCheckers;
  o.count = 3;
  const auto fixtures = generate_fixtures(o);
  REQUIRE(fixtures.size() == 3);
  for (int i = 2; i >= 0; --i)
    write_text_file(dir / ("mc_" + std::to_string(i) + ".pos"), write_fixture(fixtures[static_cast<std::size_t>(i)]));

  ExperimentConfig c;
  c.game = GameId::MiniCheckers;
  c.fixture_paths = {dir.string()};
  const auto named = resolve_fixtures(c);
  REQUIRE(named.size() == 3);
  CHECK(named[0].id == "mc_0");
  CHECK(named[2].id == "mc_2");
  CHECK(named[1].fixture.root == fixtures[1].root);

  c.game = GameId::Othello6;
  CHECK_THROWS_AS(resolve_fixtures(c), ConfigError);
  c.fixture_paths = {(dir / "missing.pos").string()};
  CHECK_THROWS(resolve_fixtures(c));
}

TEST_CASE("generated fixtures are distinct, playable and deterministic") {
  for (GameId id : {GameId::Othello6, GameId::MiniCheckers}) {
    FixtureGenOptions o;
    o.game = id;
    o.count = 10;
    const auto a = generate_fixtures(o);
    const auto b = generate_fixtures(o);
    REQUIRE(a.size() == 10);
    std::set<std::uint64_t> hashes;
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(write_fixture(a[i]) == write_fixture(b[i]));
      CHECK(a[i].root.ply == 0);
      hashes.insert(a[i].root.hash);
      const auto moves = std::visit([&](const auto& g) { return g.legal_moves(a[i].root).size(); }, make_game(a[i].spec));
      CHECK(moves >= 2);
    }
    CHECK(hashes.size() == 10);
  }
  FixtureGenOptions bad;
  bad.count = 0;
  CHECK_THROWS_AS(generate_fixtures(bad), ConfigError);
}

TEST_CASE("fixture check reports bad files") {
  const auto dir = scratch_dir("check");
  FixtureGenOptions o;
  o.game = GameId::Othello6;
  o.count = 2;
  const auto fixtures = generate_fixtures(o);
  write_text_file(dir / "a.pos", write_fixture(fixtures[0]));
  write_text_file(dir / "b.pos", "othello6\nmax\n......\n");
  const auto checks = check_fixtures(dir);
  REQUIRE(checks.size() == 2);
  CHECK(checks[0].ok);
  CHECK_FALSE(checks[1].ok);
  CHECK(checks[1].message.find("b.pos") != std::string::npos);

  const auto empty = scratch_dir("empty");
  const auto none = check_fixtures(empty);
  REQUIRE(none.size() == 1);
  CHECK_FALSE(none[0].ok);
}

TEST_CASE("odd/even sweep needs two depths of each parity") {
  const ExperimentOutput narrow = run_experiment(parse_experiment_config(
      "game = synthetic\nseeds = 1..3\nsynthetic = w=3 d=6 t=0\ndepths = 1..3\nengines = aspnegascout\n"
      "metrology = ACTUAL, LFMG\ntt_bits = 14\n"));
  CHECK_THROWS_AS(sweep_odd_even(narrow.table, Engine::AspNegaScout), ConfigError);

  const ExperimentOutput wide = run_experiment(parse_experiment_config(
      "game = synthetic\nseeds = 1..3\nsynthetic = w=3 d=6 t=0\ndepths = 1..4\nengines = aspnegascout\n"
      "metrology = ACTUAL, LFMG\ntt_bits = 14\n"));
  const CsvTable s = sweep_odd_even(wide.table, Engine::AspNegaScout);
  CHECK(s.rows.size() == 4 + 2);
  const std::size_t scope = s.require_column("scope");
  const std::size_t parity = s.require_column("parity");
  const std::size_t ratio = s.require_column("median_ratio_total");
  int parity_rows = 0;
  for (const auto& row : s.rows) {
    CHECK(std::stod(row[ratio]) >= 0.99);
    if (row[scope] == "parity") {
      ++parity_rows;
      CHECK((row[parity] == "odd" || row[parity] == "even"));
    }
  }
  CHECK(parity_rows == 2);
  CHECK_THROWS_AS(sweep_odd_even(wide.table, Engine::MtdF), ConfigError);
}

TEST_CASE("plot data reports what a figure needs") {
  const ExperimentOutput out = run_experiment(parse_experiment_config(
      "game = synthetic\nseeds = 1..2\nsynthetic = w=3 d=6 t=0.5\ndepths = 1..3\nengines = aspnegascout\n"
      "metrology = ACTUAL, LFMT, LFMG\ntt_bits = 14\n"));
  CHECK(parse_figure("fig2") == Figure::TreeVsGraph);
  CHECK_FALSE(parse_figure("fig4"));
  CHECK(figure_name(Figure::CheapestCutoff) == "fig7_8_9");

  const std::string fig2 = emit_plotdata(out.table, Figure::TreeVsGraph);
  CHECK(fig2.rfind("#", 0) == 0);
  CHECK(fig2.find("LFMT_total") != std::string::npos);
  CHECK_NOTHROW(emit_plotdata(out.table, Figure::CutoffRate));
  CHECK_NOTHROW(emit_plotdata(out.table, Figure::Efficiency));
  try {
    emit_plotdata(out.table, Figure::CheapestCutoff);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("fig7_8_9 needs", 0) == 0);
  }
  CHECK_THROWS_AS(emit_plotdata(out.table, Figure::EtcSavings), ConfigError);
}
