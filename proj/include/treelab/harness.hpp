#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treelab/csv.hpp"
#include "treelab/game.hpp"
#include "treelab/minimal_graphs.hpp"
#include "treelab/search.hpp"

namespace treelab {

// One experiment: a set of root positions, a depth range, and the engines and
// metrology quantities to measure at every (position, depth).
//
// Text form (one `key = value` per line, '#' starts a comment line):
//   game          othello6 | minicheckers | synthetic
//   fixtures      comma-separated fixture files or directories (*.pos, sorted)
//   seeds         a..b  synthetic roots generated from `synthetic` with seed a..b
//   synthetic     w=<k|a..b> d=<n> t=<float> [v=<n>]   (template for `seeds`)
//   depths        a..b or n
//   engines       all | comma list of alphabeta, negascout, aspnegascout, mtdf
//   tt_bits       table size exponent (default 20)
//   etc           off | on | on,off
//   etc_min_depth default 3
//   history       on | off
//   metrology     comma list of ACTUAL, LFMT, LFMG, RMT, ARMG
//   mm_d          ARMG cheapest-cutoff plies (default 3; capped at the depth)
//   budget        node budget per search / metrology procedure (default 1e8)
//   asp_delta     aspiration half-window (default 50)
//   out           output CSV path
struct ExperimentConfig {
  GameId game = GameId::Synthetic;
  std::vector<std::string> fixture_paths;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> seeds;
  SyntheticParams synthetic{};
  int min_depth = 1;
  int max_depth = 4;
  std::vector<Engine> engines{std::begin(kAllEngines), std::end(kAllEngines)};
  int tt_bits = 20;
  std::vector<bool> etc_settings{false};
  int etc_min_depth = 3;
  bool history = true;
  std::vector<Quantity> metrology{Quantity::Actual};
  int mm_d = 3;
  std::uint64_t budget = 100'000'000;
  Score aspiration_delta = 50;
  std::string out;
};

ExperimentConfig parse_experiment_config(std::string_view text, const std::string& source = "<config>");
ExperimentConfig read_experiment_config(const std::filesystem::path& path);
// Canonical `key = value` text; parsing it back yields the same config.
std::string format_experiment_config(const ExperimentConfig& config);

struct NamedFixture {
  std::string id;
  Fixture fixture;
};

// Fixtures named by the config, in order: files as given, directory entries
// sorted by name, then generated synthetic roots.
std::vector<NamedFixture> resolve_fixtures(const ExperimentConfig& config);

// FNV-1a over the canonical config (without `out`) and every fixture's text.
std::string config_hash(const ExperimentConfig& config, const std::vector<NamedFixture>& fixtures);

// Fixed leading columns of an experiment CSV; fmc_L<level> columns follow.
const std::vector<std::string>& experiment_columns();

struct ExperimentOutput {
  std::string hash;
  CsvTable table;  // comments hold the hash, timestamp and config echo
};

// Runs every cell. Budget overruns and table saturation produce SKIPPED rows.
// Throws InvariantViolation when two cells for the same (fixture, depth)
// disagree on the minimax value.
ExperimentOutput run_experiment(const ExperimentConfig& config);

// Writes the CSV (creating parent directories).
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Per-depth and per-parity efficiency (ACTUAL of `engine`, ETC off, against
// LFMG) from an experiment table. Needs at least two odd and two even depths.
CsvTable sweep_odd_even(const CsvTable& experiment, Engine engine);

enum class Figure { CutoffRate, TreeVsGraph, Efficiency, EtcSavings, CheapestCutoff };

std::string_view figure_name(Figure f);
std::optional<Figure> parse_figure(std::string_view name);

// Whitespace-separated plot data (one '#' header line) for one figure family.
// Throws ConfigError naming the rows the figure needs when they are missing.
std::string emit_plotdata(const CsvTable& experiment, Figure figure);

struct FixtureGenOptions {
  GameId game = GameId::Othello6;
  int count = 20;
  std::uint64_t seed = 1;
  int min_plies = 4;
  int max_plies = 12;
  SyntheticParams synthetic{};  // template for synthetic fixtures (seed replaced)
};

// Distinct non-terminal positions reached by seeded random play (real games),
// or synthetic roots with consecutive seeds.
std::vector<Fixture> generate_fixtures(const FixtureGenOptions& options);

struct FixtureCheck {
  std::string path;
  bool ok = true;
  std::string message;
};

// Parses every fixture under `path` (file or directory) and checks that it
// round-trips through the text format and is not terminal.
std::vector<FixtureCheck> check_fixtures(const std::filesystem::path& path);

}  // namespace treelab
