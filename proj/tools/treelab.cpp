// treelab command-line driver: experiments, sweeps, plot data and fixtures.
//
// Exit codes: 0 success, 1 usage error, 2 data error (unreadable or invalid
// input, failed fixture check), 3 invariant violation (a search bug).

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "treelab/harness.hpp"

using namespace treelab;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInvariant = 3;

std::pair<int, int> parse_depths(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int d = std::stoi(text);
      return {d, d};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--depths", "expected a..b or a single depth, got '" + text + "'");
  }
}

Engine engine_arg(const std::string& name) {
  const auto e = parse_engine(name);
  if (!e) throw CLI::ValidationError("--engine", "unknown engine '" + name + "'");
  return *e;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treelab: alpha-beta search and minimal tree/graph metrology"};
  app.require_subcommand(1);

  // run
  std::string config_path;
  std::string run_out;
  auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
  run->add_option("--config", config_path, "Experiment config file")->required();
  run->add_option("--out", run_out, "Output CSV (overrides 'out' in the config)");

  // sweep
  std::string sweep_game;
  std::string sweep_depths;
  std::string sweep_engine = "aspnegascout";
  std::string sweep_etc = "off";
  int sweep_etc_min = 3;
  int sweep_bits = 20;
  std::string sweep_metrology = "ACTUAL,LFMG";
  int sweep_mm_d = 3;
  std::string sweep_fixtures;
  std::string sweep_seeds;
  std::string sweep_synthetic = "w=3..5 d=12 t=0.5 v=100";
  std::string sweep_out;
  std::string sweep_summary;
  double sweep_budget = 1e8;
  auto* sweep = app.add_subcommand("sweep", "Depth sweep for one engine; optional odd/even summary");
  sweep->add_option("--game", sweep_game, "othello6 | minicheckers | synthetic")->required();
  sweep->add_option("--depths", sweep_depths, "Depth range a..b")->required();
  sweep->add_option("--engine", sweep_engine, "alphabeta | negascout | aspnegascout | mtdf")->capture_default_str();
  sweep->add_option("--etc", sweep_etc, "on | off | on,off")->capture_default_str();
  sweep->add_option("--etc-min-depth", sweep_etc_min, "Minimum remaining depth for ETC")->capture_default_str();
  sweep->add_option("--tt-bits", sweep_bits, "Table size exponent")->capture_default_str();
  sweep->add_option("--metrology", sweep_metrology, "Quantities to measure")->capture_default_str();
  sweep->add_option("--mm-d", sweep_mm_d, "ARMG cheapest-cutoff plies")->capture_default_str();
  sweep->add_option("--fixtures", sweep_fixtures, "Fixture files or directories (default fixtures/<game>)");
  sweep->add_option("--seeds", sweep_seeds, "Synthetic seed range a..b (instead of fixtures)");
  sweep->add_option("--synthetic", sweep_synthetic, "Synthetic template for --seeds")->capture_default_str();
  sweep->add_option("--budget", sweep_budget, "Node budget per search")->capture_default_str();
  sweep->add_option("--out", sweep_out, "Output CSV")->required();
  sweep->add_option("--summary", sweep_summary, "Write the odd/even efficiency summary CSV here");

  // plot
  std::string plot_figure;
  std::string plot_in;
  std::string plot_out;
  auto* plot = app.add_subcommand("plot", "Emit plot data for one figure family from an experiment CSV");
  plot->add_option("--figure", plot_figure, "fig1 | fig2 | fig3 | fig5_6 | fig7_8_9")->required();
  plot->add_option("--in", plot_in, "Experiment CSV")->required();
  plot->add_option("--out", plot_out, "Output file ('-' for stdout)");

  // fixture gen / check
  auto* fixture = app.add_subcommand("fixture", "Generate or check fixture files");
  fixture->require_subcommand(1);
  FixtureGenOptions gen;
  std::string gen_game;
  std::string gen_dir;
  std::string gen_synthetic = "w=3..5 d=12 t=0.5 v=100";
  auto* fgen = fixture->add_subcommand("gen", "Generate fixtures by seeded random play");
  fgen->add_option("--game", gen_game, "othello6 | minicheckers | synthetic")->required();
  fgen->add_option("--count", gen.count, "Number of fixtures")->capture_default_str();
  fgen->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  fgen->add_option("--min-plies", gen.min_plies, "Fewest random plies from the start")->capture_default_str();
  fgen->add_option("--max-plies", gen.max_plies, "Most random plies from the start")->capture_default_str();
  fgen->add_option("--synthetic", gen_synthetic, "Synthetic template")->capture_default_str();
  fgen->add_option("--out", gen_dir, "Output directory")->required();
  std::vector<std::string> check_paths;
  auto* fcheck = fixture->add_subcommand("check", "Parse and validate fixture files");
  fcheck->add_option("paths", check_paths, "Fixture files or directories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) {
      ExperimentConfig config = read_experiment_config(config_path);
      if (!run_out.empty()) config.out = run_out;
      const ExperimentOutput out = run_experiment(config);
      write_or_print(config.out, format_csv(out.table));
      std::cerr << "config_hash=" << out.hash << " rows=" << out.table.rows.size() << "\n";
      return 0;
    }

    if (sweep->parsed()) {
      std::string text = "game = " + sweep_game + "\n";
      text += "depths = " + sweep_depths + "\n";
      text += "engines = " + sweep_engine + "\n";
      text += "etc = " + sweep_etc + "\n";
      text += "etc_min_depth = " + std::to_string(sweep_etc_min) + "\n";
      text += "tt_bits = " + std::to_string(sweep_bits) + "\n";
      text += "metrology = " + sweep_metrology + "\n";
      text += "mm_d = " + std::to_string(sweep_mm_d) + "\n";
      text += "budget = " + std::to_string(static_cast<unsigned long long>(sweep_budget)) + "\n";
      if (!sweep_seeds.empty()) {
        text += "seeds = " + sweep_seeds + "\n";
        text += "synthetic = " + sweep_synthetic + "\n";
      }
      if (!sweep_fixtures.empty())
        text += "fixtures = " + sweep_fixtures + "\n";
      else if (sweep_seeds.empty())
        text += "fixtures = fixtures/" + sweep_game + "\n";
      text += "out = " + sweep_out + "\n";
      parse_depths(sweep_depths);
      const Engine engine = engine_arg(sweep_engine);
      const ExperimentConfig config = parse_experiment_config(text, "<sweep arguments>");
      const ExperimentOutput out = run_experiment(config);
      write_text_file(config.out, format_csv(out.table));
      if (!sweep_summary.empty()) write_text_file(sweep_summary, format_csv(sweep_odd_even(out.table, engine)));
      std::cerr << "config_hash=" << out.hash << " rows=" << out.table.rows.size() << "\n";
      return 0;
    }

    if (plot->parsed()) {
      const auto figure = parse_figure(plot_figure);
      if (!figure) {
        std::cerr << "unknown figure '" << plot_figure << "' (fig1, fig2, fig3, fig5_6, fig7_8_9)\n";
        return kExitUsage;
      }
      write_or_print(plot_out, emit_plotdata(read_csv_file(plot_in), *figure));
      return 0;
    }

    if (fgen->parsed()) {
      const auto id = parse_game_id(gen_game);
      if (!id) {
        std::cerr << "unknown game '" << gen_game << "'\n";
        return kExitUsage;
      }
      gen.game = *id;
      if (gen.game == GameId::Synthetic) gen.synthetic = parse_synthetic_params("seed=0 " + gen_synthetic, "--synthetic");
      const auto fixtures = generate_fixtures(gen);
      for (std::size_t i = 0; i < fixtures.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "%s_%02zu.pos", gen_game.c_str(), i + 1);
        write_text_file(std::filesystem::path(gen_dir) / name, write_fixture(fixtures[i]));
      }
      std::cerr << "wrote " << fixtures.size() << " fixtures to " << gen_dir << "\n";
      return 0;
    }

    if (fcheck->parsed()) {
      bool all_ok = true;
      for (const auto& p : check_paths) {
        for (const auto& c : check_fixtures(p)) {
          std::cout << (c.ok ? "OK   " : "FAIL ") << c.path << (c.ok ? "" : ": " + c.message) << "\n";
          all_ok = all_ok && c.ok;
        }
      }
      return all_ok ? 0 : kExitData;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
