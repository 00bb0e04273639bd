#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treelab/harness.hpp"

namespace py = pybind11;
using namespace treelab;

namespace {

// A game together with one of its positions.
struct PyPosition {
  Fixture fixture;

  template <class F>
  decltype(auto) with_game(F&& f) const {
    return std::visit([&](const auto& g) -> decltype(auto) { return f(g); }, make_game(fixture.spec));
  }
};

Engine engine_arg(const std::string& name) {
  const auto e = parse_engine(name);
  if (!e) throw ConfigError("unknown engine '" + name + "'");
  return *e;
}

Quantity quantity_arg(const std::string& name) {
  const auto q = parse_quantity(name);
  if (!q || *q == Quantity::Actual) throw ConfigError("unknown metrology quantity '" + name + "'");
  return *q;
}

py::dict stats_dict(const SearchStats& s) {
  py::dict d;
  d["interior_expansions"] = s.interior_expansions;
  d["leaf_evaluations"] = s.leaf_evaluations;
  d["tt_cutoffs"] = s.tt_cutoffs;
  d["tt_hits"] = s.tt_hits;
  d["etc_cutoffs"] = s.etc_cutoffs;
  d["re_searches"] = s.re_searches;
  d["node_accesses"] = s.node_accesses();
  py::list rates;
  for (std::size_t level = 0; level < s.cutoff_rank_histogram.size(); ++level) {
    const auto r = s.first_move_cutoff_rate(static_cast<int>(level));
    rates.append(r ? py::cast(*r) : py::none());
  }
  d["first_move_cutoff_rate"] = rates;
  return d;
}

py::dict report_dict(const NodeCountReport& r) {
  py::dict d;
  d["quantity"] = std::string(quantity_name(r.quantity));
  d["depth"] = r.depth;
  d["mm_d"] = r.mm_d;
  d["f"] = r.f;
  d["leaf_count"] = r.leaf_count;
  d["interior_count"] = r.interior_count;
  d["tt_cutoffs"] = r.tt_cutoffs;
  d["total_node_accesses"] = r.total_node_accesses;
  d["oracle_misses"] = r.oracle_misses;
  return d;
}

}  // namespace

PYBIND11_MODULE(_treelab, m) {
  m.doc() = "Alpha-beta search engines and minimal tree/graph metrology";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<TableSaturated>(m, "TableSaturated", PyExc_RuntimeError);

  py::class_<PyPosition>(m, "Position")
      .def_static(
          "from_text", [](const std::string& text) { return PyPosition{parse_fixture_text(text)}; }, py::arg("text"),
          "Parse a position in fixture text format.")
      .def_static(
          "from_file", [](const std::string& path) { return PyPosition{parse_fixture_file(path)}; }, py::arg("path"))
      .def_static(
          "initial",
          [](const std::string& game, const std::string& synthetic) {
            const auto id = parse_game_id(game);
            if (!id) throw ConfigError("unknown game '" + game + "'");
            GameSpec spec{*id, {}};
            if (*id == GameId::Synthetic) spec.synthetic = parse_synthetic_params(synthetic, "synthetic");
            const Position root = std::visit(
                [](const auto& g) {
                  if constexpr (std::is_same_v<std::decay_t<decltype(g)>, SyntheticGame>)
                    return g.initial(Side::Max);
                  else
                    return g.initial();
                },
                make_game(spec));
            return PyPosition{Fixture{spec, root}};
          },
          py::arg("game"), py::arg("synthetic") = "seed=1 w=3 d=6 t=0",
          "Starting position of a game; `synthetic` holds the parameters of a synthetic tree.")
      .def_property_readonly("game", [](const PyPosition& p) { return std::string(game_name(p.fixture.spec.id)); })
      .def_property_readonly("hash", [](const PyPosition& p) { return p.fixture.root.hash; })
      .def_property_readonly("max_to_move", [](const PyPosition& p) { return p.fixture.root.side == Side::Max; })
      .def("text", [](const PyPosition& p) { return write_fixture(p.fixture); })
      .def(
          "moves",
          [](const PyPosition& p) {
            return p.with_game([&](const auto& g) {
              MoveList ml;
              g.generate_moves(p.fixture.root, ml);
              std::vector<int> codes;
              for (Move mv : ml) codes.push_back(mv.code);
              return codes;
            });
          },
          "Move codes in generation order; empty at terminal positions.")
      .def(
          "play",
          [](const PyPosition& p, int code) {
            return p.with_game([&](const auto& g) {
              MoveList ml;
              g.generate_moves(p.fixture.root, ml);
              for (Move mv : ml)
                if (mv.code == code) return PyPosition{Fixture{p.fixture.spec, g.apply(p.fixture.root, mv)}};
              throw ContractViolation("move " + std::to_string(code) + " is not legal here");
            });
          },
          py::arg("move"))
      .def("evaluate", [](const PyPosition& p) { return p.with_game([&](const auto& g) { return g.evaluate(p.fixture.root); }); },
           "Static value from the side to move's point of view.")
      .def("is_terminal",
           [](const PyPosition& p) { return p.with_game([&](const auto& g) { return g.is_terminal(p.fixture.root); }); })
      .def("__repr__", [](const PyPosition& p) { return "<treelab.Position " + std::string(game_name(p.fixture.spec.id)) + ">"; });

  m.def(
      "search",
      [](const PyPosition& p, int depth, const std::string& engine, int tt_bits, bool etc, bool iterative,
         bool history) {
        return p.with_game([&](const auto& g) {
          using G = std::decay_t<decltype(g)>;
          TTable table(tt_bits);
          SearchOptions opts;
          opts.use_history = history;
          opts.etc.enabled = etc;
          Searcher<G> s(g, &table, opts);
          const Engine e = engine_arg(engine);
          SearchResult r;
          if (iterative) {
            r = s.iterative_deepening(p.fixture.root, depth, e).back();
          } else {
            r = s.run(e, p.fixture.root, depth);
          }
          py::dict d;
          d["value"] = r.value;
          d["best_move"] = r.best_move.code;
          d["depth"] = r.depth;
          d["passes"] = r.passes;
          d["stats"] = stats_dict(r.stats);
          return d;
        });
      },
      py::arg("position"), py::arg("depth"), py::arg("engine") = "aspnegascout", py::arg("tt_bits") = 20,
      py::arg("etc") = false, py::arg("iterative") = true, py::arg("history") = true,
      "Fixed-depth search; with `iterative` the counts are those of the last iteration.");

  m.def(
      "metrology",
      [](const PyPosition& p, int depth, const std::string& quantity, int mm_d, int tt_bits, std::uint64_t budget) {
        MetrologyConfig mc;
        mc.tt_bits = tt_bits;
        mc.node_budget = budget;
        const Quantity q = quantity_arg(quantity);
        return p.with_game([&](const auto& g) {
          switch (q) {
            case Quantity::Lfmt: return report_dict(compute_lfmt(g, p.fixture.root, depth, mc));
            case Quantity::Lfmg: return report_dict(compute_lfmg(g, p.fixture.root, depth, mc));
            case Quantity::Rmt: return report_dict(compute_rmt(g, p.fixture.root, depth, mc));
            default: return report_dict(compute_armg(g, p.fixture.root, depth, mm_d, mc));
          }
        });
      },
      py::arg("position"), py::arg("depth"), py::arg("quantity"), py::arg("mm_d") = 3, py::arg("tt_bits") = 20,
      py::arg("budget") = 100'000'000, "Node counts of LFMT, LFMG, RMT or ARMG.");

  m.def(
      "run_experiment",
      [](const std::string& config_text) {
        const ExperimentOutput out = run_experiment(parse_experiment_config(config_text));
        return py::make_tuple(out.hash, format_csv(out.table));
      },
      py::arg("config"), "Run an experiment from config text; returns (config_hash, csv_text).");

  m.def(
      "csv_body", [](const std::string& csv) { return format_csv_body(parse_csv(csv)); }, py::arg("csv"),
      "Header and rows of an experiment CSV, without the comment lines.");

  m.def(
      "plot_data",
      [](const std::string& csv, const std::string& figure) {
        const auto f = parse_figure(figure);
        if (!f) throw ConfigError("unknown figure '" + figure + "'");
        return emit_plotdata(parse_csv(csv), *f);
      },
      py::arg("csv"), py::arg("figure"));

  m.def(
      "odd_even_summary",
      [](const std::string& csv, const std::string& engine) {
        return format_csv(sweep_odd_even(parse_csv(csv), engine_arg(engine)));
      },
      py::arg("csv"), py::arg("engine") = "aspnegascout");

  m.def(
      "generate_fixtures",
      [](const std::string& game, int count, std::uint64_t seed, int min_plies, int max_plies,
         const std::string& synthetic) {
        FixtureGenOptions o;
        const auto id = parse_game_id(game);
        if (!id) throw ConfigError("unknown game '" + game + "'");
        o.game = *id;
        o.count = count;
        o.seed = seed;
        o.min_plies = min_plies;
        o.max_plies = max_plies;
        if (o.game == GameId::Synthetic) o.synthetic = parse_synthetic_params("seed=0 " + synthetic, "synthetic");
        std::vector<std::string> out;
        for (const auto& f : generate_fixtures(o)) out.push_back(write_fixture(f));
        return out;
      },
      py::arg("game"), py::arg("count") = 20, py::arg("seed") = 1, py::arg("min_plies") = 4, py::arg("max_plies") = 12,
      py::arg("synthetic") = "w=3..5 d=12 t=0.5 v=100", "Fixture texts from seeded random play.");
}
