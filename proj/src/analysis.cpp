#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "treelab/harness.hpp"

namespace treelab {

namespace {

struct Row {
  std::string fixture;
  int depth = 0;
  std::string quantity;
  std::string engine;
  std::string etc;
  double total = 0;
  double leaf = 0;
  std::vector<std::string> fmc;  // per level, may be empty strings
};

// OK rows of an experiment table in a typed form.
std::vector<Row> ok_rows(const CsvTable& t) {
  const std::size_t c_fixture = t.require_column("fixture");
  const std::size_t c_depth = t.require_column("depth");
  const std::size_t c_quantity = t.require_column("quantity");
  const std::size_t c_engine = t.require_column("engine");
  const std::size_t c_etc = t.require_column("etc");
  const std::size_t c_status = t.require_column("status");
  const std::size_t c_total = t.require_column("total_node_accesses");
  const std::size_t c_leaf = t.require_column("leaf_count");
  std::vector<std::size_t> c_fmc;
  for (int level = 0;; ++level) {
    const auto c = t.column("fmc_L" + std::to_string(level));
    if (!c) break;
    c_fmc.push_back(*c);
  }
  std::vector<Row> out;
  for (const auto& r : t.rows) {
    if (r[c_status] != "OK") continue;
    Row row;
    row.fixture = r[c_fixture];
    row.depth = std::stoi(r[c_depth]);
    row.quantity = r[c_quantity];
    row.engine = r[c_engine];
    row.etc = r[c_etc];
    row.total = std::stod(r[c_total]);
    row.leaf = std::stod(r[c_leaf]);
    for (std::size_t c : c_fmc) row.fmc.push_back(r[c]);
    out.push_back(std::move(row));
  }
  return out;
}

using Key = std::pair<std::string, int>;  // (fixture, depth)

std::map<Key, const Row*> index_rows(const std::vector<Row>& rows, std::string_view quantity,
                                     std::string_view engine = "", std::string_view etc = "") {
  std::map<Key, const Row*> out;
  for (const Row& r : rows) {
    if (r.quantity != quantity) continue;
    if (!engine.empty() && r.engine != engine) continue;
    if (!etc.empty() && r.etc != etc) continue;
    out.emplace(Key{r.fixture, r.depth}, &r);
  }
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0;
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct Pair {
  double ratio_total;
  double ratio_leaf;
  double actual_total;
  double lfmg_total;
};

// Per-depth (ACTUAL / LFMG) pairs for one engine with ETC off.
std::map<int, std::vector<Pair>> efficiency_pairs(const std::vector<Row>& rows, std::string_view engine) {
  const auto actual = index_rows(rows, "ACTUAL", engine, "off");
  const auto lfmg = index_rows(rows, "LFMG");
  std::map<int, std::vector<Pair>> out;
  for (const auto& [key, a] : actual) {
    const auto it = lfmg.find(key);
    if (it == lfmg.end() || it->second->total == 0 || it->second->leaf == 0) continue;
    const Row& g = *it->second;
    out[key.second].push_back({a->total / g.total, a->leaf / g.leaf, a->total, g.total});
  }
  return out;
}

}  // namespace

CsvTable sweep_odd_even(const CsvTable& experiment, Engine engine) {
  const std::vector<Row> rows = ok_rows(experiment);
  const auto pairs = efficiency_pairs(rows, engine_name(engine));
  int odd = 0;
  int even = 0;
  for (const auto& [depth, v] : pairs) (depth % 2 ? odd : even)++;
  if (odd < 2 || even < 2)
    throw ConfigError("odd/even sweep needs ACTUAL (" + std::string(engine_name(engine)) +
                      ", etc off) and LFMG rows at two or more odd and two or more even depths; found " +
                      std::to_string(odd) + " odd and " + std::to_string(even) + " even");

  CsvTable out;
  out.comments.push_back("odd/even efficiency summary, engine=" + std::string(engine_name(engine)) +
                         ", ratio = ACTUAL / LFMG");
  out.header = {"scope",           "depth",            "parity",          "pairs", "median_ratio_total",
                "median_ratio_leaf", "mean_ratio_total", "ratio_of_sums_total"};
  std::map<std::string, std::vector<Pair>> by_parity;
  auto summarize = [](const std::vector<Pair>& v) {
    std::vector<double> total;
    std::vector<double> leaf;
    double sum_a = 0;
    double sum_g = 0;
    for (const Pair& p : v) {
      total.push_back(p.ratio_total);
      leaf.push_back(p.ratio_leaf);
      sum_a += p.actual_total;
      sum_g += p.lfmg_total;
    }
    return std::vector<std::string>{std::to_string(v.size()), fmt(median(total)), fmt(median(leaf)), fmt(mean(total)),
                                    fmt(sum_g > 0 ? sum_a / sum_g : 0)};
  };
  for (const auto& [depth, v] : pairs) {
    const std::string parity = depth % 2 ? "odd" : "even";
    std::vector<std::string> row{"depth", std::to_string(depth), parity};
    for (auto& s : summarize(v)) row.push_back(std::move(s));
    out.rows.push_back(std::move(row));
    auto& bucket = by_parity[parity];
    bucket.insert(bucket.end(), v.begin(), v.end());
  }
  for (const std::string parity : {"odd", "even"}) {
    std::vector<std::string> row{"parity", "-", parity};
    for (auto& s : summarize(by_parity[parity])) row.push_back(std::move(s));
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string_view figure_name(Figure f) {
  switch (f) {
    case Figure::CutoffRate: return "fig1";
    case Figure::TreeVsGraph: return "fig2";
    case Figure::Efficiency: return "fig3";
    case Figure::EtcSavings: return "fig5_6";
    case Figure::CheapestCutoff: return "fig7_8_9";
  }
  return "?";
}

std::optional<Figure> parse_figure(std::string_view name) {
  for (Figure f : {Figure::CutoffRate, Figure::TreeVsGraph, Figure::Efficiency, Figure::EtcSavings,
                   Figure::CheapestCutoff})
    if (figure_name(f) == name) return f;
  return std::nullopt;
}

namespace {

[[noreturn]] void missing(Figure f, const std::string& what) {
  throw ConfigError(std::string(figure_name(f)) + " needs " + what);
}

std::vector<std::string> engines_present(const std::vector<Row>& rows, std::string_view etc) {
  std::vector<std::string> out;
  for (Engine e : kAllEngines) {
    const std::string name(engine_name(e));
    for (const Row& r : rows)
      if (r.quantity == "ACTUAL" && r.engine == name && (etc.empty() || r.etc == etc)) {
        out.push_back(name);
        break;
      }
  }
  return out;
}

std::string cutoff_rate(const std::vector<Row>& rows) {
  std::vector<std::string> engines = engines_present(rows, "off");
  std::string etc = "off";
  if (engines.empty()) {
    engines = engines_present(rows, "");
    etc = "";
  }
  if (engines.empty()) missing(Figure::CutoffRate, "ACTUAL rows (metrology must include ACTUAL)");
  const std::string engine =
      std::find(engines.begin(), engines.end(), "aspnegascout") != engines.end() ? "aspnegascout" : engines.front();
  int depth = 0;
  for (const Row& r : rows)
    if (r.quantity == "ACTUAL" && r.engine == engine && (etc.empty() || r.etc == etc)) depth = std::max(depth, r.depth);

  std::string out = "# fig1 first-move cutoff rate per level, engine=" + engine + " depth=" + std::to_string(depth) +
                    (etc.empty() ? "" : " etc=" + etc) + "\n# level mean_rate fixtures\n";
  for (int level = 0; level < depth; ++level) {
    std::vector<double> rates;
    for (const Row& r : rows) {
      if (r.quantity != "ACTUAL" || r.engine != engine || r.depth != depth || (!etc.empty() && r.etc != etc)) continue;
      if (static_cast<std::size_t>(level) < r.fmc.size() && !r.fmc[static_cast<std::size_t>(level)].empty())
        rates.push_back(std::stod(r.fmc[static_cast<std::size_t>(level)]));
    }
    if (rates.empty()) continue;
    out += std::to_string(level) + " " + fmt(mean(rates)) + " " + std::to_string(rates.size()) + "\n";
  }
  return out;
}

std::string tree_vs_graph(const std::vector<Row>& rows) {
  const auto lfmt = index_rows(rows, "LFMT");
  const auto lfmg = index_rows(rows, "LFMG");
  if (lfmt.empty() || lfmg.empty()) missing(Figure::TreeVsGraph, "LFMT and LFMG rows (metrology = LFMT,LFMG)");
  std::map<int, std::vector<std::pair<const Row*, const Row*>>> by_depth;
  for (const auto& [key, t] : lfmt)
    if (const auto it = lfmg.find(key); it != lfmg.end()) by_depth[key.second].emplace_back(t, it->second);
  std::string out =
      "# fig2 left-first minimal tree vs graph\n"
      "# depth LFMT_total LFMG_total LFMT_leaf LFMG_leaf median_ratio_total fixtures   (totals and leaves are fixture means)\n";
  for (const auto& [depth, v] : by_depth) {
    std::vector<double> tt, gt, tl, gl, ratio;
    for (const auto& [t, g] : v) {
      tt.push_back(t->total);
      gt.push_back(g->total);
      tl.push_back(t->leaf);
      gl.push_back(g->leaf);
      ratio.push_back(g->total > 0 ? t->total / g->total : 0);
    }
    out += std::to_string(depth) + " " + fmt(mean(tt)) + " " + fmt(mean(gt)) + " " + fmt(mean(tl)) + " " +
           fmt(mean(gl)) + " " + fmt(median(ratio)) + " " + std::to_string(v.size()) + "\n";
  }
  return out;
}

std::string efficiency(const std::vector<Row>& rows) {
  const std::vector<std::string> engines = engines_present(rows, "off");
  if (engines.empty()) missing(Figure::Efficiency, "ACTUAL rows with etc=off (metrology must include ACTUAL)");
  if (index_rows(rows, "LFMG").empty()) missing(Figure::Efficiency, "LFMG rows (metrology must include LFMG)");
  std::string out =
      "# fig3 efficiency relative to the left-first minimal graph (ACTUAL / LFMG)\n"
      "# engine depth median_ratio_total median_ratio_leaf ratio_of_sums_total fixtures\n";
  for (const std::string& engine : engines) {
    for (const auto& [depth, v] : efficiency_pairs(rows, engine)) {
      std::vector<double> total, leaf;
      double sa = 0, sg = 0;
      for (const Pair& p : v) {
        total.push_back(p.ratio_total);
        leaf.push_back(p.ratio_leaf);
        sa += p.actual_total;
        sg += p.lfmg_total;
      }
      out += engine + " " + std::to_string(depth) + " " + fmt(median(total)) + " " + fmt(median(leaf)) + " " +
             fmt(sg > 0 ? sa / sg : 0) + " " + std::to_string(v.size()) + "\n";
    }
  }
  return out;
}

std::string etc_savings(const std::vector<Row>& rows) {
  const std::vector<std::string> off = engines_present(rows, "off");
  const std::vector<std::string> on = engines_present(rows, "on");
  if (off.empty()) missing(Figure::EtcSavings, "ACTUAL rows with etc=off as the baseline (set etc = on,off)");
  if (on.empty()) missing(Figure::EtcSavings, "ACTUAL rows with etc=on (set etc = on,off)");
  std::string out =
      "# fig5_6 enhanced transposition cutoffs\n"
      "# engine depth mean_total_off mean_total_on mean_leaf_off mean_leaf_on median_on_off_ratio fixtures\n";
  for (const std::string& engine : off) {
    if (std::find(on.begin(), on.end(), engine) == on.end()) continue;
    const auto base = index_rows(rows, "ACTUAL", engine, "off");
    const auto with = index_rows(rows, "ACTUAL", engine, "on");
    std::map<int, std::vector<std::pair<const Row*, const Row*>>> by_depth;
    for (const auto& [key, b] : base)
      if (const auto it = with.find(key); it != with.end()) by_depth[key.second].emplace_back(b, it->second);
    for (const auto& [depth, v] : by_depth) {
      std::vector<double> to, tn, lo, ln, ratio;
      for (const auto& [b, w] : v) {
        to.push_back(b->total);
        tn.push_back(w->total);
        lo.push_back(b->leaf);
        ln.push_back(w->leaf);
        ratio.push_back(b->total > 0 ? w->total / b->total : 0);
      }
      out += engine + " " + std::to_string(depth) + " " + fmt(mean(to)) + " " + fmt(mean(tn)) + " " + fmt(mean(lo)) +
             " " + fmt(mean(ln)) + " " + fmt(median(ratio)) + " " + std::to_string(v.size()) + "\n";
    }
  }
  return out;
}

std::string cheapest_cutoff(const std::vector<Row>& rows) {
  const auto lfmt = index_rows(rows, "LFMT");
  const auto lfmg = index_rows(rows, "LFMG");
  const auto rmt = index_rows(rows, "RMT");
  const auto armg = index_rows(rows, "ARMG");
  if (lfmt.empty() || lfmg.empty())
    missing(Figure::CheapestCutoff, "LFMT and LFMG rows together with RMT or ARMG rows");
  if (rmt.empty() && armg.empty()) missing(Figure::CheapestCutoff, "RMT or ARMG rows (metrology = LFMT,LFMG,RMT,ARMG)");
  std::set<int> depths;
  for (const auto& [key, r] : lfmt) depths.insert(key.second);
  std::string out =
      "# fig7_8_9 cheapest-cutoff minimal trees and graphs ('-' = not computed)\n"
      "# depth mean_lfmt mean_lfmg mean_rmt mean_armg median_lfmt_over_rmt median_lfmg_over_armg\n";
  for (int depth : depths) {
    std::vector<double> t, g, r, a, tr, ga;
    for (const auto& [key, row] : lfmt) {
      if (key.second != depth) continue;
      t.push_back(row->total);
      if (const auto it = lfmg.find(key); it != lfmg.end()) {
        g.push_back(it->second->total);
        if (const auto ia = armg.find(key); ia != armg.end() && ia->second->total > 0) {
          a.push_back(ia->second->total);
          ga.push_back(it->second->total / ia->second->total);
        }
      }
      if (const auto ir = rmt.find(key); ir != rmt.end() && ir->second->total > 0) {
        r.push_back(ir->second->total);
        tr.push_back(row->total / ir->second->total);
      }
    }
    auto cell = [](const std::vector<double>& v, bool use_median) {
      if (v.empty()) return std::string("-");
      return fmt(use_median ? median(v) : mean(v));
    };
    out += std::to_string(depth) + " " + cell(t, false) + " " + cell(g, false) + " " + cell(r, false) + " " +
           cell(a, false) + " " + cell(tr, true) + " " + cell(ga, true) + "\n";
  }
  return out;
}

}  // namespace

std::string emit_plotdata(const CsvTable& experiment, Figure figure) {
  const std::vector<Row> rows = ok_rows(experiment);
  switch (figure) {
    case Figure::CutoffRate: return cutoff_rate(rows);
    case Figure::TreeVsGraph: return tree_vs_graph(rows);
    case Figure::Efficiency: return efficiency(rows);
    case Figure::EtcSavings: return etc_savings(rows);
    case Figure::CheapestCutoff: return cheapest_cutoff(rows);
  }
  throw ContractViolation("unknown figure");
}

}  // namespace treelab
