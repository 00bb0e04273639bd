#include "treelab/search.hpp"

namespace treelab {

std::string_view engine_name(Engine engine) {
  switch (engine) {
    case Engine::AlphaBeta: return "alphabeta";
    case Engine::NegaScout: return "negascout";
    case Engine::AspNegaScout: return "aspnegascout";
    case Engine::MtdF: return "mtdf";
  }
  return "?";
}

std::optional<Engine> parse_engine(std::string_view name) {
  for (Engine e : kAllEngines)
    if (engine_name(e) == name) return e;
  return std::nullopt;
}

template class Searcher<Othello6>;
template class Searcher<MiniCheckers>;
template class Searcher<SyntheticGame>;

}  // namespace treelab
