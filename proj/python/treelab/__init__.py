"""Alpha-beta search engines and minimal tree/graph metrology."""

from ._treelab import (
    BudgetExceeded,
    ConfigError,
    ContractViolation,
    InvariantViolation,
    ParseError,
    Position,
    TableSaturated,
    csv_body,
    generate_fixtures,
    metrology,
    odd_even_summary,
    plot_data,
    run_experiment,
    search,
)

ENGINES = ("alphabeta", "negascout", "aspnegascout", "mtdf")

__all__ = [
    "BudgetExceeded",
    "ConfigError",
    "ContractViolation",
    "ENGINES",
    "InvariantViolation",
    "ParseError",
    "Position",
    "TableSaturated",
    "csv_body",
    "generate_fixtures",
    "metrology",
    "odd_even_summary",
    "plot_data",
    "run_experiment",
    "search",
]
