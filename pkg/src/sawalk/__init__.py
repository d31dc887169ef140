"""Self-avoiding walk search over mixed-radix coordinate spaces.

The package couples a generic best-neighbor walk engine (restart on trap,
FIFO visited buffer, probe-count censoring) with the 2D square-lattice HP
chain-folding objective, an exhaustive small-instance oracle, and a seeded
experiment harness with a CLI.
"""

from sawalk.engine import (
    FunctionProblem,
    SearchConfig,
    SearchResult,
    VisitedBuffer,
    run_search,
)
from sawalk.harness import ExperimentConfig, ExperimentStats, run_experiment, stats
from sawalk.hpfold import (
    FoldOutcome,
    HPProblem,
    contacts,
    decode_fold,
    make_problem,
    objective_value,
    spiral_instance,
    target_energy,
    weight,
)
from sawalk.mixedradix import (
    Coordinate,
    HasseStats,
    RadixSpec,
    SpaceTooLargeError,
    hasse_dot,
    hasse_stats,
    neighbors,
    parse_coordinate,
    parse_spec,
    random_coordinate,
    rank_distance,
)
from sawalk.oracle import OracleReport, count_at_or_below, enumerate_optimum
from sawalk.render import render_conformation

__all__ = [
    "Coordinate",
    "ExperimentConfig",
    "ExperimentStats",
    "FoldOutcome",
    "FunctionProblem",
    "HPProblem",
    "HasseStats",
    "OracleReport",
    "RadixSpec",
    "SearchConfig",
    "SearchResult",
    "SpaceTooLargeError",
    "VisitedBuffer",
    "contacts",
    "count_at_or_below",
    "decode_fold",
    "enumerate_optimum",
    "hasse_dot",
    "hasse_stats",
    "make_problem",
    "neighbors",
    "objective_value",
    "parse_coordinate",
    "parse_spec",
    "random_coordinate",
    "rank_distance",
    "render_conformation",
    "run_experiment",
    "run_search",
    "spiral_instance",
    "stats",
    "target_energy",
    "weight",
]

__version__ = "0.1.0"
