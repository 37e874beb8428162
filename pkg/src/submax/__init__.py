"""submax: greedy maximization of monotone submodular functions under a
cardinality budget, sequentially or across simulated machines joined by an
accumulation tree."""

from .bruteforce import ExactResult, exact_opt
from .core import (
    CardinalityConstraint,
    GreedyStats,
    GroundSet,
    Solution,
    SubmodularOracle,
    is_feasible,
    marginal_gain,
)
from .engine import (
    NodeTrace,
    RunConfig,
    RunReport,
    aggregate_node,
    run_greedyml,
    run_randgreedi,
)
from .errors import (
    ConfigError,
    IntegrityError,
    InstanceSizeError,
    ParseError,
    SubmaxError,
)
from .greedy import greedy, lazy_greedy
from .ingest import (
    DatasetDescriptor,
    ParseStats,
    load_path,
    parse_dense_csv,
    parse_edge_list,
    parse_fimi,
)
from .objectives import (
    CoverageOracle,
    DominationOracle,
    Graph,
    MedoidOracle,
    PointSet,
    SetFamily,
    kcover_value,
    kdom_value,
    kmedoid_loss,
    kmedoid_value,
    localize,
    preprocess_points,
)
from .partition import RandomTape, sample_without_replacement
from .tree import AccumulationTree, children, levels_for, node_level, parent

__version__ = "0.1.0"

__all__ = [
    "AccumulationTree",
    "CardinalityConstraint",
    "ConfigError",
    "CoverageOracle",
    "DatasetDescriptor",
    "DominationOracle",
    "ExactResult",
    "Graph",
    "GreedyStats",
    "GroundSet",
    "IntegrityError",
    "InstanceSizeError",
    "MedoidOracle",
    "NodeTrace",
    "ParseError",
    "ParseStats",
    "PointSet",
    "RandomTape",
    "RunConfig",
    "RunReport",
    "SetFamily",
    "Solution",
    "SubmaxError",
    "SubmodularOracle",
    "aggregate_node",
    "children",
    "exact_opt",
    "greedy",
    "is_feasible",
    "kcover_value",
    "kdom_value",
    "kmedoid_loss",
    "kmedoid_value",
    "lazy_greedy",
    "levels_for",
    "load_path",
    "localize",
    "marginal_gain",
    "node_level",
    "parent",
    "parse_dense_csv",
    "parse_edge_list",
    "parse_fimi",
    "preprocess_points",
    "run_greedyml",
    "run_randgreedi",
    "sample_without_replacement",
]
