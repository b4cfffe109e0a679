"""Exact simulation and verification of a one-way two-party matching protocol."""

from .graph import (
    GraphInstance,
    InstanceError,
    all_maximum_matchings,
    edge_compare,
    lex_first_maximal_matching,
    lex_first_maximum_matching,
    matching_compare,
    maximum_matching_size,
)
from .decomposition import decompose, path_stats
from .protocol import (
    ExactStats,
    Partition,
    enumerate_fully_robust,
    enumerate_semi_robust,
    monte_carlo,
    run_protocol,
)

__version__ = "0.1.0"
