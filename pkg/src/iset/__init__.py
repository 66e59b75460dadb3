"""Counting and sampling independent sets in triangle-free graphs."""

__version__ = "0.1.0"

from .graph import Graph, from_edge_list, parse_edge_list, read_edge_list  # noqa: E402
from .counting import (  # noqa: E402
    BigCount,
    BudgetExhausted,
    SizeProfile,
    brute_force_count,
    count_independent_sets,
    independence_number,
    size_profile,
)
from .aks import AksOutcome, AksParams, Path, run_aks, turan_greedy  # noqa: E402
from .bounds import evaluate_bounds, verify_sandwich  # noqa: E402
