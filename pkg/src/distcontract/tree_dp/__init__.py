"""Exact dynamic programs for (weak) contractions of weighted trees."""

from .pareto import MergeResult, ParetoEntry, naive_merge, pareto_filter, pareto_merge
from .rooted import RootedOrderedTree, lambda_set, load_at, weak_load_at
from .strict import LoadTables, StrictTreeDP, solve_tree_contraction
from .weak import WeakTreeDP, solve_tree_weak_contraction

__all__ = [
    "LoadTables",
    "MergeResult",
    "ParetoEntry",
    "RootedOrderedTree",
    "StrictTreeDP",
    "WeakTreeDP",
    "lambda_set",
    "load_at",
    "naive_merge",
    "pareto_filter",
    "pareto_merge",
    "solve_tree_contraction",
    "solve_tree_weak_contraction",
    "weak_load_at",
]
