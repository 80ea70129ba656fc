"""Exact diameter-constrained two-terminal reliability and most-reliable-graph search."""
from .census import CensusVector, census, cutset_stats, evaluate_reliability, evaluate_unreliability
from .classes import CanonicalCode, canonical_code, class_size, enumerate_class
from .graph import (
    SimpleGraph,
    TwoTerminalGraph,
    construct_A,
    construct_G_counterexample,
    construct_H,
)
from .polycmp import ComparisonVerdict, compare_on_unit_interval
from .search import lmrttg_filtration, umrttg_decide

__all__ = [
    "CanonicalCode", "CensusVector", "ComparisonVerdict", "SimpleGraph", "TwoTerminalGraph",
    "canonical_code", "census", "class_size", "compare_on_unit_interval", "construct_A",
    "construct_G_counterexample", "construct_H", "cutset_stats", "enumerate_class",
    "evaluate_reliability", "evaluate_unreliability", "lmrttg_filtration", "umrttg_decide",
]
