"""Dual-critical graphs: exact and randomized recognition, k-dual-criticality
with an FPT kernel, and checkers for the cubic and planar special cases."""

from .exact import find_good_ordering, find_t_odd_ordering, is_dual_critical, is_super_dual_critical
from .graph import GraphError, MultiGraph, SizeLimitError, parse_edge_list
from .kdc import fpt_kdc, kernelize, maxdc, recursive_kdc, verify_good_partition
from .szegedy import szegedy_is_dc

__all__ = [
    "GraphError",
    "MultiGraph",
    "SizeLimitError",
    "find_good_ordering",
    "find_t_odd_ordering",
    "fpt_kdc",
    "is_dual_critical",
    "is_super_dual_critical",
    "kernelize",
    "maxdc",
    "parse_edge_list",
    "recursive_kdc",
    "szegedy_is_dc",
    "verify_good_partition",
]
