"""Graphs with no cycle of length divisible by four.

The modules cover bitset graphs and graph6 I/O (``graph``), canonical
labelling (``canon``), path and cycle residues (``residue``), exhaustive
generation (``enumeration``), rooted gadgets and the parallel sum
(``gadgets``), gap-reducing construction steps (``constructor``), an
expression language for sums (``dsl``) and the exhaustive checks (``search``).
"""

from __future__ import annotations

from .gadgets import RootedGraph, gadget, gap, parallel_sum, reverse_at, reversing_equivalent
from .graph import Graph, Graph6Error, from_graph6, parse_graph, to_graph6
from .residue import ResidueSet, cycle_residues, has_mod_cycle, is_modfree, path_residues

__all__ = [
    "Graph",
    "Graph6Error",
    "ResidueSet",
    "RootedGraph",
    "cycle_residues",
    "from_graph6",
    "gadget",
    "gap",
    "has_mod_cycle",
    "is_modfree",
    "parallel_sum",
    "parse_graph",
    "path_residues",
    "reverse_at",
    "reversing_equivalent",
    "to_graph6",
]
__version__ = "0.1.0"
