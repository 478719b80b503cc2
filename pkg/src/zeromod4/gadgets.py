"""Rooted graphs, parallel sums, reversing at 2-cuts, and the gadget catalogue.

The catalogue graphs were found once by exhaustive search over rooted
graphs meeting each gadget's constraints and are stored here as graph6 data;
``validate_gadget`` re-checks every constraint, and the test suite re-derives
each gadget from scratch.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .canon import canonical_form, canonical_key
from .graph import (
    CutWitness,
    Graph,
    bits,
    complete_graph,
    cycle_graph,
    from_graph6,
    is_biconnected,
    pair_cuts,
    path_graph,
    to_graph6,
)
from .residue import ResidueSet, has_mod_cycle, path_residues, sumset_mask


@dataclass(frozen=True)
class RootedGraph:
    """A graph with an ordered root pair (x, y); ``labels`` names extra vertices."""

    graph: Graph
    x: int
    y: int
    labels: tuple[tuple[str, int], ...] = field(default=())

    def __post_init__(self) -> None:
        n = self.graph.n
        for v in (self.x, self.y, *(v for _, v in self.labels)):
            if not 0 <= v < n:
                raise ValueError(f"root {v} out of range for a {n}-vertex graph")

    @property
    def roots(self) -> tuple[int, int]:
        return (self.x, self.y)

    def label(self, name: str) -> int:
        for key, v in self.labels:
            if key == name:
                return v
        raise KeyError(name)

    def vertex(self, name: str | int) -> int:
        """Resolve a root label (a, b, or a named extra vertex) or a raw id."""
        if isinstance(name, int):
            if not 0 <= name < self.graph.n:
                raise ValueError(f"vertex {name} out of range for a {self.graph.n}-vertex graph")
            return name
        if name == "a":
            return self.x
        if name == "b":
            return self.y
        return self.label(name)

    def reroot(self, x: int, y: int) -> RootedGraph:
        return RootedGraph(self.graph, x, y, self.labels)

    def residues(self, k: int = 4) -> ResidueSet:
        return path_residues(self.graph, self.x, self.y, k)

    def to_json(self) -> dict:
        return {"graph6": to_graph6(self.graph), "roots": [self.x, self.y],
                **({"labels": dict(self.labels)} if self.labels else {})}


def gap(g: Graph) -> int:
    return 3 * g.n - 1 - 2 * g.num_edges


# ---------------------------------------------------------------- parallel sum


def parallel_sum(A: RootedGraph, B: RootedGraph) -> RootedGraph:
    """Glue B onto A by identifying x with a and y with b, then drop loops and
    multi-edges.

    Vertex ids of A are kept; the non-root vertices of B follow in increasing
    order of their ids in B. When x = y or a = b all four roots become one
    vertex: it takes A's id x, and A's vertex y (if distinct) is removed with
    larger ids shifting down by one. The result's roots are the images of x
    and y.
    """
    g, h = A.graph, B.graph
    x, y, a, b = A.x, A.y, B.x, B.y
    if x != y and a != b:
        amap = list(range(g.n))
        nxt = g.n
        bmap = [0] * h.n
        for v in range(h.n):
            if v == a:
                bmap[v] = x
            elif v == b:
                bmap[v] = y
            else:
                bmap[v] = nxt
                nxt += 1
        rx, ry = x, y
    else:
        # everything at x; y (if different) disappears from A's numbering
        amap = []
        for v in range(g.n):
            if v == y and y != x:
                amap.append(-1)
            else:
                amap.append(v if (x == y or v < y) else v - 1)
        merged = amap[x]
        amap = [merged if v == -1 else v for v in amap]
        nxt = g.n - (0 if x == y else 1)
        bmap = [0] * h.n
        for v in range(h.n):
            if v in (a, b):
                bmap[v] = merged
            else:
                bmap[v] = nxt
                nxt += 1
        rx = ry = merged
    edges = set()
    for u, v in g.edges():
        p, q = amap[u], amap[v]
        if p != q:
            edges.add((min(p, q), max(p, q)))
    for u, v in h.edges():
        p, q = bmap[u], bmap[v]
        if p != q:
            edges.add((min(p, q), max(p, q)))
    labels = tuple((k, amap[v]) for k, v in A.labels)
    return RootedGraph(Graph.from_edges(nxt, sorted(edges)), rx, ry, labels)


def sum_size(A: RootedGraph, B: RootedGraph) -> tuple[int, int]:
    """(vertices, edges) of A (+) B without building it (non-degenerate roots)."""
    shared = int(A.graph.has_edge(A.x, A.y) and B.graph.has_edge(B.x, B.y))
    return A.graph.n + B.graph.n - 2, A.graph.num_edges + B.graph.num_edges - shared


def sum_cycle_residue_bound(A: RootedGraph, B: RootedGraph, cyc_a: int, cyc_b: int,
                            k: int = 4) -> int:
    """Residue mask that contains every cycle residue of A (+) B.

    A cycle of the sum lies in one operand or is an (x, y)-path of A
    followed by a (y, x)-path of B.
    """
    pa = path_residues(A.graph, A.x, A.y, k).mask
    pb = path_residues(B.graph, B.x, B.y, k).mask
    return cyc_a | cyc_b | sumset_mask(pa, pb, k)


def sum_path_residues(A: RootedGraph, B: RootedGraph, pa: int, pb: int) -> int:
    """Root-path residues of A (+) B: every root path stays inside one operand."""
    return pa | pb


# ---------------------------------------------------------------- reversing


def reverse_at(g: Graph, cut: CutWitness, side: int) -> Graph:
    """Swap the ends of one side of a 2-cut.

    With cut {x, y} and S the chosen component of g - {x, y}, the edges of
    g[S + {x, y}] keep their labels and every other edge has x and y exchanged.
    """
    if len(cut.vertices) != 2 or not cut.validate(g):
        raise ValueError(f"{cut.vertices} is not a 2-vertex cut of the graph")
    if not 0 <= side < len(cut.components):
        raise ValueError(f"side {side} out of range; the cut has {len(cut.components)} components")
    x, y = cut.vertices
    s = set(cut.components[side])
    keep = s | {x, y}
    swap = {x: y, y: x}
    edges = set()
    for u, v in g.edges():
        if u in keep and v in keep:
            edges.add((u, v))
        elif u in s or v in s:
            raise AssertionError("edge leaves its component")
        else:
            p, q = swap.get(u, u), swap.get(v, v)
            edges.add((min(p, q), max(p, q)))
    return Graph.from_edges(g.n, sorted(edges))


def single_reversals(g: Graph) -> Iterable[Graph]:
    for cut in pair_cuts(g):
        for side in range(len(cut.components)):
            yield reverse_at(g, cut, side)


REVERSAL_LIMIT = 12


@lru_cache(maxsize=4096)
def reversal_class(g: Graph) -> frozenset:
    """Canonical keys of every graph reachable from g by reversals."""
    if g.n > REVERSAL_LIMIT:
        raise ValueError(f"reversal closure is limited to n <= {REVERSAL_LIMIT}")
    start = canonical_form(g)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for h in single_reversals(cur):
            c = canonical_form(h)
            if c not in seen:
                seen.add(c)
                queue.append(c)
    return frozenset((c.n, c.adj) for c in seen)


def reversing_equivalent(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    c = canonical_form(h)
    return (c.n, c.adj) in reversal_class(g)


# Rooted reversals work on the graph with a handle vertex r joined to both
# roots. Only cuts avoiding r and components avoiding r are reversed, so the
# roots never move, and isomorphism fixes r (hence the root pair setwise).


def _with_handle(rg: RootedGraph) -> Graph:
    return rg.graph.add_vertex([rg.x, rg.y])


def rooted_key(rg: RootedGraph) -> tuple:
    """Complete invariant for isomorphism mapping the root pair onto itself setwise."""
    h = _with_handle(rg)
    colors = [0] * rg.graph.n + [1]
    return canonical_key(h, colors)


def _rooted_canonical(rg: RootedGraph) -> RootedGraph:
    h = _with_handle(rg)
    c = canonical_form(h, [0] * rg.graph.n + [1])
    r = c.n - 1  # the single colour-1 vertex is placed last
    x, y = sorted(bits(c.adj[r]))
    g, _ = c.induced(range(r))
    return RootedGraph(g, x, y)


def _flip_side(g: Graph, cut: CutWitness, side: int) -> Graph:
    """Swap the cut ends on the chosen side only; everything else stays put."""
    x, y = cut.vertices
    s = set(cut.components[side])
    swap = {x: y, y: x}
    edges = set()
    for u, v in g.edges():
        if u in s or v in s:
            u, v = swap.get(u, u), swap.get(v, v)
        edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(g.n, sorted(edges))


def single_rooted_reversals(rg: RootedGraph) -> Iterable[RootedGraph]:
    h = _with_handle(rg)
    r = rg.graph.n
    for cut in pair_cuts(h):
        if r in cut.vertices:
            continue
        for side, comp in enumerate(cut.components):
            if r in comp:
                continue
            rev = _flip_side(h, cut, side)
            g, _ = rev.induced(range(r))
            yield RootedGraph(g, rg.x, rg.y)


def rooted_reversal_class(rg: RootedGraph) -> frozenset:
    if rg.graph.n > REVERSAL_LIMIT:
        raise ValueError(f"reversal closure is limited to n <= {REVERSAL_LIMIT}")
    start = _rooted_canonical(rg)
    seen = {rooted_key(start): start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nb in single_rooted_reversals(cur):
            key = rooted_key(nb)
            if key not in seen:
                seen[key] = _rooted_canonical(nb)
                queue.append(seen[key])
    return frozenset(seen)


def rooted_reversing_equivalent(a: RootedGraph, b: RootedGraph) -> bool:
    if a.graph.n != b.graph.n or a.graph.num_edges != b.graph.num_edges:
        return False
    return rooted_key(b) in rooted_reversal_class(a)


def count_classes(items: list, key_fn, class_fn) -> int:
    """Number of classes among ``items`` under an equivalence given by its closure."""
    remaining = {key_fn(it): it for it in items}
    count = 0
    while remaining:
        _, it = remaining.popitem()
        cls = class_fn(it)
        for k in [k for k in remaining if k in cls]:
            del remaining[k]
        count += 1
    return count


# ---------------------------------------------------------------- catalogue


@dataclass(frozen=True)
class GadgetSpec:
    name: str
    vertices: int
    edges: int
    declared_type: tuple[int, ...]
    graph6: str = ""
    extra: tuple[tuple[str, int], ...] = ()

    @property
    def residue_type(self) -> ResidueSet:
        return ResidueSet.of(self.declared_type)

    def to_json(self) -> dict:
        return {"name": self.name, "roots": [0, 1], "declared_type": list(self.declared_type),
                "graph6": self.graph6, **({"labels": dict(self.extra)} if self.extra else {})}


# Roots are always a = 0 and b = 1. F6 carries c (a neighbour of b with
# (b, c) of type {0, 1}); F9 carries z (a common neighbour of a and b).
CATALOGUE: dict[str, GadgetSpec] = {
    "F3": GadgetSpec("F3", 3, 2, (2,), "BW"),
    "F4": GadgetSpec("F4", 4, 4, (2, 3), "CN"),
    "F6": GadgetSpec("F6", 6, 7, (0, 3), "EIeg", (("c", 2),)),
    "F7": GadgetSpec("F7", 7, 9, (0, 1), "Fi_XW"),
    "F8": GadgetSpec("F8", 8, 11, (1, 2), "GiBGpS"),
    "F9": GadgetSpec("F9", 9, 12, (2, 3), "HXGBGWT", (("z", 2),)),
}

GADGET_NAMES = tuple(CATALOGUE)
_FAMILY = re.compile(r"^([PC])([0-9]+)$")


def every_edge_on_root_path(g: Graph, x: int, y: int) -> bool:
    """True iff every edge of g lies on some (x, y)-path.

    For x != y and at least three vertices with no isolated vertex this is
    2-connectivity of g + xy.
    """
    if x == y:
        return g.num_edges == 0
    if any(g.degree(v) == 0 for v in range(g.n)):
        return False
    if g.n == 2:
        return True
    h = g if g.has_edge(x, y) else g.add_edge(x, y)
    return is_biconnected(h)


def validate_gadget(spec: GadgetSpec, rg: RootedGraph) -> list[str]:
    """All violated constraints (empty when the realisation is correct)."""
    g = rg.graph
    problems = []
    if g.n != spec.vertices:
        problems.append(f"{spec.name}: {g.n} vertices, expected {spec.vertices}")
    if g.num_edges != spec.edges:
        problems.append(f"{spec.name}: {g.num_edges} edges, expected {spec.edges}")
    if has_mod_cycle(g, 0, 4) is not None:
        problems.append(f"{spec.name}: contains a (0 mod 4)-cycle")
    res = path_residues(g, rg.x, rg.y)
    if res != spec.residue_type:
        problems.append(f"{spec.name}: root residues {res.members}, expected {list(spec.declared_type)}")
    if not every_edge_on_root_path(g, rg.x, rg.y):
        problems.append(f"{spec.name}: some edge lies on no root path")
    labels = dict(rg.labels)
    if spec.name == "F6":
        c = labels.get("c")
        if c is None or not g.has_edge(rg.y, c) or path_residues(g, rg.y, c).members != [0, 1]:
            problems.append("F6: c must be a neighbour of b with (b, c) of type {0, 1}")
    if spec.name == "F9":
        z = labels.get("z")
        if z is None or not (g.has_edge(rg.x, z) and g.has_edge(rg.y, z)):
            problems.append("F9: z must be a common neighbour of a and b")
    return problems


@lru_cache(maxsize=None)
def _catalogue_gadget(name: str) -> RootedGraph:
    spec = CATALOGUE[name]
    rg = RootedGraph(from_graph6(spec.graph6), 0, 1, spec.extra)
    problems = validate_gadget(spec, rg)
    if problems:
        raise RuntimeError("corrupt gadget catalogue: " + "; ".join(problems))
    return rg


def gadget(name: str) -> RootedGraph:
    """The rooted graph for a catalogue name, K3, P<t> (t >= 2) or C<t> (t >= 3).

    K3 and C<t> are rooted at an edge (0, 1); P<t> at its ends 0 and t-1.
    """
    if name in CATALOGUE:
        return _catalogue_gadget(name)
    if name == "K3":
        return RootedGraph(complete_graph(3), 0, 1)
    m = _FAMILY.match(name)
    if m:
        t = int(m.group(2))
        if m.group(1) == "P":
            if t < 2:
                raise ValueError(f"path atom {name} needs at least 2 vertices")
            return RootedGraph(path_graph(t), 0, t - 1)
        if t < 3:
            raise ValueError(f"cycle atom {name} needs at least 3 vertices")
        return RootedGraph(cycle_graph(t), 0, 1)
    raise KeyError(f"unknown gadget {name}")


def gadget_type(name: str) -> ResidueSet:
    if name in CATALOGUE:
        return CATALOGUE[name].residue_type
    rg = gadget(name)
    return rg.residues()
