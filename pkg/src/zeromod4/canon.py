"""Canonical labelling by individualization-refinement.

Colour refinement produces an ordered equitable partition; the search tree
individualizes vertices of the first smallest non-singleton cell. Leaves are
compared by their relabelled adjacency rows and the lexicographically largest
one wins. Automorphisms found at equal leaves prune sibling branches that lie
in the same orbit of the pointwise stabilizer of the current prefix, and a
leaf equivalent to the first leaf abandons its whole subtree (nauty's rule).
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph, bits, to_graph6


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        new: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                row = adj[v]
                key = tuple((row & m).bit_count() for m in masks)
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                new.append(c)
                continue
            changed = True
            for key in sorted(groups):
                new.append(groups[key])
        cells = new
        if not changed:
            return cells


def _orbit_roots(n: int, gens: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, adj: Sequence[int]):
        self.adj = adj
        self.n = len(adj)
        self.first: tuple[list[int], tuple[int, ...]] | None = None
        self.best: tuple[list[int], tuple[int, ...]] | None = None
        self.gens: list[list[int]] = []

    def _certificate(self, order: list[int]) -> tuple[int, ...]:
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        rows = []
        for v in order:
            r = 0
            for w in bits(self.adj[v]):
                r |= 1 << pos[w]
            rows.append(r)
        return tuple(rows)

    def _automorphism(self, src: list[int], dst: list[int]) -> list[int]:
        perm = [0] * self.n
        for a, b in zip(src, dst):
            perm[a] = b
        return perm

    def _leaf(self, cells: list[list[int]], branch: int) -> int | None:
        order = [c[0] for c in cells]
        cert = self._certificate(order)
        if self.first is None:
            self.first = self.best = (order, cert)
            return None
        if cert == self.first[1]:
            self.gens.append(self._automorphism(self.first[0], order))
            return branch
        assert self.best is not None
        if cert == self.best[1]:
            self.gens.append(self._automorphism(self.best[0], order))
        elif cert > self.best[1]:
            self.best = (order, cert)
        return None

    def visit(self, cells: list[list[int]], prefix: list[int], depth: int, branch: int,
              on_first: bool) -> int | None:
        if len(cells) == self.n:
            return self._leaf(cells, branch)
        idx = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        target = cells[idx]
        explored: list[int] = []
        for w in sorted(target):
            if explored:
                gens = [g for g in self.gens if all(g[p] == p for p in prefix)]
                if gens:
                    roots = _orbit_roots(self.n, gens)
                    if any(roots[w] == roots[u] for u in explored):
                        continue
            rest = [v for v in target if v != w]
            child = cells[:idx] + [[w], rest] + cells[idx + 1:]
            child = _refine(self.adj, child)
            child_first = on_first and not explored
            r = self.visit(child, prefix + [w], depth + 1,
                           depth + 1 if child_first else branch, child_first)
            explored.append(w)
            if r is not None and r < depth:
                return r
        return None


def _initial_cells(n: int, colors: Sequence[int] | None) -> list[list[int]]:
    if colors is None:
        return [list(range(n))] if n else []
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(colors[v], []).append(v)
    return [groups[c] for c in sorted(groups)]


def canonical_labeling(g: Graph, colors: Sequence[int] | None = None
                       ) -> tuple[list[int], list[list[int]]]:
    """Return ``(order, generators)``.

    ``order[i]`` is the vertex placed at canonical position ``i``;
    ``generators`` are automorphisms (as vertex maps) found during the search.
    With ``colors`` the labelling is canonical for colour-preserving
    isomorphism and positions are grouped by increasing colour.
    """
    if g.n == 0:
        return [], []
    s = _Search(g.adj)
    cells = _refine(g.adj, _initial_cells(g.n, colors))
    s.visit(cells, [], 0, 0, True)
    assert s.best is not None
    return s.best[0], s.gens


def canonical_form(g: Graph, colors: Sequence[int] | None = None) -> Graph:
    """Canonical representative of the (colour-preserving) isomorphism class of g."""
    order, _ = canonical_labeling(g, colors)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def canonical_key(g: Graph, colors: Sequence[int] | None = None) -> tuple:
    """Hashable isomorphism invariant that is complete: equal iff isomorphic."""
    c = canonical_form(g, colors)
    if colors is None:
        return (c.n, c.adj)
    return (c.n, c.adj, tuple(sorted(colors)))


def canonical_graph6(g: Graph) -> str:
    return to_graph6(canonical_form(g))


def automorphism_generators(g: Graph, colors: Sequence[int] | None = None) -> list[list[int]]:
    return canonical_labeling(g, colors)[1]
