"""Isomorph-free generation of graphs with no (l mod k)-cycle, l = 0, k = 4 by default.

Generation is by vertex extension. Freeness is hereditary for induced
subgraphs, so every n-vertex member arises from an (n-1)-vertex member by
adding one vertex with neighbourhood S. A cycle through the new vertex v
consists of v, two neighbours u, w in S and a (u, w)-path of the old graph,
so the extension stays free exactly when no pair of S is joined by a path
of length (l - 2) mod k. The admissible S are therefore the independent
sets of a "conflict graph" computed once per parent. Results are
deduplicated by canonical form and returned in a fixed sorted order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Iterable, Iterator

from .canon import canonical_form
from .graph import Graph, bits, empty_graph, is_biconnected, is_connected, to_graph6
from .residue import all_path_residues

CLASSES = ("all", "connected", "biconnected")


def sort_key(g: Graph) -> tuple[int, str]:
    return (g.num_edges, to_graph6(g))


def conflict_masks(g: Graph, residue: int = 0, k: int = 4) -> list[int]:
    """``conf[u]`` has bit w set iff some (u, w)-path has length = residue - 2 (mod k)."""
    bad = 1 << ((residue - 2) % k)
    res = all_path_residues(g, k)
    conf = [0] * g.n
    for u in range(g.n):
        row = res[u]
        for w in range(g.n):
            if w != u and row[w] & bad:
                conf[u] |= 1 << w
    return conf


def independent_sets(conf: list[int]) -> Iterator[int]:
    """All independent vertex sets (as masks, including the empty set)."""
    n = len(conf)

    def rec(i: int, chosen: int, blocked: int) -> Iterator[int]:
        if i == n:
            yield chosen
            return
        yield from rec(i + 1, chosen, blocked)
        if not blocked >> i & 1:
            yield from rec(i + 1, chosen | (1 << i), blocked | conf[i])

    # cycles of length residue mod k through a single new neighbour are impossible
    # (a cycle uses exactly two neighbours of the new vertex)
    return rec(0, 0, 0)


def free_extensions(g: Graph, residue: int = 0, k: int = 4) -> Iterator[Graph]:
    """Every labelled one-vertex extension of g that creates no new forbidden cycle."""
    conf = conflict_masks(g, residue, k)
    for s in independent_sets(conf):
        yield g.add_vertex(bits(s))


def _extend_chunk(args: tuple[list[str], int, int]) -> list[str]:
    from .graph import from_graph6
    g6s, residue, k = args
    out: set[str] = set()
    for text in g6s:
        g = from_graph6(text)
        for h in free_extensions(g, residue, k):
            out.add(to_graph6(canonical_form(h)))
    return sorted(out)


def _next_level(parents: list[Graph], residue: int, k: int, workers: int) -> list[Graph]:
    from .graph import from_graph6
    g6s = [to_graph6(p) for p in parents]
    if workers <= 1 or len(g6s) < 2 * workers:
        found = set(_extend_chunk((g6s, residue, k)))
    else:
        # round-robin split; the merge is a set union, so the result is
        # independent of the worker count
        chunks = [(g6s[i::workers], residue, k) for i in range(workers)]
        found = set()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_extend_chunk, chunks):
                found.update(part)
    return sorted((from_graph6(t) for t in found), key=sort_key)


@lru_cache(maxsize=None)
def _level(n: int, residue: int, k: int) -> tuple[Graph, ...]:
    if n == 0:
        return (empty_graph(0),)
    return tuple(_next_level(list(_level(n - 1, residue, k)), residue, k, 1))


def free_graphs(n: int, cls: str = "all", residue: int = 0, k: int = 4,
                workers: int = 1) -> list[Graph]:
    """Canonical representatives of all n-vertex graphs in ``cls`` with no
    cycle of length = residue (mod k), sorted by (edges, graph6)."""
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}; expected one of {', '.join(CLASSES)}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if workers > 1 and n >= 1:
        parents = list(_level(n - 1, residue, k))
        graphs = _next_level(parents, residue, k, workers)
    else:
        graphs = list(_level(n, residue, k))
    return [g for g in graphs if in_class(g, cls)]


def in_class(g: Graph, cls: str) -> bool:
    if cls == "all":
        return True
    if g.n == 0:
        return False
    if cls == "connected":
        return is_connected(g)
    return g.n >= 3 and is_biconnected(g)


def default_workers() -> int:
    return max(1, os.cpu_count() or 1)


def dedup(graphs: Iterable[Graph]) -> list[Graph]:
    seen = {to_graph6(canonical_form(g)) for g in graphs}
    from .graph import from_graph6
    return sorted((from_graph6(t) for t in seen), key=sort_key)
