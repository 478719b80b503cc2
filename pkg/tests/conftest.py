from __future__ import annotations

import networkx as nx
from hypothesis import strategies as st

from zeromod4.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(idx), [(idx[u], idx[v]) for u, v in h.edges()])


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 9, p: float | None = None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def permutations_of(draw, n: int):
    return draw(st.permutations(list(range(n))))
