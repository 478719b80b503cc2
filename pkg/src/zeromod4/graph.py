"""Simple undirected graphs on at most 64 vertices, stored as adjacency bitsets.

Also hosts graph6/sparse6 serialization and the structural predicates used
throughout the package (connectivity, 2-connectivity, bipartiteness,
planarity, 2-vertex cuts).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_VERTICES = 64
GRAPH6_HEADER = ">>graph6<<"
SPARSE6_HEADER = ">>sparse6<<"


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True, slots=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency must have one row per vertex")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {u} has bits beyond vertex {self.n - 1}")
            if row >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            for v in bits(row):
                if not self.adj[v] >> u & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def add_edge(self, u: int, v: int) -> Graph:
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def remove_edge(self, u: int, v: int) -> Graph:
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def add_vertex(self, neighbors: Iterable[int] = ()) -> Graph:
        """Append vertex ``n`` joined to ``neighbors``."""
        rows = list(self.adj)
        new = self.n
        nbr = 0
        for v in neighbors:
            rows[v] |= 1 << new
            nbr |= 1 << v
        rows.append(nbr)
        return Graph(self.n + 1, tuple(rows))

    def relabel(self, perm: list[int] | tuple[int, ...]) -> Graph:
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for u in range(self.n):
            row = 0
            for v in bits(self.adj[u]):
                row |= 1 << perm[v]
            rows[perm[u]] = row
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``vertices``; returns it with the old ids in new order."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph.from_edges(len(old), edges), old

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.num_edges}, g6={to_graph6(self)!r})"


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


# ---------------------------------------------------------------- graph6 / sparse6


class Graph6Error(ValueError):
    """Malformed graph6/sparse6 input; ``offset`` is the failing byte position."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (byte {offset})")


def _encode_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def _decode_size(data: bytes, pos: int) -> tuple[int, int]:
    if pos >= len(data):
        raise Graph6Error("missing size header", pos)
    if data[pos] != 126:
        return data[pos] - 63, pos + 1
    if pos + 1 < len(data) and data[pos + 1] == 126:
        raise Graph6Error("8-byte size header unsupported (n > 64)", pos)
    if pos + 4 > len(data):
        raise Graph6Error("truncated size header", len(data))
    n = 0
    for i in range(1, 4):
        n = (n << 6) | (data[pos + i] - 63)
    return n, pos + 4


def _check_chars(data: bytes, start: int) -> None:
    for i in range(start, len(data)):
        if not 63 <= data[i] <= 126:
            raise Graph6Error(f"invalid character {chr(data[i])!r}", i)


def to_graph6(g: Graph) -> str:
    """Header-less graph6 encoding."""
    out = [_encode_size(g.n)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    raw = text.strip().encode("utf-8")
    start = len(GRAPH6_HEADER) if raw.startswith(GRAPH6_HEADER.encode()) else 0
    _check_chars(raw, start)
    n, pos = _decode_size(raw, start)
    if n > MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} exceeds {MAX_VERTICES}", start)
    total = n * (n - 1) // 2
    need = (total + 5) // 6
    if len(raw) - pos < need:
        raise Graph6Error(f"truncated bit vector: expected {need} data bytes", len(raw))
    if len(raw) - pos > need:
        raise Graph6Error("trailing bytes after bit vector", pos + need)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = raw[pos + k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if need and k % 6:
        last = raw[pos + need - 1] - 63
        if last & ((1 << (6 - k % 6)) - 1):
            raise Graph6Error("nonzero padding bits", pos + need - 1)
    return Graph(n, tuple(rows))


def from_sparse6(text: str) -> Graph:
    raw = text.strip().encode("utf-8")
    if raw.startswith(SPARSE6_HEADER.encode()):
        raw = raw[len(SPARSE6_HEADER):]
    if not raw.startswith(b":"):
        raise Graph6Error("sparse6 data must start with ':'", 0)
    _check_chars(raw, 1)
    n, pos = _decode_size(raw, 1)
    if n > MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} exceeds {MAX_VERTICES}", 1)
    k = 1
    while (1 << k) < n:
        k += 1
    stream = []
    for byte in raw[pos:]:
        stream.extend((byte - 63) >> s & 1 for s in range(5, -1, -1))
    rows = [0] * n
    v = 0
    i = 0
    while i + 1 + k <= len(stream):
        b = stream[i]
        x = 0
        for bit in stream[i + 1:i + 1 + k]:
            x = (x << 1) | bit
        offset = pos + i // 6
        i += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
            continue
        if x == v:
            raise Graph6Error("loop in sparse6 data", offset)
        if rows[x] >> v & 1:
            raise Graph6Error("multiple edge in sparse6 data", offset)
        rows[x] |= 1 << v
        rows[v] |= 1 << x
    return Graph(n, tuple(rows))


def parse_graph(text: str) -> Graph:
    """Decode graph6, or sparse6 when the input starts with ':'."""
    s = text.strip()
    if s.startswith(":") or s.startswith(SPARSE6_HEADER):
        return from_sparse6(s)
    return from_graph6(s)


# ---------------------------------------------------------------- predicates


def component_of(g: Graph, start: int, allowed: int) -> int:
    """Bitmask of vertices reachable from ``start`` inside ``allowed``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def components(g: Graph, allowed: int | None = None) -> list[list[int]]:
    """Connected components of the subgraph induced by ``allowed`` (default: all)."""
    remaining = g.vertex_mask if allowed is None else allowed
    out = []
    while remaining:
        v = (remaining & -remaining).bit_length() - 1
        comp = component_of(g, v, remaining)
        out.append(list(bits(comp)))
        remaining &= ~comp
    return out


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise ValueError("connectivity of the empty graph is undefined")
    return component_of(g, 0, g.vertex_mask) == g.vertex_mask


def cut_vertices(g: Graph) -> list[int]:
    """Articulation points by the Hopcroft-Tarjan lowpoint method."""
    disc = [-1] * g.n
    low = [0] * g.n
    found = set()
    t = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, iter(bits(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[v])
                    if parent != root and low[v] >= disc[parent]:
                        found.add(parent)
                continue
            if disc[w] < 0:
                disc[w] = low[w] = t
                t += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, iter(bits(g.adj[w]))))
            elif w != parent:
                low[v] = min(low[v], disc[w])
        if root_children > 1:
            found.add(root)
    return sorted(found)


def is_biconnected(g: Graph) -> bool:
    if g.n < 3:
        raise ValueError("2-connectivity is only defined here for n >= 3")
    return is_connected(g) and not cut_vertices(g)


def bipartition(g: Graph) -> list[int] | None:
    """A proper 2-colouring (list of 0/1 per vertex), or None if g has an odd cycle."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in bits(g.adj[v]):
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return None
    return colour


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def is_planar(g: Graph) -> bool:
    # Left-right planarity test from networkx; exact.
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    planar, _ = nx.check_planarity(h)
    return planar


@dataclass(frozen=True)
class CutWitness:
    vertices: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    def validate(self, g: Graph) -> bool:
        removed = mask_of(self.vertices)
        rest = g.vertex_mask & ~removed
        fresh = sorted(tuple(c) for c in components(g, rest))
        return len(fresh) >= 2 and fresh == sorted(self.components)


def pair_cuts(g: Graph) -> list[CutWitness]:
    """Every pair {x, y} whose removal leaves a disconnected graph."""
    out = []
    full = g.vertex_mask
    for x, y in combinations(range(g.n), 2):
        comps = components(g, full & ~(1 << x) & ~(1 << y))
        if len(comps) >= 2:
            out.append(CutWitness((x, y), tuple(tuple(c) for c in comps)))
    return out


def two_cuts(g: Graph) -> list[CutWitness]:
    if g.n < 3 or not is_biconnected(g):
        raise ValueError("two_cuts requires a 2-connected graph")
    return pair_cuts(g)
