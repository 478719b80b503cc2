"""Exact cycle and path length residues modulo k, disjoint paths, even thetas.

Spectra are computed by exhaustive DFS over simple paths with bitset
pruning. The cost is exponential in the worst case and intended for the
sparse graphs this package works with (n up to about 24, and larger
series-parallel-like constructions).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .graph import Graph, bits, component_of, mask_of


@dataclass(frozen=True, slots=True)
class ResidueSet:
    """A subset of Z_k stored as a bitmask over {0, ..., k-1}."""

    mask: int = 0
    k: int = 4

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("modulus must be at least 2")
        if self.mask >> self.k:
            raise ValueError(f"residue mask {self.mask:b} exceeds modulus {self.k}")

    @classmethod
    def of(cls, values: Iterable[int], k: int = 4) -> ResidueSet:
        m = 0
        for v in values:
            m |= 1 << (v % k)
        return cls(m, k)

    @property
    def members(self) -> list[int]:
        return list(bits(self.mask))

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, r: int) -> bool:
        return bool(self.mask >> (r % self.k) & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def _same_k(self, other: ResidueSet) -> None:
        if other.k != self.k:
            raise ValueError("residue sets have different moduli")

    def __or__(self, other: ResidueSet) -> ResidueSet:
        self._same_k(other)
        return ResidueSet(self.mask | other.mask, self.k)

    def __and__(self, other: ResidueSet) -> ResidueSet:
        self._same_k(other)
        return ResidueSet(self.mask & other.mask, self.k)

    def __le__(self, other: ResidueSet) -> bool:
        self._same_k(other)
        return self.mask & ~other.mask == 0

    def sumset(self, other: ResidueSet) -> ResidueSet:
        """{ (a + b) mod k : a in self, b in other }."""
        self._same_k(other)
        return ResidueSet(sumset_mask(self.mask, other.mask, self.k), self.k)

    def shift(self, t: int) -> ResidueSet:
        return ResidueSet(shift_mask(self.mask, t, self.k), self.k)

    def __repr__(self) -> str:
        return f"ResidueSet({set(self.members)}, k={self.k})"


def shift_mask(mask: int, t: int, k: int) -> int:
    t %= k
    full = (1 << k) - 1
    return ((mask << t) | (mask >> (k - t))) & full


def sumset_mask(a: int, b: int, k: int) -> int:
    out = 0
    for t in bits(b):
        out |= shift_mask(a, t, k)
    return out


# ---------------------------------------------------------------- witnesses


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def validate(self, g: Graph) -> bool:
        vs = self.vertices
        return (len(vs) >= 1 and len(set(vs)) == len(vs)
                and all(0 <= v < g.n for v in vs)
                and all(g.has_edge(a, b) for a, b in zip(vs, vs[1:])))

    def to_json(self) -> dict:
        return {"kind": "path", "vertices": list(self.vertices)}


@dataclass(frozen=True)
class CycleWitness:
    """Closed vertex sequence: ``vertices[0] == vertices[-1]``."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def validate(self, g: Graph) -> bool:
        vs = self.vertices
        inner = vs[:-1]
        return (len(vs) >= 4 and vs[0] == vs[-1] and len(set(inner)) == len(inner)
                and all(g.has_edge(a, b) for a, b in zip(vs, vs[1:])))

    def to_json(self) -> dict:
        return {"kind": "cycle", "vertices": list(self.vertices)}


@dataclass(frozen=True)
class ThetaWitness:
    x: int
    y: int
    paths: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    @property
    def lengths(self) -> tuple[int, int, int]:
        return tuple(len(p) - 1 for p in self.paths)  # type: ignore[return-value]

    def validate(self, g: Graph) -> bool:
        if self.x == self.y:
            return False
        for p in self.paths:
            if p[0] != self.x or p[-1] != self.y or not PathWitness(p).validate(g):
                return False
        interiors = [set(p[1:-1]) for p in self.paths]
        if any(a & b for a, b in combinations(interiors, 2)):
            return False
        return sum(1 for p in self.paths if len(p) == 2) <= 1

    def to_json(self) -> dict:
        vs = sorted({v for p in self.paths for v in p})
        return {"kind": "theta", "vertices": vs, "paths": [list(p) for p in self.paths]}


# ---------------------------------------------------------------- cycles


def _cycle_search(g: Graph, k: int, want: int | None, lengths: bool):
    """Shared DFS over cycles, each rooted at its smallest vertex.

    Returns ``(mask, witnesses)`` where witnesses maps residue -> closed path;
    with ``want`` set, stops as soon as a cycle of that residue appears; with
    ``lengths`` the mask records raw lengths instead of residues.
    """
    adj = g.adj
    full = (1 << k) - 1
    found = 0
    witnesses: dict[int, tuple[int, ...]] = {}
    for s in range(g.n):
        allowed = g.vertex_mask & ~((1 << (s + 1)) - 1)
        if (adj[s] & allowed).bit_count() < 2:
            continue
        path = [s]

        def dfs(v: int, visited: int, length: int) -> bool:
            nonlocal found
            nxt = adj[v] & allowed & ~visited
            if length >= 2 and adj[v] >> s & 1:
                key = length + 1 if lengths else (length + 1) % k
                if not found >> key & 1:
                    found |= 1 << key
                    witnesses[key] = tuple(path) + (s,)
                    if want is not None and key == want:
                        return True
                    if not lengths and found == full:
                        return True
            for w in bits(nxt):
                # w must still be able to reach back to s
                region = component_of(g, w, (allowed & ~visited) | (1 << s))
                if not region >> s & 1:
                    continue
                path.append(w)
                if dfs(w, visited | (1 << w), length + 1):
                    return True
                path.pop()
            return False

        if dfs(s, 1 << s, 0):
            break
    return found, witnesses


def cycle_residues(g: Graph, k: int = 4) -> ResidueSet:
    mask, _ = _cycle_search(g, k, None, False)
    return ResidueSet(mask, k)


def cycle_witnesses(g: Graph, k: int = 4) -> dict[int, CycleWitness]:
    """One witness cycle per residue present."""
    _, w = _cycle_search(g, k, None, False)
    return {r: CycleWitness(p) for r, p in sorted(w.items())}


def cycle_lengths(g: Graph) -> set[int]:
    """The set of lengths of all cycles of g."""
    mask, _ = _cycle_search(g, g.n + 2, None, True)
    return set(bits(mask))


def has_mod_cycle(g: Graph, residue: int = 0, k: int = 4) -> CycleWitness | None:
    residue %= k
    mask, w = _cycle_search(g, k, residue, False)
    if mask >> residue & 1:
        return CycleWitness(w[residue])
    return None


def is_modfree(g: Graph, residue: int = 0, k: int = 4) -> bool:
    return has_mod_cycle(g, residue, k) is None


# ---------------------------------------------------------------- paths


def path_residues(g: Graph, u: int, v: int, k: int = 4) -> ResidueSet:
    mask, _ = _path_search(g, u, v, k)
    return ResidueSet(mask, k)


def path_witnesses(g: Graph, u: int, v: int, k: int = 4) -> dict[int, PathWitness]:
    _, w = _path_search(g, u, v, k)
    return {r: PathWitness(p) for r, p in sorted(w.items())}


def _path_search(g: Graph, u: int, v: int, k: int):
    if u == v:
        raise ValueError("path residues need two distinct vertices")
    adj = g.adj
    full = (1 << k) - 1
    found = 0
    witnesses: dict[int, tuple[int, ...]] = {}
    path = [u]

    def dfs(x: int, visited: int, length: int) -> bool:
        nonlocal found
        if x == v:
            r = length % k
            if not found >> r & 1:
                found |= 1 << r
                witnesses[r] = tuple(path)
            return found == full
        free = g.vertex_mask & ~visited
        for w in bits(adj[x] & free):
            if w != v and not component_of(g, w, free) >> v & 1:
                continue
            path.append(w)
            if dfs(w, visited | (1 << w), length + 1):
                return True
            path.pop()
        return False

    dfs(u, 1 << u, 0)
    return found, witnesses


def all_path_residues(g: Graph, k: int = 4) -> list[list[int]]:
    """``res[u][v]`` is the residue bitmask of all (u, v)-paths (u != v)."""
    adj = g.adj
    res = [[0] * g.n for _ in range(g.n)]
    for s in range(g.n):
        row = res[s]

        def dfs(x: int, visited: int, length: int) -> None:
            bit = 1 << ((length + 1) % k)
            for w in bits(adj[x] & ~visited):
                row[w] |= bit
                dfs(w, visited | (1 << w), length + 1)

        dfs(s, 1 << s, 0)
    return res


def is_L_type(g: Graph, u: int, v: int, allowed: ResidueSet | Iterable[int]) -> bool:
    if not isinstance(allowed, ResidueSet):
        allowed = ResidueSet.of(allowed)
    return path_residues(g, u, v, allowed.k) <= allowed


def simple_paths(g: Graph, u: int, v: int, avoid: int = 0) -> list[tuple[int, ...]]:
    """All simple (u, v)-paths avoiding the vertices in ``avoid``."""
    out: list[tuple[int, ...]] = []
    path = [u]

    def dfs(x: int, visited: int) -> None:
        if x == v:
            out.append(tuple(path))
            return
        for w in bits(g.adj[x] & ~visited):
            path.append(w)
            dfs(w, visited | (1 << w))
            path.pop()

    if u == v:
        return [(u,)]
    dfs(u, (1 << u) | avoid)
    return out


# ---------------------------------------------------------------- Menger


@dataclass(frozen=True)
class DisjointPaths:
    count: int
    paths: tuple[PathWitness, ...]
    separator: tuple[int, ...]


def _vertex_disjoint(g: Graph, X: set[int], Y: set[int]):
    """Unit-capacity max flow on the vertex-split digraph.

    Node ``2v`` is v_in, ``2v+1`` is v_out; the arc v_in -> v_out has
    capacity 1. Returns (value, vertex walks from X to Y, min separator).
    """
    n = g.n
    source, sink = 2 * n, 2 * n + 1
    big = n + 1
    cap: dict[tuple[int, int], int] = {}
    out: list[list[int]] = [[] for _ in range(2 * n + 2)]

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            out[a].append(b)
            cap[(a, b)] = 0
        if (b, a) not in cap:
            out[b].append(a)
            cap[(b, a)] = 0
        cap[(a, b)] += c

    for v in range(n):
        arc(2 * v, 2 * v + 1, 1)
        for w in bits(g.adj[v]):
            arc(2 * v + 1, 2 * w, big)
    for x in sorted(X):
        arc(source, 2 * x, big)
    for y in sorted(Y):
        arc(2 * y + 1, sink, big)
    original = dict(cap)

    flow = 0
    while True:
        prev = {source: source}
        q = deque([source])
        while q and sink not in prev:
            a = q.popleft()
            for b in out[a]:
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    q.append(b)
        if sink not in prev:
            break
        b = sink
        while b != source:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1

    # vertices whose inner arc crosses the final residual cut
    separator = sorted(v for v in range(n) if 2 * v in prev and 2 * v + 1 not in prev)

    def carried(a: int, b: int) -> int:
        return max(0, original[(a, b)] - cap[(a, b)])

    # each v_in receives at most one unit, so following positive-flow arcs
    # from the source yields simple walks
    walks = []
    for x in sorted(X):
        if not carried(source, 2 * x):
            continue
        units = carried(source, 2 * x)
        for _ in range(units):
            walk = [x]
            node = 2 * x
            while True:
                node = node + 1  # v_in -> v_out
                v = node // 2
                nxt = next((b for b in out[node] if b != node - 1 and carried(node, b)), None)
                assert nxt is not None
                cap[(node, nxt)] += 1  # consume
                if nxt == sink:
                    break
                walk.append(nxt // 2)
                node = nxt
            walks.append(walk)
    return flow, walks, separator


def max_disjoint_paths(g: Graph, X: Iterable[int], Y: Iterable[int]) -> DisjointPaths:
    """Maximum family of pairwise vertex-disjoint (X, Y)-paths, with a minimum separator.

    A vertex in both X and Y counts as a trivial path of length 0. Each
    returned path meets X only at its first vertex and Y only at its last.
    """
    X, Y = set(X), set(Y)
    if not X or not Y:
        raise ValueError("X and Y must be nonempty")
    flow, walks, separator = _vertex_disjoint(g, X, Y)
    paths = []
    for walk in walks:
        last_x = max(i for i, v in enumerate(walk) if v in X)
        first_y = next(i for i in range(last_x, len(walk)) if walk[i] in Y)
        paths.append(PathWitness(tuple(walk[last_x:first_y + 1])))
    return DisjointPaths(flow, tuple(paths), tuple(separator))


def min_separator_size_bruteforce(g: Graph, X: Iterable[int], Y: Iterable[int]) -> int:
    """Smallest S such that every (X, Y)-path meets S, by exhaustive subset search."""
    X, Y = set(X), set(Y)
    for size in range(g.n + 1):
        for S in combinations(range(g.n), size):
            allowed = g.vertex_mask & ~mask_of(S)
            reach = 0
            for x in X - set(S):
                reach |= component_of(g, x, allowed)
            if not any(reach >> y & 1 for y in Y - set(S)):
                return size
    return g.n


# ---------------------------------------------------------------- theta


def find_even_theta(g: Graph, x: int, y: int) -> ThetaWitness | None:
    """An (x, y)-theta whose three paths all have even length, or None.

    Among all such thetas the one with the smallest total length is
    returned, ties broken lexicographically on the sorted vertex sequences.
    """
    if x == y:
        raise ValueError("theta endpoints must differ")
    even = sorted((p for p in simple_paths(g, x, y) if (len(p) - 1) % 2 == 0),
                  key=lambda p: (len(p), p))
    inner = [mask_of(p[1:-1]) for p in even]
    best = None
    for i, j in combinations(range(len(even)), 2):
        if inner[i] & inner[j]:
            continue
        for l in range(j + 1, len(even)):
            if inner[l] & (inner[i] | inner[j]):
                continue
            key = (len(even[i]) + len(even[j]) + len(even[l]), even[i], even[j], even[l])
            if best is None or key < best:
                best = key
            break
    if best is None:
        return None
    return ThetaWitness(x, y, (best[1], best[2], best[3]))


def theta_pairs(g: Graph) -> list[tuple[int, int]]:
    """All pairs (x < y) admitting an even theta."""
    return [(x, y) for x, y in combinations(range(g.n), 2) if find_even_theta(g, x, y)]


def named(values: Sequence[int]) -> ResidueSet:
    return ResidueSet.of(values)
