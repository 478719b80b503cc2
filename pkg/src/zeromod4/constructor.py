"""Gap-reducing construction steps and the two infinite extremal families.

Three moves glue a small rooted graph onto a root pair (x, y) of the
current graph:

  R1  a catalogue gadget (or K3) whose root type fits the set matched to
      the type of (x, y); the residue sumset of matched sets avoids 0.
  R2  F6 rooted at (b, c), on an adjacent pair of type {1, 2}.
  R3  a path with three edges, on a pair with no path of length 1 mod 4.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .canon import canonical_form
from .gadgets import RootedGraph, gadget, gadget_type, gap, parallel_sum
from .graph import Graph, cycle_graph, complete_graph, is_biconnected, to_graph6
from .residue import ResidueSet, cycle_residues, has_mod_cycle, path_residues, sumset_mask

L_SETS: tuple[ResidueSet, ...] = (
    ResidueSet.of((0, 1)),
    ResidueSet.of((1, 2)),
    ResidueSet.of((2, 3)),
    ResidueSet.of((0, 3)),
)
_MATCH = {0: 1, 1: 0, 2: 3, 3: 2}

R1_GADGETS = ("K3", "F3", "F4", "F6", "F7", "F8", "F9")
# order used when a caller leaves the gadget open: fewest vertices first
SMALLEST_FIRST = ("F3", "K3", "F4", "F6", "F7", "F8", "F9")


class PreconditionError(ValueError):
    """A step was requested at a pair that does not satisfy its precondition."""

    def __init__(self, message: str, residues: ResidueSet | None = None):
        super().__init__(message)
        self.residues = residues


def named_index(L: ResidueSet | Iterable[int]) -> int:
    if not isinstance(L, ResidueSet):
        L = ResidueSet.of(L)
    for i, s in enumerate(L_SETS):
        if s == L:
            return i
    raise ValueError(f"{sorted(L.members)} is not one of the named sets {{0,1}}, {{1,2}}, {{2,3}}, {{0,3}}")


def matched(L: ResidueSet | Iterable[int]) -> ResidueSet:
    return L_SETS[_MATCH[named_index(L)]]


def eligible_r1_gadgets(residues: ResidueSet) -> list[str]:
    """Gadgets usable by R1 at a pair with the given root residues."""
    out = []
    for name in R1_GADGETS:
        t = gadget_type(name)
        if any(residues <= L and t <= matched(L) for L in L_SETS):
            out.append(name)
    return out


# ---------------------------------------------------------------- steps


@dataclass(frozen=True)
class ConstructionStep:
    kind: str  # "R1" | "R2" | "R3"
    x: int
    y: int
    gadget: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("R1", "R2", "R3"):
            raise ValueError(f"unknown step kind {self.kind!r}")
        if self.kind == "R1" and self.gadget is None:
            raise ValueError("R1 needs a gadget")

    @property
    def attached(self) -> str:
        return {"R1": self.gadget, "R2": "F6[b,c]", "R3": "P4"}[self.kind]  # type: ignore[return-value]


def expected_delta(kind: str, gadget_name: str | None, xy_adjacent: bool) -> tuple[int, int]:
    """Inclusive (low, high) range of the gap change for a step."""
    if kind in ("R2", "R3"):
        return (0, 0)
    assert gadget_name is not None
    if gadget_name == "K3":
        return (-3, -1)
    rg = gadget(gadget_name)
    base = 3 * rg.graph.n - 2 * rg.graph.num_edges - 6
    if rg.graph.has_edge(rg.x, rg.y):
        return (base, base + 2)
    return (base, base)


def attachment(step: ConstructionStep) -> RootedGraph:
    if step.kind == "R1":
        return gadget(step.gadget)  # type: ignore[arg-type]
    if step.kind == "R2":
        f6 = gadget("F6")
        return RootedGraph(f6.graph, f6.y, f6.label("c"))
    return gadget("P4")


def check_step(g: Graph, step: ConstructionStep) -> ResidueSet:
    """Raise PreconditionError unless ``step`` may be applied to g; returns the pair's residues."""
    x, y = step.x, step.y
    if not (0 <= x < g.n and 0 <= y < g.n):
        raise PreconditionError(f"attach point ({x},{y}) out of range for {g.n} vertices")
    if x == y:
        raise PreconditionError("attach point needs two distinct vertices")
    res = path_residues(g, x, y)
    if step.kind == "R1":
        if step.gadget not in R1_GADGETS:
            raise PreconditionError(f"R1 cannot attach {step.gadget}")
        if step.gadget not in eligible_r1_gadgets(res):
            raise PreconditionError(
                f"R1 with {step.gadget} needs ({x},{y}) of a type matched to "
                f"{sorted(gadget_type(step.gadget).members)}; found residues {res.members}", res)
    elif step.kind == "R2":
        if not res <= L_SETS[1]:
            raise PreconditionError(f"R2 needs ({x},{y}) of type {{1,2}}; found residues {res.members}", res)
        if not g.has_edge(x, y):
            raise PreconditionError("R2 needs x and y adjacent so the b-c edge is shared", res)
    else:
        if 1 in res:
            raise PreconditionError(f"R3 needs no (1 mod 4)-path between {x} and {y}; found residues {res.members}", res)
    return res


def apply_step(g: Graph, step: ConstructionStep) -> tuple[Graph, int]:
    """Apply a checked step and return (new graph, gap change)."""
    check_step(g, step)
    out = parallel_sum(RootedGraph(g, step.x, step.y), attachment(step)).graph
    return out, gap(out) - gap(g)


# ---------------------------------------------------------------- traces


@dataclass(frozen=True)
class TraceEntry:
    step: str
    gadget: str | None
    at: tuple[int, int] | None
    gap: int
    graph6: str

    def to_json(self) -> dict:
        return {"step": self.step, "gadget": self.gadget,
                "at": list(self.at) if self.at is not None else None,
                "gap": self.gap, "graph6": self.graph6}


@dataclass
class GapTrace:
    entries: list[TraceEntry] = field(default_factory=list)

    @classmethod
    def start(cls, g: Graph, label: str = "start", gadget_name: str | None = None) -> GapTrace:
        return cls([TraceEntry(label, gadget_name, None, gap(g), to_graph6(g))])

    def record(self, step: str, gadget_name: str | None, at: tuple[int, int] | None, g: Graph) -> None:
        self.entries.append(TraceEntry(step, gadget_name, at, gap(g), to_graph6(g)))

    @property
    def gaps(self) -> list[int]:
        return [e.gap for e in self.entries]

    def is_gap_reducing(self) -> bool:
        return all(a >= b for a, b in zip(self.gaps, self.gaps[1:]))

    def is_strict(self) -> bool:
        return all(a > b for a, b in zip(self.gaps, self.gaps[1:]))

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]


def run_steps(g: Graph, steps: Sequence[ConstructionStep]) -> tuple[Graph, GapTrace]:
    trace = GapTrace.start(g)
    for st in steps:
        g, _ = apply_step(g, st)
        trace.record(st.kind, st.attached, (st.x, st.y), g)
    return g, trace


# ---------------------------------------------------------------- families


def _family_g_base() -> RootedGraph:
    return parallel_sum(gadget("F6"), gadget("F4"))


def _family_h_base() -> tuple[RootedGraph, tuple[int, int]]:
    first = parallel_sum(gadget("K3"), gadget("F7"))
    g = parallel_sum(RootedGraph(first.graph, 1, 2), gadget("F7")).graph
    pair = first_pair_without(g, 1)
    return RootedGraph(g, *pair), pair


def first_pair_without(g: Graph, residue: int) -> tuple[int, int]:
    """Lexicographically first pair (u < v) joined by no path of the given residue."""
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if residue not in path_residues(g, u, v):
                return (u, v)
    raise ValueError(f"every pair is joined by a ({residue} mod 4)-path")


def extremal_family_G(k: int, trace: bool = False):
    """F6 (+) F4 at (a, b), then k paths with three edges at the same pair."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    cur = _family_g_base()
    tr = GapTrace.start(gadget("F6").graph, "start", "F6")
    tr.record("R1", "F4", (0, 1), cur.graph)
    g = cur.graph
    for _ in range(k):
        g, _ = apply_step(g, ConstructionStep("R3", 0, 1))
        tr.record("R3", "P4", (0, 1), g)
    return (g, tr) if trace else g


def extremal_family_H(k: int, trace: bool = False):
    """K3 with F7 glued on two of its edges, then k paths with three edges at one pair."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    k3 = complete_graph(3)
    tr = GapTrace.start(k3, "start", "K3")
    g, _ = apply_step(k3, ConstructionStep("R1", 0, 1, "F7"))
    tr.record("R1", "F7", (0, 1), g)
    g, _ = apply_step(g, ConstructionStep("R1", 1, 2, "F7"))
    tr.record("R1", "F7", (1, 2), g)
    u, v = first_pair_without(g, 1)
    for _ in range(k):
        g, _ = apply_step(g, ConstructionStep("R3", u, v))
        tr.record("R3", "P4", (u, v), g)
    return (g, tr) if trace else g


def extremal_edges(n: int) -> int:
    return (3 * n - 1) // 2


def extremal_for_n(n: int, trace: bool = False):
    """A 2-connected n-vertex graph with floor((3n-1)/2) edges and no (0 mod 4)-cycle.

    Even n uses family G, odd n family H.
    """
    if n < 12:
        raise ValueError("the constructions start at n = 12")
    if n % 2 == 0:
        return extremal_family_G((n - 8) // 2, trace)
    return extremal_family_H((n - 13) // 2, trace)


# ---------------------------------------------------------------- certificates


@dataclass(frozen=True)
class SumCertificate:
    """Residue bookkeeping that bounds the cycle residues of a repeated sum.

    ``base_cycles`` and ``base_paths`` are exact for the base graph at the
    attach pair; each attachment contributes its own exact cycle and root
    path residues, combined by the parallel-sum law.
    """

    base_cycles: int
    base_paths: int
    steps: tuple[tuple[int, int], ...]  # (cycle mask, root-path mask) per attachment
    cycle_bound: int

    @property
    def excludes_zero(self) -> bool:
        return not self.cycle_bound & 1

    def to_json(self) -> dict:
        return {"base_cycles": ResidueSet(self.base_cycles).members,
                "base_paths": ResidueSet(self.base_paths).members,
                "attachments": len(self.steps),
                "cycle_bound": ResidueSet(self.cycle_bound).members}


def sum_certificate(base: RootedGraph, attachments: Sequence[RootedGraph]) -> SumCertificate:
    cyc = cycle_residues(base.graph).mask
    paths = path_residues(base.graph, base.x, base.y).mask
    base_c, base_p = cyc, paths
    steps = []
    cache: dict = {}
    for att in attachments:
        key = (att.graph, att.x, att.y)
        if key not in cache:
            cache[key] = (cycle_residues(att.graph).mask,
                          path_residues(att.graph, att.x, att.y).mask)
        ac, ap = cache[key]
        cyc = cyc | ac | sumset_mask(paths, ap, 4)
        paths = paths | ap
        steps.append((ac, ap))
    return SumCertificate(base_c, base_p, tuple(steps), cyc)


def family_certificate(n: int) -> SumCertificate:
    """Certificate for extremal_for_n(n): exact analysis of the base, law for the P4 ears."""
    if n < 12:
        raise ValueError("the constructions start at n = 12")
    if n % 2 == 0:
        base = _family_g_base()
        k = (n - 8) // 2
    else:
        base, _ = _family_h_base()
        k = (n - 13) // 2
    return sum_certificate(base, [gadget("P4")] * k)


EXHAUSTIVE_LIMIT = 24


@dataclass(frozen=True)
class ExtremalCheck:
    n: int
    edges: int
    biconnected: bool
    zero_free: bool
    method: str

    @property
    def ok(self) -> bool:
        return self.biconnected and self.zero_free and self.edges == extremal_edges(self.n)


def check_extremal(n: int) -> ExtremalCheck:
    g = extremal_for_n(n)
    if g.n <= EXHAUSTIVE_LIMIT:
        free, method = has_mod_cycle(g, 0, 4) is None, "exhaustive"
    else:
        free, method = family_certificate(n).excludes_zero, "certificate"
    return ExtremalCheck(g.n, g.num_edges, is_biconnected(g), free, method)


# ---------------------------------------------------------------- searches


def valid_steps(g: Graph, kinds: Iterable[str] = ("R1", "R2", "R3"),
                gadgets: Iterable[str] = R1_GADGETS) -> list[ConstructionStep]:
    """Every applicable step, over ordered pairs (orientation matters for asymmetric gadgets)."""
    kinds = tuple(kinds)
    gadgets = tuple(gadgets)
    out = []
    for x in range(g.n):
        for y in range(g.n):
            if x == y:
                continue
            for st in _steps_at(g, x, y, kinds):
                if st.kind == "R1" and st.gadget not in gadgets:
                    continue
                if st.kind == "R3" and x > y:
                    continue
                out.append(st)
    return out


C5_PROFILE_KINDS = ("R1", "R1", "R1", "R2", "R2", "R1", "R3")
C5_PROFILE_GAPS = (4, 3, 2, 1, 1, 1, 0, 0)


def find_profile(start: Graph, kinds: Sequence[str], gaps: Sequence[int],
                 gadgets: Sequence[str] = SMALLEST_FIRST) -> list[ConstructionStep] | None:
    """Depth-first search for steps of the given kinds realising a gap row.

    States are merged up to isomorphism at each depth; the first sequence
    found in the deterministic move order is returned.
    """
    if gap(start) != gaps[0]:
        return None
    seen: list[set] = [set() for _ in kinds]

    def rec(g: Graph, depth: int) -> list[ConstructionStep] | None:
        if depth == len(kinds):
            return []
        kind = kinds[depth]
        for name in (gadgets if kind == "R1" else (None,)):
            for st in valid_steps(g, (kind,), (name,) if name else ()):
                h, _ = apply_step(g, st)
                if gap(h) != gaps[depth + 1]:
                    continue
                key = canonical_form(h)
                if key in seen[depth]:
                    continue
                seen[depth].add(key)
                rest = rec(h, depth + 1)
                if rest is not None:
                    return [st] + rest
        return None

    return rec(start, 0)


def c5_profile_sequence() -> list[ConstructionStep] | None:
    return find_profile(cycle_graph(5), C5_PROFILE_KINDS, C5_PROFILE_GAPS)


def _steps_at(g: Graph, x: int, y: int, kinds: Sequence[str]) -> list[ConstructionStep]:
    res = path_residues(g, x, y)
    out = []
    if "R1" in kinds:
        out += [ConstructionStep("R1", x, y, name) for name in eligible_r1_gadgets(res)]
    if "R2" in kinds and res <= L_SETS[1] and g.has_edge(x, y):
        out.append(ConstructionStep("R2", x, y))
    if "R3" in kinds and 1 not in res:
        out.append(ConstructionStep("R3", x, y))
    return out


def random_step(g: Graph, rng: random.Random, kind: str | None = None) -> ConstructionStep | None:
    """A uniformly chosen applicable step at the first random pair that admits one."""
    kinds = (kind,) if kind else ("R1", "R2", "R3")
    pairs = [(x, y) for x in range(g.n) for y in range(g.n) if x != y]
    rng.shuffle(pairs)
    for x, y in pairs:
        steps = _steps_at(g, x, y, kinds)
        if steps:
            return rng.choice(steps)
    return None
