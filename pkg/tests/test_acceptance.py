"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) for the summary only, or
through pytest, where the lines are written to the terminal as well.
"""

from __future__ import annotations

import collections
import random
import sys
from functools import lru_cache

import pytest

from zeromod4.constructor import (
    C5_PROFILE_GAPS,
    C5_PROFILE_KINDS,
    apply_step,
    check_extremal,
    extremal_for_n,
    family_certificate,
    c5_profile_sequence,
    random_step,
    run_steps,
)
from zeromod4.enumeration import free_graphs
from zeromod4.gadgets import gap, reverse_at
from zeromod4.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    is_biconnected,
    is_planar,
    pair_cuts,
    path_graph,
    to_graph6,
)
from zeromod4.residue import cycle_lengths, find_even_theta, has_mod_cycle, theta_pairs
from zeromod4.search import (
    BRACKETED,
    PROP_RANGE,
    TABLE_CELLS,
    biconnected_bound,
    general_bound,
    lemma_audit,
    max_edges,
    prop_target,
    verify_prop_gadget,
)

RESULTS: dict[str, str] = {}


def report(tag: str, ok: bool, detail: str, capsys=None) -> None:
    line = f"{'PASS' if ok else 'FAIL'} {tag}: {detail}"
    RESULTS[tag] = line
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)


# ---------------------------------------------------------------- 1. rooted table


@lru_cache(maxsize=None)
def prop_reports():
    return {(L, n): verify_prop_gadget(L, n) for L in PROP_RANGE for n in range(3, PROP_RANGE[L] + 1)}


def criterion_1_cells():
    """Literal check: every maximum at most its printed cell."""
    bad = []
    for (L, n), rep in sorted(prop_reports().items()):
        if rep.max_edges is not None and rep.max_edges > TABLE_CELLS[L][n]:
            bad.append(f"L={set(L)} n={n}: max {rep.max_edges} > cell {TABLE_CELLS[L][n]}")
    return not bad, bad


def criterion_1_bracketed():
    out = []
    ok = True
    for L, (n, name) in sorted(BRACKETED.items()):
        rep = prop_reports()[(L, n)]
        good = (rep.max_edges == TABLE_CELLS[L][n] and rep.classes == 1
                and rep.details["rooted_classes"] == 1 and rep.details["equals_gadget_class"]
                and not rep.violations)
        ok &= good
        out.append(f"{name}:{rep.max_edges}/{rep.classes}cls")
    return ok, out


def criterion_1_formula():
    bad = [f"L={set(L)} n={n}" for (L, n), rep in prop_reports().items()
           if rep.max_edges is not None and rep.max_edges > prop_target(L, n)]
    return not bad, bad


@pytest.mark.xfail(strict=True, reason="printed cell for L={2,3}, n=4 is 7/2, but F4 itself is a "
                                      "4-vertex {2,3}-type graph with 4 edges; see the decisions ledger")
def test_criterion_1_table_cells(capsys):
    ok, bad = criterion_1_cells()
    n_cells = len(prop_reports())
    report("criterion 1 (table cells, literal)", ok,
           f"{n_cells - len(bad)}/{n_cells} cells within the printed value; exceeded: {bad}", capsys)
    assert ok, bad


def test_criterion_1_bracketed_cells(capsys):
    ok, out = criterion_1_bracketed()
    report("criterion 1 (bracketed cells: equality + one reversing class)", ok, ", ".join(out), capsys)
    assert ok


def test_criterion_1_formula_bounds(capsys):
    ok, bad = criterion_1_formula()
    report("criterion 1 (every cell within its t(n) formula)", ok,
           f"{len(prop_reports())} cells, violations {bad}", capsys)
    assert ok


# ---------------------------------------------------------------- 2. general bound


def criterion_2():
    rows = []
    ok = True
    for n in range(3, 10):
        rep = max_edges(n, "all", classes=False)
        ok &= rep.ok and rep.max_edges <= general_bound(n)
        rows.append(f"n={n}:{rep.max_edges}<={general_bound(n)}")
    return ok, rows


def test_criterion_2_general_bound(capsys):
    ok, rows = criterion_2()
    report("criterion 2 (max edges, all graphs, n=3..9)", ok, " ".join(rows), capsys)
    assert ok


# ---------------------------------------------------------------- 3. 2-connected bound


def criterion_3():
    rows = []
    ok = True
    empty4 = max_edges(4, "biconnected", classes=False)
    ok &= empty4.examined == 0 and empty4.max_edges is None
    rows.append(f"n=4:empty={empty4.examined == 0}")
    for n in range(5, 11):
        rep = max_edges(n, "biconnected", classes=False)
        ok &= rep.ok and rep.max_edges <= biconnected_bound(n)
        rows.append(f"n={n}:{rep.max_edges}<={biconnected_bound(n)}")
        if n == 5:
            only_c5 = rep.max_edges == 5 and rep.extremal == [to_graph6(free_graphs(5, "biconnected")[0])]
            only_c5 &= cycle_lengths(free_graphs(5, "biconnected")[0]) == {5}
            ok &= only_c5
            rows.append(f"n=5 only C5={only_c5}")
    return ok, rows


def test_criterion_3_biconnected_bound(capsys):
    ok, rows = criterion_3()
    report("criterion 3 (max edges, 2-connected, n=4..10)", ok, " ".join(rows), capsys)
    assert ok


# ---------------------------------------------------------------- 4. constructions


def criterion_4():
    bad = []
    methods = collections.Counter()
    for n in range(12, 61):
        chk = check_extremal(n)
        methods[chk.method] += 1
        if not chk.ok:
            bad.append(n)
    # both routes at every n: exhaustive cycle search and the sum certificate
    for n in range(12, 61):
        g = extremal_for_n(n)
        if family_certificate(n).excludes_zero != (has_mod_cycle(g, 0, 4) is None):
            bad.append(f"routes disagree at {n}")
    return not bad, bad, dict(methods)


def test_criterion_4_constructions(capsys):
    ok, bad, methods = criterion_4()
    report("criterion 4 (extremal construction n=12..60)", ok,
           f"2-connected, floor((3n-1)/2) edges, no 0 mod 4 cycle; methods {methods}; failures {bad}", capsys)
    assert ok


# ---------------------------------------------------------------- 5. gap deltas

EXACT = {"F3": -1, "F4": -2, "F6": -2, "F9": -3}
AT_MOST = {"F7": -1, "F8": -2, "K3": -1}


def criterion_5(target: int = 300, seed: int = 2024):
    rng = random.Random(seed)
    starts = [cycle_graph(5), complete_graph(3), cycle_graph(7), path_graph(4), cycle_graph(6), cycle_graph(9)]
    counts = collections.Counter()
    bad = []
    apps = 0
    while apps < target:
        g = rng.choice(starts)
        for _ in range(5):
            st = random_step(g, rng, rng.choice(("R1", "R1", "R1", "R2", "R3")))
            if st is None:
                continue
            h, delta = apply_step(g, st)
            apps += 1
            key = st.gadget if st.kind == "R1" else st.kind
            counts[key] += 1
            if delta != gap(h) - gap(g) or has_mod_cycle(h, 0, 4) is not None:
                bad.append((to_graph6(g), st))
            elif key in EXACT and delta != EXACT[key]:
                bad.append((key, delta))
            elif key in AT_MOST and delta > AT_MOST[key]:
                bad.append((key, delta))
            elif key in ("R2", "R3") and delta != 0:
                bad.append((key, delta))
            g = h
            if g.n > 18:
                break
    covered = set(EXACT) | set(AT_MOST) | {"R2", "R3"}
    missing = covered - set(counts)
    return not bad and not missing and apps >= 200, apps, dict(sorted(counts.items())), bad, missing


def test_criterion_5_gap_deltas(capsys):
    ok, apps, counts, bad, missing = criterion_5()
    report("criterion 5 (gap deltas)", ok,
           f"{apps} applications {counts}; wrong {bad[:3]}; uncovered {sorted(missing)}", capsys)
    assert ok


# ---------------------------------------------------------------- 6. gap profile


def criterion_6():
    steps = c5_profile_sequence()
    if steps is None:
        return False, "no sequence found"
    g, trace = run_steps(cycle_graph(5), steps)
    ok = (tuple(s.kind for s in steps) == C5_PROFILE_KINDS and tuple(trace.gaps) == C5_PROFILE_GAPS
          and has_mod_cycle(g, 0, 4) is None)
    desc = "; ".join(f"{s.kind} {s.attached} at ({s.x},{s.y})" for s in steps)
    return ok, f"gaps {trace.gaps} via {desc}"


def test_criterion_6_gap_profile(capsys):
    ok, detail = criterion_6()
    report("criterion 6 (gap row 4,3,2,1,1,1,0,0 from C5)", ok, detail, capsys)
    assert ok


# ---------------------------------------------------------------- 7. reversing


def criterion_7():
    moves = 0
    bad = []
    for n in range(3, 10):
        for g in free_graphs(n, "biconnected"):
            spectrum = cycle_lengths(g)
            for cut in pair_cuts(g):
                for side in range(len(cut.components)):
                    h = reverse_at(g, cut, side)
                    moves += 1
                    if h.num_edges != g.num_edges or cycle_lengths(h) != spectrum:
                        bad.append((to_graph6(g), cut.vertices, side))
    return not bad and moves > 0, moves, bad


def test_criterion_7_reversing_invariants(capsys):
    ok, moves, bad = criterion_7()
    report("criterion 7 (reversal keeps edges and cycle lengths)", ok,
           f"{moves} reversals over 2-connected n<=9; violations {bad[:3]}", capsys)
    assert ok


# ---------------------------------------------------------------- 8. oracles


def _random_graphs(count: int, seed: int) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(4, 8)
        p = rng.uniform(0.3, 0.7)
        out.append(Graph.from_edges(n, [(u, v) for v in range(n) for u in range(v) if rng.random() < p]))
    return out


def criterion_8():
    stats = collections.Counter()
    bad = []
    for n in range(1, 10):
        for g in free_graphs(n):
            stats["graphs"] += 1
            if g.n >= 3 and theta_pairs(g):
                bad.append(("even theta", to_graph6(g)))
            if not is_planar(g):
                bad.append(("non-planar", to_graph6(g)))
            if n >= 4 and _bipartite(g):
                stats["bipartite"] += 1
                if 2 * g.num_edges > 3 * (n - 2):
                    bad.append(("bipartite bound", to_graph6(g)))
            if g.n >= 3 and is_biconnected(g):
                stats["audited"] += 1
                if lemma_audit(g):
                    bad.append(("audit", to_graph6(g)))
    # the implications also hold outside the free universe, where the premise can fire
    for g in _random_graphs(400, 8):
        theta = any(find_even_theta(g, x, y) for x in range(g.n) for y in range(x + 1, g.n))
        zero = has_mod_cycle(g, 0, 4) is not None
        stats["random"] += 1
        stats["random with theta"] += theta
        if theta and not zero:
            bad.append(("theta without 0 mod 4 cycle", to_graph6(g)))
        if not is_planar(g) and not zero:
            bad.append(("non-planar without 0 mod 4 cycle", to_graph6(g)))
    return not bad, dict(stats), bad


def _bipartite(g: Graph) -> bool:
    from zeromod4.graph import is_bipartite
    return is_bipartite(g)


def test_criterion_8_oracles(capsys):
    ok, stats, bad = criterion_8()
    report("criterion 8 (theta, planarity, bipartite bound, lemma audit)", ok,
           f"{stats}; violations {bad[:3]}", capsys)
    assert ok


def main() -> int:
    checks = [
        ("criterion 1 (table cells, literal)", lambda: criterion_1_cells()),
        ("criterion 1 (bracketed cells: equality + one reversing class)", criterion_1_bracketed),
        ("criterion 1 (every cell within its t(n) formula)", criterion_1_formula),
        ("criterion 2 (max edges, all graphs, n=3..9)", criterion_2),
        ("criterion 3 (max edges, 2-connected, n=4..10)", criterion_3),
        ("criterion 4 (extremal construction n=12..60)", lambda: criterion_4()[:2]),
        ("criterion 5 (gap deltas)", lambda: criterion_5()[:2]),
        ("criterion 6 (gap row 4,3,2,1,1,1,0,0 from C5)", criterion_6),
        ("criterion 7 (reversal keeps edges and cycle lengths)", lambda: criterion_7()[:2]),
        ("criterion 8 (theta, planarity, bipartite bound, lemma audit)", lambda: criterion_8()[:2]),
    ]
    failed = 0
    for tag, fn in checks:
        ok, detail = fn()
        report(tag, ok, str(detail))
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
