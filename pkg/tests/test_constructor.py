from __future__ import annotations

import random

import pytest

from zeromod4.constructor import (
    EXHAUSTIVE_LIMIT,
    C5_PROFILE_GAPS,
    C5_PROFILE_KINDS,
    ConstructionStep,
    PreconditionError,
    apply_step,
    check_extremal,
    check_step,
    eligible_r1_gadgets,
    expected_delta,
    extremal_edges,
    extremal_family_G,
    extremal_family_H,
    extremal_for_n,
    family_certificate,
    c5_profile_sequence,
    matched,
    random_step,
    run_steps,
    valid_steps,
)
from zeromod4.gadgets import gap
from zeromod4.graph import complete_graph, cycle_graph, is_biconnected, path_graph
from zeromod4.residue import ResidueSet, has_mod_cycle, path_residues

# gap change of one R1 step per gadget, read from the source; K3, F7 and F8
# only have an upper bound there
R1_EXACT = {"F3": -1, "F4": -2, "F6": -2, "F9": -3}
R1_AT_MOST = {"K3": -1, "F7": -1, "F8": -2}


def test_matching_pairs():
    assert matched([0, 1]).members == [1, 2]
    assert matched([1, 2]).members == [0, 1]
    assert matched([2, 3]).members == [0, 3]
    assert matched([0, 3]).members == [2, 3]
    with pytest.raises(ValueError):
        matched([0, 2])


def test_eligible_gadgets():
    assert eligible_r1_gadgets(ResidueSet.of([0, 1])) == ["K3", "F3", "F8"]
    assert eligible_r1_gadgets(ResidueSet.of([1, 2])) == ["F7"]
    assert eligible_r1_gadgets(ResidueSet.of([2, 3])) == ["F6"]
    assert eligible_r1_gadgets(ResidueSet.of([0, 3])) == ["F3", "F4", "F9"]


def test_c5_first_step():
    c5 = cycle_graph(5)
    # an edge of C5 has residues {0, 1}: F3 fits and removes one from the gap
    g, delta = apply_step(c5, ConstructionStep("R1", 0, 1, "F3"))
    assert delta == -1 and g.n == 6 and gap(g) == 3
    assert has_mod_cycle(g, 0, 4) is None


def test_preconditions_are_checked():
    c5 = cycle_graph(5)
    with pytest.raises(PreconditionError) as info:
        apply_step(c5, ConstructionStep("R1", 0, 1, "F6"))
    assert info.value.residues.members == [0, 1]
    with pytest.raises(PreconditionError):
        check_step(c5, ConstructionStep("R3", 0, 1))  # edge path has length 1
    with pytest.raises(PreconditionError):
        check_step(c5, ConstructionStep("R2", 0, 2))
    with pytest.raises(PreconditionError):
        check_step(c5, ConstructionStep("R1", 0, 0, "F3"))
    with pytest.raises(PreconditionError):
        check_step(c5, ConstructionStep("R1", 0, 9, "F3"))
    with pytest.raises(ValueError):
        ConstructionStep("R4", 0, 1)
    with pytest.raises(ValueError):
        ConstructionStep("R1", 0, 1)


def _walk_steps(seed: int, target: int):
    rng = random.Random(seed)
    starts = [cycle_graph(5), complete_graph(3), cycle_graph(7), path_graph(4), cycle_graph(6)]
    done = []
    while len(done) < target:
        g = rng.choice(starts)
        for _ in range(6):
            kind = rng.choice(("R1", "R1", "R2", "R3"))
            st = random_step(g, rng, kind)
            if st is None:
                continue
            h, delta = apply_step(g, st)
            done.append((g, st, h, delta))
            g = h
            if g.n > 20:
                break
    return done


def test_gap_deltas_over_random_applications():
    apps = _walk_steps(11, 240)
    assert len(apps) >= 200
    seen = set()
    for g, st, h, delta in apps:
        assert delta == gap(h) - gap(g)
        assert has_mod_cycle(h, 0, 4) is None
        if st.kind == "R1":
            seen.add(st.gadget)
            if st.gadget in R1_EXACT:
                assert delta == R1_EXACT[st.gadget]
            else:
                assert delta <= R1_AT_MOST[st.gadget]
        else:
            seen.add(st.kind)
            assert delta == 0
        lo, hi = expected_delta(st.kind, st.gadget, g.has_edge(st.x, st.y))
        assert lo <= delta <= hi
    assert {"R2", "R3", "F3", "K3"} <= seen


@pytest.mark.parametrize("name", ["F4", "F6", "F7", "F8", "F9"])
def test_each_gadget_attaches_somewhere(name):
    # grow small graphs from C5 until the gadget becomes eligible, then check its delta
    rng = random.Random(int(name[1]))
    g = cycle_graph(5)
    for _ in range(200):
        steps = valid_steps(g, ("R1",), (name,))
        if steps:
            st = steps[0]
            h, delta = apply_step(g, st)
            assert has_mod_cycle(h, 0, 4) is None
            if name in R1_EXACT:
                assert delta == R1_EXACT[name]
            else:
                assert delta <= R1_AT_MOST[name]
            return
        g, _ = apply_step(g, random_step(g, rng))
        if g.n > 16:
            g = cycle_graph(5)
    pytest.fail(f"{name} never became eligible")


@pytest.mark.parametrize("n", range(12, 30))
def test_extremal_small_n_exhaustive(n):
    g = extremal_for_n(n)
    assert g.n == n
    assert g.num_edges == extremal_edges(n)
    assert is_biconnected(g)
    assert has_mod_cycle(g, 0, 4) is None
    assert gap(g) == (0 if n % 2 else 1)


def test_extremal_certificates_agree_with_exhaustive_check():
    # the two routes must agree wherever both run
    for n in range(12, EXHAUSTIVE_LIMIT + 1):
        cert = family_certificate(n)
        assert cert.excludes_zero
        assert check_extremal(n).method == "exhaustive"
    assert check_extremal(40).method == "certificate"


def test_families_and_traces():
    g, tr = extremal_family_G(2, trace=True)
    assert g.n == 12 and tr.is_gap_reducing()
    assert tr.gaps[-1] == 1
    h, tr = extremal_family_H(1, trace=True)
    assert h.n == 15 and tr.gaps[-1] == 0
    assert [e.step for e in tr.entries] == ["start", "R1", "R1", "R3"]
    with pytest.raises(ValueError):
        extremal_family_G(-1)
    with pytest.raises(ValueError):
        extremal_for_n(11)


def test_r2_and_r3_attach_where_promised():
    h = extremal_family_H(0)
    steps = valid_steps(h, ("R3",))
    assert steps and all(1 not in path_residues(h, s.x, s.y) for s in steps)


def test_c5_profile():
    steps = c5_profile_sequence()
    assert steps is not None
    assert tuple(s.kind for s in steps) == C5_PROFILE_KINDS
    g, trace = run_steps(cycle_graph(5), steps)
    assert tuple(trace.gaps) == C5_PROFILE_GAPS == (4, 3, 2, 1, 1, 1, 0, 0)
    assert has_mod_cycle(g, 0, 4) is None
    assert trace.is_gap_reducing() and not trace.is_strict()


def test_k3_on_c5_edge():
    g, delta = apply_step(cycle_graph(5), ConstructionStep("R1", 0, 1, "K3"))
    assert (gap(cycle_graph(5)), gap(g), delta) == (4, 3, -1)


def test_r3_adds_two_vertices_three_edges():
    g = cycle_graph(7)
    h, delta = apply_step(g, ConstructionStep("R3", 0, 3))
    assert (h.n - g.n, h.num_edges - g.num_edges, delta) == (2, 3, 0)


@pytest.mark.parametrize("k", range(0, 21))
def test_family_sizes_and_freeness(k):
    g = extremal_family_G(k)
    assert (g.n, g.num_edges, gap(g)) == (8 + 2 * k, 11 + 3 * k, 1)
    h = extremal_family_H(k)
    assert (h.n, h.num_edges, gap(h)) == (13 + 2 * k, 19 + 3 * k, 0)
    for x in (g, h):
        assert is_biconnected(x) and has_mod_cycle(x, 0, 4) is None


def test_closure_of_random_sequences():
    rng = random.Random(99)
    for i in range(200):
        g = cycle_graph(5) if i % 2 else complete_graph(3)
        for _ in range(rng.randint(1, 4)):
            st = random_step(g, rng)
            g, _ = apply_step(g, st)
            assert has_mod_cycle(g, 0, 4) is None
            assert is_biconnected(g)
