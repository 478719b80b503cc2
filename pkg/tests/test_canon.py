from __future__ import annotations

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import from_nx, graphs, to_nx
from zeromod4.canon import automorphism_generators, canonical_form, canonical_graph6, canonical_key
from zeromod4.graph import Graph, complete_bipartite, cycle_graph, empty_graph


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=10), st.randoms(use_true_random=False))
def test_canonical_form_invariant_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert canonical_form(g) == canonical_form(h)
    assert nx.is_isomorphic(to_nx(g), to_nx(canonical_form(g)))


def test_atlas_classes_are_separated():
    # graph atlas: every graph up to 7 vertices, one per isomorphism class
    for n in range(1, 7):
        atlas = [from_nx(h) for h in nx.graph_atlas_g() if h.number_of_nodes() == n]
        keys = {canonical_key(g) for g in atlas}
        assert len(keys) == len(atlas)


def test_hard_regular_cases():
    # 3-regular on 8 vertices: cube vs. the two others, all distinct
    cube = from_nx(nx.hypercube_graph(3))
    mobius = Graph.from_edges(8, [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)])
    assert canonical_key(cube) != canonical_key(mobius)
    assert canonical_graph6(cycle_graph(7)) == canonical_graph6(cycle_graph(7).relabel([3, 5, 0, 6, 1, 4, 2]))


def test_automorphisms_are_automorphisms():
    for g in (cycle_graph(6), complete_bipartite(2, 3), from_nx(nx.petersen_graph())):
        for gen in automorphism_generators(g):
            assert sorted(gen) == list(range(g.n))
            assert g.relabel(gen) == g


def test_colours_restrict_isomorphism():
    p = Graph.from_edges(3, [(0, 1), (1, 2)])
    # centre coloured vs. end coloured paths are different coloured graphs
    assert canonical_key(p, [0, 1, 0]) != canonical_key(p, [1, 0, 0])
    assert canonical_key(p, [1, 0, 0]) == canonical_key(p, [0, 0, 1])
    assert canonical_form(empty_graph(0)) == empty_graph(0)


def test_thousand_random_relabellings():
    import random
    rng = random.Random(5)
    for _ in range(1000):
        n = rng.randint(1, 12)
        g = Graph.from_edges(n, [(u, v) for v in range(n) for u in range(v) if rng.random() < 0.4])
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_form(g.relabel(perm)) == canonical_form(g)
