from __future__ import annotations

from itertools import permutations
from math import factorial

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus_graphs
from listdist.automorphism import (
    Automorphism, automorphisms, colour_preserving_stabilizer, edge_image, fixed_vertices, is_distinguishing,
)
from listdist.errors import TooLarge
from listdist.graph import Graph, complete_bipartite, complete_graph, cycle_graph, paw, petersen, star


def brute_force_group(g: Graph) -> set[tuple[int, ...]]:
    edges = set(g.edges)
    out = set()
    for p in permutations(range(g.n)):
        if all(tuple(sorted((p[u], p[v]))) in edges for u, v in g.edges):
            out.add(p)
    return out


def test_group_sizes():
    assert len(automorphisms(complete_graph(4))) == 24
    assert len(automorphisms(cycle_graph(5))) == 10
    assert len(automorphisms(petersen())) == 120
    assert len(automorphisms(complete_bipartite(3, 3))) == 72


@pytest.mark.parametrize("n", range(1, 7))
def test_complete_graph_group(n):
    assert len(automorphisms(complete_graph(n))) == factorial(n)


@pytest.mark.parametrize("n", range(3, 11))
def test_cycle_group(n):
    assert len(automorphisms(cycle_graph(n))) == 2 * n


def test_petersen_against_independent_matcher():
    h = nx.petersen_graph()
    count = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(h, h).isomorphisms_iter())
    assert count == 120


@given(corpus_graphs(6, min_edges=0))
def test_group_matches_brute_force(g):
    group = automorphisms(g)
    assert {a.image for a in group} == brute_force_group(g)
    assert group.elements[0].is_identity


def test_vertex_cap():
    with pytest.raises(TooLarge):
        automorphisms(cycle_graph(13))
    assert len(automorphisms(cycle_graph(13), cap=20)) == 26


def test_edge_image_examples():
    c4 = cycle_graph(4)
    ident = Automorphism(tuple(range(4)))
    for e in range(c4.m):
        assert edge_image(c4, ident, e) == c4.edges[e]
    rot = Automorphism((1, 2, 3, 0))
    assert edge_image(c4, rot, (0, 1)) == (1, 2)
    assert edge_image(complete_graph(4), Automorphism((1, 0, 2, 3)), (2, 3)) == (2, 3)


def cycle_colours(g: Graph, around: list[int]) -> list[int]:
    """Colours given in cyclic order 01, 12, ..., (n-1)0, rearranged into edge-id order."""
    n = g.n
    col = [0] * g.m
    for i, c in enumerate(around):
        col[g.edge_id(i, (i + 1) % n)] = c
    return col


def test_is_distinguishing_examples():
    c3 = cycle_graph(3)
    grp = automorphisms(c3)
    assert is_distinguishing(c3, grp, cycle_colours(c3, [1, 2, 3]))
    assert not is_distinguishing(c3, grp, cycle_colours(c3, [1, 1, 2]))


def _preserved_by_hand(g: Graph, col: list[int]) -> list[Automorphism]:
    return [a for a in automorphisms(g) if all(col[g.edge_id(*edge_image(g, a, e))] == col[e] for e in range(g.m))]


def test_c6_two_colourings():
    c6 = cycle_graph(6)
    grp6 = automorphisms(c6)
    # any two 2-edges among six are swapped by a reflection or a half-turn
    col = cycle_colours(c6, [1, 1, 1, 1, 2, 2])
    assert [a.image for a in _preserved_by_hand(c6, col)] == [(0, 1, 2, 3, 4, 5), (4, 3, 2, 1, 0, 5)]
    assert not is_distinguishing(c6, grp6, col)
    col = cycle_colours(c6, [1, 1, 2, 1, 2, 2])
    assert len(_preserved_by_hand(c6, col)) == 1
    assert is_distinguishing(c6, grp6, col)


def test_stabilizer_examples():
    g = petersen()
    grp = automorphisms(g)
    assert len(colour_preserving_stabilizer(g, grp, [None] * g.m)) == 120
    c4 = cycle_graph(4)
    col = [None] * 4
    col[0] = 1
    assert len(colour_preserving_stabilizer(c4, automorphisms(c4), col)) == 2
    p = paw()
    b, pk, x = 1, 0, 2
    col = [None] * p.m
    col[p.edge_id(0, 1)] = b
    col[p.edge_id(0, 2)] = pk
    col[p.edge_id(1, 2)] = pk
    col[p.edge_id(0, 3)] = x
    pg = automorphisms(p)
    assert {a.image for a in pg} == {(0, 1, 2, 3), (0, 2, 1, 3)}
    assert colour_preserving_stabilizer(p, pg, col).is_trivial


def test_fixed_vertices_examples():
    g = petersen()
    grp = automorphisms(g)
    assert fixed_vertices(grp.subgroup(np.arange(len(grp)) == 0)) == set(range(10))
    assert fixed_vertices(automorphisms(cycle_graph(5))) == set()
    assert fixed_vertices(automorphisms(paw())) == {0, 3}
    assert fixed_vertices(automorphisms(star(3))) == {0}


@given(corpus_graphs(6), st.data())
def test_distinguishing_iff_trivial_stabilizer(g, data):
    col = data.draw(st.lists(st.integers(0, 2), min_size=g.m, max_size=g.m))
    grp = automorphisms(g)
    assert is_distinguishing(g, grp, col) == colour_preserving_stabilizer(g, grp, col).is_trivial


@given(corpus_graphs(6), st.data())
def test_group_closure(g, data):
    grp = automorphisms(g)
    elems = grp.elements
    a = data.draw(st.sampled_from(elems))
    b = data.draw(st.sampled_from(elems))
    assert a.compose(b) in grp
    assert a.inverse() in grp
    assert a.compose(a.inverse()).is_identity
