from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus_graphs, small_trees
from listdist.errors import UncolouredIncidentEdge
from listdist.graph import cycle_graph, paw, star
from listdist.lists import (
    EdgeColouring, ListAssignment, classify_lists, colour_subgraph, generate_lists, palette,
)

PINK = 0


def paw_pink_triangle() -> ListAssignment:
    g = paw()
    lists = [[PINK, 1] if g.edges[e] != (0, 3) else [1, 2] for e in range(g.m)]
    return ListAssignment.of(lists, 3)


def test_colour_subgraph_examples():
    c3 = cycle_graph(3)
    h = colour_subgraph(c3, ListAssignment.uniform(c3, [0, 1]), 0)
    assert h.trivial and h.edge_set == frozenset(range(3))
    g = paw()
    h = colour_subgraph(g, paw_pink_triangle(), PINK)
    assert not h.trivial
    assert {g.edges[e] for e in h.edge_set} == {(0, 1), (0, 2), (1, 2)}
    h = colour_subgraph(g, paw_pink_triangle(), 2)
    assert not h.trivial and len(h.edge_set) == 1
    empty = colour_subgraph(c3, ListAssignment.uniform(c3, [0, 1], 5), 4)
    assert empty.edge_set == frozenset() and not empty.trivial


def test_classify_lists_examples():
    c3 = cycle_graph(3)
    cl = classify_lists(c3, ListAssignment.uniform(c3, [0, 1]))
    assert cl.all_identical and cl.nontrivial_colours == []
    cl = classify_lists(paw(), paw_pink_triangle())
    assert PINK in cl.nontrivial_colours and PINK in cl.cyclic_nontrivial_colours
    assert not cl.all_identical
    t = star(3)
    cl = classify_lists(t, ListAssignment.of([[0, 1], [1, 2], [0, 2]]))
    assert cl.nontrivial_colours == [0, 1, 2] and cl.cyclic_nontrivial_colours == []


@given(corpus_graphs(6), st.integers(0, 10_000), st.sampled_from(["random", "identical", "one-off-identical"]))
def test_identical_iff_every_listed_colour_trivial(g, seed, mode):
    L = generate_lists(g, 2, 4, seed, mode)
    cl = classify_lists(g, L)
    all_trivial = all(colour_subgraph(g, L, i).trivial for i in L.colours())
    assert cl.all_identical == all_trivial
    assert cl.all_identical == (len(set(L.lists)) == 1)


@given(st.sampled_from(small_trees(8)), st.integers(0, 10_000))
def test_trees_have_no_cyclic_colour(t, seed):
    assert classify_lists(t, generate_lists(t, 2, 3, seed)).cyclic_nontrivial_colours == []


def test_palette_examples():
    s = star(3)
    assert palette(s, [1, 2, 3], 0) == Counter({1: 1, 2: 1, 3: 1})
    c4 = cycle_graph(4)
    col = [0] * 4
    for i, c in enumerate([1, 1, 2, 2]):
        col[c4.edge_id(i, (i + 1) % 4)] = c
    pals = {tuple(sorted(palette(c4, col, v).elements())) for v in range(4)}
    assert pals <= {(1, 1), (1, 2), (2, 2)}
    with pytest.raises(UncolouredIncidentEdge):
        palette(s, [1, None, 3], 0)


def test_generate_lists_modes():
    c5 = cycle_graph(5)
    L = generate_lists(c5, 2, 4, mode="identical")
    assert len(set(L.lists)) == 1 and all(len(x) == 2 for x in L.lists)
    L = generate_lists(c5, 2, 3, mode="one-off-identical")
    assert Counter(L.lists) == Counter({frozenset({0, 1}): 4, frozenset({0, 2}): 1})


@given(corpus_graphs(6), st.integers(0, 2**31), st.integers(1, 3))
def test_generate_lists_deterministic(g, seed, k):
    a = generate_lists(g, k, k + 2, seed)
    b = generate_lists(g, k, k + 2, seed)
    assert a.to_json() == b.to_json()
    assert all(len(x) == k and max(x) < k + 2 for x in a.lists)


def test_colouring_json_round_trip():
    g = paw()
    c = EdgeColouring((0, 1, 0, 2))
    assert EdgeColouring.from_json(c.to_json(g), g) == c
    assert c.respects(ListAssignment.of([[0], [1], [0, 1], [2]]))
    assert not c.respects(ListAssignment.of([[1], [1], [0, 1], [2]]))
