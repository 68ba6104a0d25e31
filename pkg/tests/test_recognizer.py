from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus_graphs, relabelled, small_trees
from listdist.graph import (
    Graph, complete_bipartite, complete_graph, cycle_graph, double_star, path_graph, petersen, star,
)
from listdist.recognizer import classify, required_list_size, tree_centre


def test_classify_examples():
    assert classify(star(3)).label() == "SymmetricTree(h=1,d=3)"
    assert classify(double_star(2, 2)).label() == "BisymmetricTree(h=1,d=3)"
    pc = classify(petersen())
    assert pc.tag == "GeneralCyclic" and pc.delta == 3
    assert classify(complete_graph(4)).tag == "K4"
    assert classify(complete_bipartite(3, 3)).tag == "K33"
    assert classify(cycle_graph(8)).label() == "Cycle(n=8)"


def test_required_list_size_examples():
    assert required_list_size(classify(cycle_graph(5))).k == 3
    assert required_list_size(classify(cycle_graph(6))).k == 2
    k4 = required_list_size(classify(complete_graph(4)))
    assert (k4.k, k4.claim) == (3, "exceptional")
    pc = required_list_size(classify(petersen()))
    assert (pc.k, pc.claim) == (2, "guaranteed")


def test_tree_centre_examples():
    assert tree_centre(path_graph(3)) == (1,)
    assert tree_centre(path_graph(4)) == (1, 2)
    assert tree_centre(star(4)) == (0,)


def test_non_symmetric_trees_are_general():
    spider = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)])
    assert classify(spider).tag == "GeneralTree"
    uneven = double_star(2, 3)
    assert classify(uneven).tag == "GeneralTree"


@given(relabelled(corpus_graphs(7)))
def test_classify_isomorphism_invariant(pair):
    g, h = pair
    assert classify(g) == classify(h)


@given(relabelled(st.sampled_from(small_trees(10))))
def test_classify_trees_isomorphism_invariant(pair):
    g, h = pair
    assert classify(g) == classify(h)
