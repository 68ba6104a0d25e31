from __future__ import annotations

from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus_graphs, renaming_class, small_connected
from listdist.automorphism import automorphisms, is_distinguishing
from listdist.errors import BudgetExceeded, ListDistError, NotFoundWithin
from listdist.graph import (
    Graph, complete_bipartite, complete_graph, cycle_graph, double_star, path_graph, petersen, star,
)
from listdist.lists import ListAssignment, generate_lists
from listdist.oracle import (
    DistinguishingTable, all_lists_feasibility, distinguishing_index, exists_distinguishing_from_lists,
    probe_conjecture, sample_assignments,
)
from listdist.recognizer import classify, required_list_size


def feasible(g: Graph, L: ListAssignment) -> bool:
    return exists_distinguishing_from_lists(g, automorphisms(g), L).feasible


def brute_feasible(g: Graph, L: ListAssignment) -> bool:
    grp = automorphisms(g)
    return any(is_distinguishing(g, grp, c) for c in product(*(sorted(x) for x in L.lists)))


def test_feasibility_examples():
    c5 = cycle_graph(5)
    assert not feasible(c5, ListAssignment.uniform(c5, [1, 2]))
    one_off = ListAssignment.of([[1, 2]] * 4 + [[1, 3]])
    rep = exists_distinguishing_from_lists(c5, automorphisms(c5), one_off)
    assert rep.feasible and rep.witness.respects(one_off)
    s = star(3)
    rep = exists_distinguishing_from_lists(s, automorphisms(s), ListAssignment.of([[1, 2], [1, 3], [2, 3]]))
    assert rep.feasible and len(set(rep.witness.colours)) == 3


def test_distinguishing_index_examples():
    def dprime(g):
        return distinguishing_index(g, automorphisms(g), g.max_degree + 1)
    assert dprime(cycle_graph(6)) == 2
    assert dprime(complete_graph(4)) == 3
    assert dprime(star(3)) == 3
    assert dprime(petersen()) == 2
    assert dprime(complete_graph(1)) == 1
    with pytest.raises(NotFoundWithin):
        dprime(path_graph(2))


def test_all_lists_examples():
    c5 = cycle_graph(5)
    rep = all_lists_feasibility(c5, automorphisms(c5), 2, 3)
    # one representative per colour-renaming class: the identical class is {0,1} everywhere
    assert [a.to_json()["lists"] for a in rep.infeasible_assignments] == [[[0, 1]] * 5]
    k4 = complete_graph(4)
    rep = all_lists_feasibility(k4, automorphisms(k4), 2, 3)
    assert [a.to_json()["lists"] for a in rep.infeasible_assignments] == [[[0, 1]] * 6]
    c7 = cycle_graph(7)
    assert all_lists_feasibility(c7, automorphisms(c7), 2, 3).all_feasible


def test_all_lists_matches_brute_force_on_small_graphs():
    for g in (star(3), cycle_graph(4), Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])):
        subsets = [list(s) for s in combinations(range(3), 2)]
        bad = set()
        for choice in product(subsets, repeat=g.m):
            L = ListAssignment.of(choice, 3)
            if not brute_feasible(g, L):
                bad.add(renaming_class(L))
        rep = all_lists_feasibility(g, automorphisms(g), 2, 3)
        got = [renaming_class(a) for a in rep.infeasible_assignments]
        assert len(got) == len(set(got))
        assert set(got) == bad


def test_budget_exceeded():
    g = petersen()
    with pytest.raises(BudgetExceeded):
        exists_distinguishing_from_lists(g, automorphisms(g), ListAssignment.uniform(g, [0]), budget=5)


def test_probe_examples():
    rep = probe_conjecture(petersen(), 3)
    assert (rep.dprime, rep.list_feasible_at_k) == (2, True)
    rep = probe_conjecture(cycle_graph(4), 3)
    assert (rep.dprime, rep.k, rep.list_feasible_at_k) == (3, 3, True)
    rep = probe_conjecture(star(3), 3, k=2)
    assert rep.list_feasible_at_k is False and rep.exceptional and not rep.is_counterexample
    assert [a.to_json()["lists"] for a in rep.counterexample_lists] == [[[0, 1]] * 3]
    rep = probe_conjecture(path_graph(2), 3)
    assert rep.dprime is None and not rep.is_counterexample


def test_table_agrees_with_search():
    g = complete_bipartite(3, 3)
    grp = automorphisms(g)
    table = DistinguishingTable(g, grp, 4)
    batch = sample_assignments(g, 2, 4, 300, seed=1)
    fast = table.feasible(batch)
    slow = [exists_distinguishing_from_lists(g, grp, L).feasible for L in batch]
    assert list(fast) == slow


@given(corpus_graphs(6), st.integers(0, 10_000))
def test_witness_is_distinguishing(g, seed):
    L = generate_lists(g, 2, 3, seed)
    rep = exists_distinguishing_from_lists(g, automorphisms(g), L)
    if rep.feasible:
        assert rep.witness.respects(L)
        assert is_distinguishing(g, automorphisms(g), rep.witness.colours)
    else:
        assert not brute_feasible(g, L)


@given(corpus_graphs(6), st.integers(0, 10_000), st.data())
def test_monotone_under_list_growth(g, seed, data):
    L = generate_lists(g, 2, 4, seed)
    grown = []
    for x in L.lists:
        extra = data.draw(st.sets(st.integers(0, 3), max_size=2))
        grown.append(sorted(x | extra))
    big = ListAssignment.of(grown, 4)
    if feasible(g, L):
        assert feasible(g, big)


@given(corpus_graphs(6), st.integers(0, 10_000), st.permutations(range(4)))
def test_colour_renaming_invariance(g, seed, perm):
    L = generate_lists(g, 2, 4, seed)
    renamed = ListAssignment.of([[perm[c] for c in x] for x in L.lists], 4)
    assert feasible(g, L) == feasible(g, renamed)


def guaranteed_graphs() -> list[Graph]:
    out = []
    for g in small_connected(6):
        try:
            need = required_list_size(classify(g))
        except ListDistError:
            continue
        if need.claim == "guaranteed":
            out.append(g)
    return out


@settings(max_examples=15)
@given(st.sampled_from(guaranteed_graphs()))
def test_guaranteed_classes_feasible_on_random_lists(g):
    k = required_list_size(classify(g)).k
    grp = automorphisms(g)
    for seed in range(50):
        assert exists_distinguishing_from_lists(g, grp, generate_lists(g, k, k + 2, seed)).feasible


def test_double_star_infeasible_assignments():
    g = double_star(2, 2)
    central = g.edge_id(0, 1)
    rep = all_lists_feasibility(g, automorphisms(g), 2, 3)
    for a in rep.infeasible_assignments:
        assert len({a[e] for e in range(g.m) if e != central}) == 1
