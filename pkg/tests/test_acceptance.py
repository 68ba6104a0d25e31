"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

The lines are printed in the terminal summary (see ``conftest.py``).  The
corpus suites take several minutes on one core.
"""

from __future__ import annotations

import time
from itertools import combinations, product

import numpy as np

from conftest import ACCEPTANCE_LINES, renaming_class
from listdist.automorphism import automorphisms
from listdist.corpus import load_corpus
from listdist.graph import Graph, complete_bipartite, complete_graph, cycle_graph, double_star, petersen, star
from listdist.lists import ListAssignment
from listdist.oracle import (
    DistinguishingTable, all_lists_feasibility, distinguishing_index, probe_conjecture, sample_assignments,
)
from listdist.suites import SuiteConfig, run_suite

CYCLIC_SIZES = (4, 5, 6, 7, 8)
TREE_SIZES = tuple(range(4, 11))


def record(number: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})")
    print(ACCEPTANCE_LINES[-1])


def infeasible_classes(g: Graph, k: int, universe: int) -> set[tuple]:
    rep = all_lists_feasibility(g, automorphisms(g), k, universe)
    return {renaming_class(a) for a in rep.infeasible_assignments}


def identical_classes(g: Graph, k: int, universe: int) -> set[tuple]:
    return {renaming_class(ListAssignment.uniform(g, range(k), universe))}


def test_criterion_1_cyclic_suite():
    t = time.perf_counter()
    res = run_suite(SuiteConfig("cyclic", CYCLIC_SIZES))
    wall = time.perf_counter() - t
    ok = not res.failures and wall <= 600
    record(1, "cyclic property suite n=4..8", ok,
           f"{res.graphs} graphs, {res.runs} runs, {len(res.failures)} failures, {wall:.0f}s of 600s")
    assert not res.failures, res.failures[:5]
    assert wall <= 600


def test_criterion_2_tree_suite():
    res = run_suite(SuiteConfig("trees", TREE_SIZES))
    ok = not res.failures and res.graphs > 0
    record(2, "tree property suite n=4..10, Δ in {3,4}", ok,
           f"{res.graphs} trees, {res.runs} runs, {len(res.failures)} failures")
    assert ok, res.failures[:5]


def test_criterion_3_cycles():
    t = time.perf_counter()
    mismatches = []
    for n in range(3, 10):
        g = cycle_graph(n)
        for universe in (3, 4):
            want = identical_classes(g, 2, universe) if n <= 5 else set()
            if infeasible_classes(g, 2, universe) != want:
                mismatches.append((n, universe))
    wall = time.perf_counter() - t
    ok = not mismatches and wall <= 300
    record(3, "cycles C3..C9, k=2, universes 3 and 4", ok, f"mismatches {mismatches}, {wall:.0f}s of 300s")
    assert not mismatches
    assert wall <= 300


def _double_star_expected(g: Graph, universe: int) -> set[tuple]:
    central = g.edge_id(0, 1)
    subsets = [list(s) for s in combinations(range(universe), 2)]
    out = set()
    for side, mid in product(subsets, repeat=2):
        lists = [mid if e == central else side for e in range(g.m)]
        out.add(renaming_class(ListAssignment.of(lists, universe)))
    return out


def test_criterion_4_exceptional_graphs():
    problems = []
    k4 = complete_graph(4)
    for universe in (3, 4):
        if infeasible_classes(k4, 2, universe) != identical_classes(k4, 2, universe):
            problems.append(f"K4 u={universe}")
    k13 = star(3)
    if infeasible_classes(k13, 2, 3) != identical_classes(k13, 2, 3):
        problems.append("K13")
    ds = double_star(2, 2)
    if infeasible_classes(ds, 2, 3) != _double_star_expected(ds, 3):
        problems.append("double star")
    k33 = complete_bipartite(3, 3)
    if infeasible_classes(k33, 2, 3) != identical_classes(k33, 2, 3):
        problems.append("K33 u=3")
    table = DistinguishingTable(k33, automorphisms(k33), 4)
    batch = sample_assignments(k33, 2, 4, 100_000, seed=2024)
    flags = table.feasible(batch)
    bad = [batch[i] for i in np.flatnonzero(~flags)]
    if any(len(set(L.lists)) > 1 for L in bad):
        problems.append("K33 u=4 sample")
    record(4, "K4, K13, double star exhaustive; K33 exhaustive u=3 and 1e5 samples u=4", not problems,
           f"problems {problems}, {len(bad)} infeasible among the samples")
    assert not problems


def test_criterion_5_dprime_values():
    cases = {"C3": (cycle_graph(3), 3), "C4": (cycle_graph(4), 3), "C5": (cycle_graph(5), 3),
             "K4": (complete_graph(4), 3), "K13": (star(3), 3), "C6": (cycle_graph(6), 2),
             "Petersen": (petersen(), 2), "K33": (complete_bipartite(3, 3), 3)}
    got = {name: distinguishing_index(g, automorphisms(g), g.max_degree + 1) for name, (g, _) in cases.items()}
    wrong = {name: got[name] for name, (_, want) in cases.items() if got[name] != want}
    record(5, "distinguishing index spot values", not wrong, f"got {got}")
    assert not wrong


def test_criterion_6_probe():
    hits, graphs = [], 0
    for n in range(1, 8):
        for g in load_corpus("connected", n):
            graphs += 1
            rep = probe_conjecture(g, 3)
            if rep.is_counterexample and not rep.exceptional:
                hits.append(rep.to_json() | {"edges": [list(e) for e in g.edges]})
    record(6, "probe over connected n<=7, universe 3", not hits, f"{graphs} graphs, {len(hits)} counterexamples")
    assert not hits, hits[:3]


def test_criterion_7_invariants():
    sizes = {"K4": len(automorphisms(complete_graph(4))), "K33": len(automorphisms(complete_bipartite(3, 3))),
             "Petersen": len(automorphisms(petersen()))}
    sizes.update({f"C{n}": len(automorphisms(cycle_graph(n))) for n in range(3, 11)})
    want = {"K4": 24, "K33": 72, "Petersen": 120} | {f"C{n}": 2 * n for n in range(3, 11)}
    group_ok = sizes == want
    cyc = run_suite(SuiteConfig("cyclic", CYCLIC_SIZES, debug_invariants=True, check_oracle=True))
    trees = run_suite(SuiteConfig("trees", TREE_SIZES, check_oracle=True))
    violations = cyc.invariant_violations + len(cyc.failures) + len(trees.failures)
    disagreements = len(cyc.oracle_disagreements) + len(trees.oracle_disagreements)
    ok = group_ok and violations == 0 and disagreements == 0
    record(7, "group orders, engine/oracle consistency, debug growth invariants on suite 1", ok,
           f"groups {'ok' if group_ok else sizes}, {cyc.runs + trees.runs} runs, {disagreements} disagreements, "
           f"{violations} violations, {cyc.repaired} runs repaired")
    assert group_ok, sizes
    assert violations == 0, (cyc.failures + trees.failures)[:5]
    assert disagreements == 0
