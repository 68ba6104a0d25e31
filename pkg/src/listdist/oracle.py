"""Exhaustive ground truth for list-distinguishing edge colourings.

Three exact procedures live here:

* ``exists_distinguishing_from_lists``: depth-first search over list
  colourings in canonical edge order (colours ascending), returning the
  lexicographically first distinguishing colouring.  A partial colouring is
  rejected only when some non-identity automorphism has its whole support
  coloured and preserved, since then every extension preserves it.
* ``distinguishing_index``: the least ``k`` admitting a distinguishing
  colouring with colours ``0..k-1``.
* ``all_lists_feasibility``: every assignment of ``k``-subsets of a finite
  universe, up to renaming colours, checked for feasibility.  Subtrees are
  skipped when a union bound over prime-order cyclic subgroups proves that
  no completion can be infeasible; surviving leaves go to the exact search.

Feasibility over "any lists" is only decided relative to the chosen finite
universe.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Any, Sequence

import numpy as np

from .automorphism import AutomorphismGroup, automorphisms, is_distinguishing
from .errors import BudgetExceeded, ListDistError, NotFoundWithin
from .graph import Graph
from .lists import EdgeColouring, ListAssignment
from .recognizer import classify

DEFAULT_BUDGET = 10**8


@dataclass
class FeasibilityReport:
    feasible: bool
    witness: EdgeColouring | None
    colourings_examined: int

    def to_json(self, g: Graph) -> dict[str, Any]:
        return {
            "feasible": self.feasible,
            "witness": None if self.witness is None else self.witness.to_json(g)["edges"],
            "colourings_examined": self.colourings_examined,
        }


class _Pruner:
    """Non-identity automorphisms grouped by the depth at which their support is coloured."""

    def __init__(self, group: AutomorphismGroup, m: int) -> None:
        ep = group.edge_perms[1:] if len(group) else group.edge_perms
        self.by_depth: list[np.ndarray | None] = [None] * (m + 1)
        if m == 0 or len(ep) == 0:
            return
        moved = ep != np.arange(m)
        has = moved.any(axis=1)
        # an element moving vertices but no edge (K2's swap) is preserved by everything: depth 0
        last = np.where(has, m - np.argmax(moved[:, ::-1], axis=1), 0)
        for d in np.unique(last):
            self.by_depth[int(d)] = ep[last == d][:, :int(d)]

    def survives(self, col: list[int], depth: int) -> bool:
        """False when some automorphism decided at ``depth`` is preserved."""
        block = self.by_depth[depth]
        if block is None:
            return True
        arr = np.asarray(col[:depth])
        return not (arr[block] == arr).all(axis=1).any()


def exists_distinguishing_from_lists(g: Graph, group: AutomorphismGroup, L: ListAssignment,
                                     budget: int = DEFAULT_BUDGET) -> FeasibilityReport:
    m = g.m
    if m == 0:
        ok = len(group) == 1
        return FeasibilityReport(ok, EdgeColouring(()) if ok else None, 1)
    pruner = _Pruner(group, m)
    options = [sorted(L[e]) for e in range(m)]
    identical = len(set(L.lists)) == 1
    col = [0] * m
    examined = 0

    def search(t: int, top: int) -> bool:
        nonlocal examined
        if not pruner.survives(col, t):
            return False
        if t == m:
            examined += 1
            return True
        opts = options[t]
        if identical:
            # colours are interchangeable: allow at most one unused colour
            opts = opts[:min(len(opts), top + 2)]
        for i, c in enumerate(opts):
            examined += 1
            if examined > budget:
                raise BudgetExceeded(f"oracle search exceeded {budget} nodes", budget=budget)
            col[t] = c
            if search(t + 1, max(top, options[t].index(c)) if identical else top):
                return True
        return False

    if search(0, -1):
        witness = EdgeColouring(tuple(col))
        if not is_distinguishing(g, group, witness.colours):
            raise AssertionError("oracle witness failed verification")
        return FeasibilityReport(True, witness, examined)
    return FeasibilityReport(False, None, examined)


def distinguishing_index(g: Graph, group: AutomorphismGroup, k_max: int,
                         budget: int = DEFAULT_BUDGET) -> int:
    for k in range(1, k_max + 1):
        L = ListAssignment.uniform(g, range(k), k)
        if exists_distinguishing_from_lists(g, group, L, budget).feasible:
            return k
    raise NotFoundWithin(f"no distinguishing colouring with at most {k_max} colours", k_max=k_max)


# ---------------------------------------------------------------- all lists

def _prime_cyclic_orbits(group: AutomorphismGroup) -> list[list[tuple[int, ...]]]:
    """Edge orbits of every cyclic subgroup of prime order (non-trivial orbits only)."""
    m = group.edge_perms.shape[1]
    seen: set[tuple[int, ...]] = set()
    out = []
    for row in group.perms[1:]:
        perm = tuple(int(x) for x in row)
        order, cur = 1, perm
        ident = tuple(range(len(perm)))
        while cur != ident:
            cur = tuple(perm[x] for x in cur)
            order += 1
        if order < 2 or any(order % p == 0 for p in range(2, int(math.isqrt(order)) + 1)):
            continue
        # canonical key of <a>: sorted tuple of its non-identity elements
        powers, cur = [], perm
        for _ in range(order - 1):
            powers.append(cur)
            cur = tuple(perm[x] for x in cur)
        key = min(powers)
        if key in seen:
            continue
        seen.add(key)
        epi = group.edge_perms[np.flatnonzero((group.perms == np.asarray(perm)).all(axis=1))[0]]
        orbits, done = [], [False] * m
        for e in range(m):
            if done[e]:
                continue
            orb, x = [], e
            while not done[x]:
                done[x] = True
                orb.append(x)
                x = int(epi[x])
            orbits.append(tuple(orb))
        out.append(orbits)
    return out


@dataclass
class AllListsReport:
    all_feasible: bool
    infeasible_assignments: list[ListAssignment]
    k: int
    universe: int
    nodes: int = 0
    leaves_checked: int = 0
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "all_feasible": self.all_feasible,
            "k": self.k,
            "universe": self.universe,
            "infeasible_assignments": [a.to_json()["lists"] for a in self.infeasible_assignments],
            "up_to_colour_renaming": True,
            "nodes": self.nodes,
            "leaves_checked": self.leaves_checked,
        }


def all_lists_feasibility(g: Graph, group: AutomorphismGroup, k: int, universe: int,
                          budget: int = DEFAULT_BUDGET) -> AllListsReport:
    """Find every infeasible assignment of ``k``-subsets of ``0..universe-1`` up to colour renaming."""
    if k > universe:
        raise ValueError(f"list size {k} exceeds universe {universe}")
    m = g.m
    subsets = [frozenset(s) for s in combinations(range(universe), k)]
    masks = [sum(1 << c for c in s) for s in subsets]
    index = {s: i for i, s in enumerate(subsets)}
    renamings = []
    for sigma in permutations(range(universe)):
        if sigma == tuple(range(universe)):
            continue
        renamings.append([index[frozenset(sigma[c] for c in s)] for s in subsets])
    cyclic = _prime_cyclic_orbits(group)
    total = k ** m
    full = (1 << universe) - 1
    report = AllListsReport(True, [], k, universe)
    seq = [0] * m

    def upper_bound(t: int) -> int:
        """Sum over subgroups of colourings fixed by them, unassigned edges counted as ``k`` choices."""
        ub = 0
        for orbits in cyclic:
            prod = 1
            for orb in orbits:
                meet, touched = full, False
                for e in orb:
                    if e < t:
                        meet &= masks[seq[e]]
                        touched = True
                prod *= meet.bit_count() if touched else k
                if prod == 0:
                    break
            ub += prod
            if ub >= total:
                return ub
        return ub

    def search(t: int, tied: list[list[int]]) -> None:
        report.nodes += 1
        if report.nodes > budget:
            raise BudgetExceeded(f"list enumeration exceeded {budget} nodes", budget=budget)
        if upper_bound(t) < total:
            return
        if t == m:
            report.leaves_checked += 1
            L = ListAssignment(tuple(subsets[i] for i in seq), universe)
            if not exists_distinguishing_from_lists(g, group, L, budget).feasible:
                report.infeasible_assignments.append(L)
                report.all_feasible = False
            return
        for i in range(len(subsets)):
            seq[t] = i
            still = []
            ok = True
            for r in tied:
                if r[i] < i:
                    ok = False
                    break
                if r[i] == i:
                    still.append(r)
            if ok:
                search(t + 1, still)

    search(0, renamings)
    return report


# ---------------------------------------------------------------- table route

class DistinguishingTable:
    """Distinguishing flag for every colouring in ``universe ** m``, for batch list checks."""

    def __init__(self, g: Graph, group: AutomorphismGroup, universe: int, max_size: int = 1 << 22) -> None:
        size = universe ** g.m
        if size > max_size:
            raise BudgetExceeded(f"table of {size} colourings exceeds {max_size}")
        self.g, self.universe = g, universe
        codes = np.arange(size, dtype=np.int64)
        digits = np.empty((size, g.m), dtype=np.int8)
        for e in range(g.m):
            digits[:, e] = (codes // universe ** e) % universe
        ok = np.ones(size, dtype=bool)
        for ep in group.edge_perms[1:]:
            ok &= ~(digits[:, ep] == digits).all(axis=1)
        self.ok = ok

    def feasible(self, assignments: Sequence[ListAssignment]) -> np.ndarray:
        m, u = self.g.m, self.universe
        out = np.empty(len(assignments), dtype=bool)
        for j, L in enumerate(assignments):
            codes = np.zeros(1, dtype=np.int64)
            for e in range(m):
                opts = np.array(sorted(L[e]), dtype=np.int64) * u ** e
                codes = (codes[:, None] + opts[None, :]).ravel()
            out[j] = self.ok[codes].any()
        return out


def sample_assignments(g: Graph, k: int, universe: int, count: int, seed: int = 0) -> list[ListAssignment]:
    rng = random.Random(seed)
    subsets = [frozenset(s) for s in combinations(range(universe), k)]
    return [ListAssignment(tuple(rng.choice(subsets) for _ in range(g.m)), universe) for _ in range(count)]


# ---------------------------------------------------------------- conjecture probe

@dataclass
class ProbeReport:
    dprime: int | None
    k: int | None
    universe: int
    list_feasible_at_k: bool | None
    counterexample_lists: list[ListAssignment]
    graph_class: str
    exceptional: bool
    note: str = ""

    @property
    def is_counterexample(self) -> bool:
        if self.dprime is None or self.k is None:
            return False
        return self.k >= self.dprime and not self.list_feasible_at_k

    def to_json(self) -> dict[str, Any]:
        return {
            "dprime": self.dprime,
            "k": self.k,
            "universe": self.universe,
            "list_feasible": self.list_feasible_at_k,
            "counterexample_lists": [a.to_json()["lists"] for a in self.counterexample_lists],
            "graph_class": self.graph_class,
            "known_exceptional": self.exceptional,
            "counterexample": self.is_counterexample,
            "note": self.note,
        }


def probe_conjecture(g: Graph, universe: int = 3, k: int | None = None,
                     group: AutomorphismGroup | None = None, budget: int = DEFAULT_BUDGET) -> ProbeReport:
    """Compare D′ with list feasibility at ``k`` (default ``k = D′``).

    Infeasible assignments at ``k < D′`` are expected; at ``k ≥ D′`` they
    would refute the equality of the list and ordinary index relative to
    the universe.  The universe is raised to ``k`` when smaller.  Graphs
    with no distinguishing edge colouring at all (``K2``) are reported with
    ``dprime = None``.
    """
    group = automorphisms(g) if group is None else group
    try:
        cls = classify(g)
        label, exceptional = cls.label(), cls.exceptional
    except ListDistError:
        label, exceptional = "Disconnected", False
    try:
        dprime = distinguishing_index(g, group, max(g.max_degree + 1, 1), budget)
    except NotFoundWithin:
        return ProbeReport(None, None, universe, None, [], label, exceptional,
                           "no edge colouring breaks every automorphism")
    kk = dprime if k is None else k
    u = max(universe, kk)
    rep = all_lists_feasibility(g, group, kk, u, budget)
    note = f"universe raised to {u}" if u != universe else ""
    return ProbeReport(dprime, kk, u, rep.all_feasible, rep.infeasible_assignments, label, exceptional, note)
