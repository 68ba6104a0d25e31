"""Constructive list-distinguishing edge colourings of finite trees.

Everything is built from *standard colourings*: with a root ``r`` chosen,
every other vertex gets distinct colours on its forward (away-from-root)
edges.  Such a colouring is distinguishing as soon as it fixes ``N[r]``, so
each case below only has to pick a root and colour around it:

* no non-leaf vertex sees one list on all its edges: distinct colours at
  ``r``, one of them (pink) is used nowhere else, and the far end of the pink
  edge gets a palette different from ``r``'s;
* some vertex has ``1 < d < Δ``: root there, distinct colours at ``r``, and
  every other vertex of degree ``d(r)`` avoids ``r``'s palette;
* otherwise all degrees are ``1`` or ``Δ``: root at the centre (vertex or
  edge) and break the remaining symmetry using non-isomorphic branches.

The proofs leave several choices free (which root, which pink edge, which
system of distinct colours).  The engine walks those choices in a fixed
order and keeps the first candidate that a signature-based symmetry check
accepts, so a bad free choice costs time rather than correctness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Iterator, Sequence

from .errors import (
    ExceptionalTree, ExtensionStuck, InvariantViolation, ListTooShort, NotATree, OverConstrained, Unsupported,
)
from .graph import Graph, analyze
from .lists import EdgeColouring, ListAssignment
from .recognizer import BISYMMETRIC_TREE, SYMMETRIC_TREE, classify, tree_centre

Colouring = list  # list[int | None] indexed by edge id


@dataclass(frozen=True)
class RootedTree:
    graph: Graph
    root: int
    parent: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]  # BFS order from the root

    @classmethod
    def build(cls, g: Graph, root: int) -> "RootedTree":
        parent: list[int | None] = [None] * g.n
        children: list[list[int]] = [[] for _ in range(g.n)]
        order = [root]
        seen = [False] * g.n
        seen[root] = True
        for x in order:
            for y in g.neighbours(x):
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    children[x].append(y)
                    order.append(y)
        if len(order) != g.n:
            raise NotATree("rooting needs a connected graph")
        return cls(g, root, tuple(parent), tuple(tuple(c) for c in children), tuple(order))

    def back_edge(self, u: int) -> int | None:
        p = self.parent[u]
        return None if p is None else self.graph.edge_id(u, p)

    def forward_edges(self, u: int) -> list[int]:
        return [self.graph.edge_id(u, w) for w in self.children[u]]


# ---------------------------------------------------------------- signatures

class _Interner:
    def __init__(self) -> None:
        self.table: dict[tuple, int] = {}

    def __call__(self, key: tuple) -> int:
        return self.table.setdefault(key, len(self.table))


def _signatures(t: RootedTree, colours: Sequence[int | None] | None, intern: _Interner) -> list[int]:
    g = t.graph
    sig = [0] * g.n
    for u in reversed(t.order):
        items = []
        for w in t.children[u]:
            col = None if colours is None else colours[g.edge_id(u, w)]
            items.append((-1 if col is None else col, sig[w]))
        sig[u] = intern(tuple(sorted(items)))
    return sig


def rooted_subtree_signature(t: RootedTree, v: int, _intern: _Interner | None = None) -> int:
    """Canonical id of the subtree hanging from ``v``: equal ids iff isomorphic as rooted trees.

    Ids are only comparable when produced with the same interner, so pass one
    around (or compare within a single call of :func:`subtree_signatures`).
    """
    intern = _intern or _Interner()
    return _signatures(t, None, intern)[v]


def subtree_signatures(t: RootedTree) -> list[int]:
    return _signatures(t, None, _Interner())


def tree_colouring_is_distinguishing(g: Graph, colours: Sequence[int | None]) -> bool:
    """Exact symmetry check for an edge-coloured tree.

    Every automorphism fixes the centre.  Rooted there, a non-trivial
    colour-preserving automorphism exists iff some vertex has two children
    with equal (edge colour, coloured subtree) pairs, or the centre is an
    edge whose two halves are equal as coloured rooted trees.
    """
    centre = tree_centre(g)
    intern = _Interner()
    if len(centre) == 1:
        t = RootedTree.build(g, centre[0])
        sig = _signatures(t, colours, intern)
        halves = None
    else:
        x, y = centre
        t = RootedTree.build(g, x)
        sig = _signatures(t, colours, intern)
        # y's half is the subtree at y; x's half is x without the y branch
        rest = []
        for w in t.children[x]:
            if w != y:
                col = colours[g.edge_id(x, w)]
                rest.append((-1 if col is None else col, sig[w]))
        halves = (intern(tuple(sorted(rest))), sig[y])
    for u in t.order:
        seen = set()
        for w in t.children[u]:
            col = colours[g.edge_id(u, w)]
            key = (-1 if col is None else col, sig[w])
            if key in seen:
                return False
            seen.add(key)
    return halves is None or halves[0] != halves[1]


# ---------------------------------------------------------------- standard colouring

@dataclass
class Constraints:
    """Extra conditions threaded through :func:`standard_colouring`.

    ``forbid`` is hard (per edge), ``avoid`` is a soft preference (per edge),
    and ``palette_avoid`` maps a vertex to a multiset (sorted tuple) its
    palette must differ from.  ``palette_avoid_degree`` asks every non-root
    vertex of that degree to avoid the root's palette.
    """

    forbid: dict[int, frozenset[int]] = field(default_factory=dict)
    avoid: dict[int, frozenset[int]] = field(default_factory=dict)
    palette_avoid: dict[int, tuple[int, ...]] = field(default_factory=dict)
    palette_avoid_degree: int | None = None


def _vertex_options(g: Graph, L: ListAssignment, edges: list[int], back: int | None,
                    colours: Colouring, cons: Constraints, target: tuple[int, ...] | None) -> Iterator[tuple[int, ...]]:
    """Distinct-colour choices for ``edges``, soft preferences honoured first."""
    allowed = [sorted(set(L[e]) - cons.forbid.get(e, frozenset())) for e in edges]
    back_col = [] if back is None else [colours[back]]
    soft_ok: list[tuple[int, ...]] = []
    rest: list[tuple[int, ...]] = []
    for combo in product(*allowed):
        if len(set(combo)) != len(combo):
            continue
        if target is not None and tuple(sorted(back_col + list(combo))) == target:
            continue
        if all(c not in cons.avoid.get(e, ()) for e, c in zip(edges, combo)):
            soft_ok.append(combo)
        else:
            rest.append(combo)
    yield from soft_ok
    yield from rest


def standard_colouring(t: RootedTree, L: ListAssignment, root_colours: dict[int, int],
                       cons: Constraints | None = None) -> EdgeColouring:
    """Complete ``root_colours`` (which must cover every edge at the root) to a standard colouring.

    Vertices are handled in BFS order; each picks the first admissible
    distinct assignment of its forward edges.  No backtracking across
    vertices is needed: a vertex's choice never constrains a later vertex
    beyond fixing its back-edge colour, which all options already respect.
    """
    cons = cons or Constraints()
    g = t.graph
    colours: Colouring = [None] * g.m
    for e, c in root_colours.items():
        if c not in L[e] or c in cons.forbid.get(e, ()):
            raise OverConstrained(f"root colour {c} not admissible on edge {g.edges[e]}", edge=e)
        colours[e] = c
    missing = [e for e in g.incident(t.root) if colours[e] is None]
    if missing:
        raise OverConstrained("root edges must be pre-coloured", edges=missing)
    root_pal = tuple(sorted(colours[e] for e in g.incident(t.root)))
    for u in t.order[1:]:
        fwd = t.forward_edges(u)
        if not fwd:
            continue
        back = t.back_edge(u)
        target = cons.palette_avoid.get(u)
        if target is None and cons.palette_avoid_degree == g.degree(u):
            target = root_pal
        pre = [e for e in fwd if colours[e] is not None]
        if pre:
            raise OverConstrained(f"forward edge of {u} already coloured", vertex=u)
        choice = next(_vertex_options(g, L, fwd, back, colours, cons, target), None)
        if choice is None:
            raise OverConstrained(f"no admissible forward colours at vertex {u}", vertex=u)
        for e, c in zip(fwd, choice):
            colours[e] = c
    return EdgeColouring(tuple(colours))


# ---------------------------------------------------------------- root colourings

def _distinct_assignments(L: ListAssignment, edges: list[int], limit: int = 64) -> list[tuple[int, ...]]:
    out = []
    for combo in product(*(sorted(L[e]) for e in edges)):
        if len(set(combo)) == len(combo):
            out.append(combo)
            if len(out) >= limit:
                break
    return out


def _one_repeat_assignments(L: ListAssignment, edges: list[int], pairs: list[tuple[int, int]],
                            limit: int = 64) -> list[tuple[int, ...]]:
    """Assignments where exactly the edges at positions ``i, j`` of some allowed pair share a colour."""
    out = []
    for i, j in pairs:
        for combo in product(*(sorted(L[e]) for e in edges)):
            rest = [c for k, c in enumerate(combo) if k not in (i, j)]
            if combo[i] != combo[j] or combo[i] in rest or len(set(rest)) != len(rest):
                continue
            out.append(combo)
            if len(out) >= limit:
                return out
    return out


@dataclass
class Candidate:
    case: str
    root: int
    root_colours: dict[int, int]
    cons: Constraints
    note: dict[str, Any] = field(default_factory=dict)


def _has_uniform_vertex(g: Graph, L: ListAssignment) -> bool:
    return any(g.degree(v) >= 2 and len({L[e] for e in g.incident(v)}) == 1 for v in range(g.n))


def _pink_edge_candidates(g: Graph, L: ListAssignment) -> Iterator[Candidate]:
    for r in sorted(range(g.n), key=lambda v: (-g.degree(v), v)):
        t = RootedTree.build(g, r)
        edges = list(g.incident(r))
        for combo in _distinct_assignments(L, edges, limit=16):
            for pink_edge, pink in zip(edges, combo):
                v = g.other(pink_edge, r)
                fwd_v = t.forward_edges(v)
                forbid = {e: frozenset({pink}) for e in range(g.m) if e not in edges}
                pal_r = tuple(sorted(combo))
                for hard in (True, False):
                    cons = Constraints(forbid=forbid if hard else {},
                                       avoid={} if hard else forbid,
                                       palette_avoid={v: pal_r} if fwd_v else {})
                    yield Candidate("pink-edge", r, dict(zip(edges, combo)), cons,
                                    {"pink": pink, "pink_edge": list(g.edges[pink_edge]), "strict_pink": hard})


def _low_degree_candidates(g: Graph, L: ListAssignment, delta: int) -> Iterator[Candidate]:
    for r in range(g.n):
        if not 1 < g.degree(r) < delta:
            continue
        edges = list(g.incident(r))
        for combo in _distinct_assignments(L, edges, limit=16):
            yield Candidate("low-degree-root", r, dict(zip(edges, combo)),
                            Constraints(palette_avoid_degree=g.degree(r)))


def _branch_pairs(g: Graph, t: RootedTree, sig: list[int], u: int, edges: list[int]) -> list[tuple[int, int]]:
    ends = [g.other(e, u) for e in edges]
    return [(i, j) for i in range(len(edges)) for j in range(i + 1, len(edges)) if sig[ends[i]] != sig[ends[j]]]


def _centre_candidates(g: Graph, L: ListAssignment) -> Iterator[Candidate]:
    centre = tree_centre(g)
    if len(centre) == 1:
        r = centre[0]
        t = RootedTree.build(g, r)
        sig = subtree_signatures(t)
        edges = list(g.incident(r))
        combos = _distinct_assignments(L, edges, limit=16)
        combos += _one_repeat_assignments(L, edges, _branch_pairs(g, t, sig, r, edges), limit=16)
        for combo in combos:
            yield Candidate("central-vertex", r, dict(zip(edges, combo)), Constraints())
        return
    for x, y in (centre, centre[::-1]):
        t = RootedTree.build(g, x)
        sig = subtree_signatures(t)
        xy = g.edge_id(x, y)
        rest = [e for e in g.incident(x) if e != xy]
        for cxy in sorted(L[xy]):
            combos = _distinct_assignments(L, rest, limit=16)
            combos += _one_repeat_assignments(L, rest, _branch_pairs(g, t, sig, x, rest), limit=16)
            for combo in combos:
                pal_x = tuple(sorted((cxy,) + combo))
                root_cols = dict(zip(rest, combo))
                root_cols[xy] = cxy
                yield Candidate("central-edge", x, root_cols, Constraints(palette_avoid={y: pal_x}),
                                {"central_edge": [min(x, y), max(x, y)]})


def _fallback_candidates(g: Graph, L: ListAssignment) -> Iterator[Candidate]:
    """Exhaustive fallback over roots and root colourings, with same-degree palette avoidance."""
    for r in range(g.n):
        edges = list(g.incident(r))
        t = RootedTree.build(g, r)
        sig = subtree_signatures(t)
        combos = _distinct_assignments(L, edges, limit=256)
        combos += _one_repeat_assignments(L, edges, _branch_pairs(g, t, sig, r, edges), limit=256)
        for combo in combos:
            for cons in (Constraints(palette_avoid_degree=g.degree(r)), Constraints()):
                yield Candidate("fallback", r, dict(zip(edges, combo)), cons)


# ---------------------------------------------------------------- engine

def tree_case(g: Graph, L: ListAssignment) -> str:
    delta = g.max_degree
    if not _has_uniform_vertex(g, L):
        return "pink-edge"
    if any(1 < g.degree(v) < delta for v in range(g.n)):
        return "low-degree-root"
    return "centre"


def colour_tree(g: Graph, L: ListAssignment, trace: list | None = None) -> EdgeColouring:
    s = analyze(g)
    if not s.is_tree:
        raise NotATree("colour_tree needs a tree")
    delta = s.max_degree
    if delta < 3:
        raise Unsupported(f"maximum degree {delta} < 3", delta=delta)
    cls = classify(g)
    if cls.tag in (SYMMETRIC_TREE, BISYMMETRIC_TREE):
        raise ExceptionalTree(f"{cls.label()} needs lists of size {delta}", graph_class=cls.label(),
                              required_list_size=delta)
    if len(L) != g.m:
        raise ValueError(f"{len(L)} lists for {g.m} edges")
    if L.min_size < delta - 1:
        raise ListTooShort(f"lists must have size at least {delta - 1}", required=delta - 1)

    case = tree_case(g, L)
    if case == "pink-edge":
        primary = _pink_edge_candidates(g, L)
    elif case == "low-degree-root":
        primary = _low_degree_candidates(g, L, delta)
    else:
        if any(g.degree(v) not in (1, delta) for v in range(g.n)):
            raise InvariantViolation("centre case reached with a degree outside {1, Δ}")
        primary = _centre_candidates(g, L)

    tried = 0
    for source in (primary, _fallback_candidates(g, L)):
        for cand in source:
            tried += 1
            try:
                col = standard_colouring(RootedTree.build(g, cand.root), L, cand.root_colours, cand.cons)
            except OverConstrained:
                continue
            if tree_colouring_is_distinguishing(g, col.colours):
                if trace is not None:
                    trace.append({"step": 0, "rule": cand.case, "vertex": cand.root,
                                  "colours": {f"{u}-{v}": c for (u, v), c in
                                              ((g.edges[e], c) for e, c in sorted(cand.root_colours.items()))},
                                  "candidates_tried": tried, **cand.note})
                return col
    raise ExtensionStuck(f"no standard colouring fixed the root neighbourhood after {tried} candidates",
                         tried=tried)
