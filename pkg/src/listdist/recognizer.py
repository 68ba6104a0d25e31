"""Recognition of the graphs excluded from the Δ−1 list bound.

Symmetric and bisymmetric trees follow the distinguishing-index literature:
a tree is *symmetric* if it has a central vertex such that every leaf is at
the same distance from it and every non-leaf has the same degree; it is
*bisymmetric* if the same holds with a central edge instead (distance to
the nearer end of the edge).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from .errors import Disconnected, NotATree, Unsupported
from .graph import Graph, analyze, distances

CYCLE = "Cycle"
K4 = "K4"
K33 = "K33"
SYMMETRIC_TREE = "SymmetricTree"
BISYMMETRIC_TREE = "BisymmetricTree"
GENERAL_TREE = "GeneralTree"
GENERAL_CYCLIC = "GeneralCyclic"

EXCEPTIONAL_TAGS = frozenset({CYCLE, K4, K33, SYMMETRIC_TREE, BISYMMETRIC_TREE})


@dataclass(frozen=True)
class GraphClass:
    tag: str
    delta: int
    params: dict[str, int] = field(default_factory=dict, compare=True, hash=False)

    @property
    def exceptional(self) -> bool:
        return self.tag in EXCEPTIONAL_TAGS

    @property
    def is_tree(self) -> bool:
        return self.tag in (SYMMETRIC_TREE, BISYMMETRIC_TREE, GENERAL_TREE)

    def label(self) -> str:
        if not self.params:
            return self.tag
        inner = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.tag}({inner})"

    def __hash__(self) -> int:
        return hash((self.tag, self.delta, tuple(sorted(self.params.items()))))


def tree_centre(g: Graph) -> tuple[int, ...]:
    """Centre of a tree by repeated leaf stripping: one vertex or the two ends of an edge."""
    s = analyze(g)
    if not s.is_tree:
        raise NotATree("tree_centre needs a tree")
    alive = set(range(g.n))
    deg = [g.degree(v) for v in range(g.n)]
    while len(alive) > 2:
        for x in [v for v in alive if deg[v] <= 1]:
            alive.discard(x)
            for y in g.neighbours(x):
                deg[y] -= 1
    return tuple(sorted(alive))


def _uniform_tree(g: Graph, sources: list[int]) -> tuple[int, int] | None:
    dist = distances(g, sources)
    leaves = [v for v in range(g.n) if g.degree(v) == 1 and v not in sources]
    inner = {g.degree(v) for v in range(g.n) if g.degree(v) > 1}
    if len(inner) != 1 or not leaves:
        return None
    hs = {dist[v] for v in leaves}
    if len(hs) != 1:
        return None
    return hs.pop(), inner.pop()


@lru_cache(maxsize=1 << 14)
def classify(g: Graph) -> GraphClass:
    s = analyze(g)
    if not s.connected:
        raise Disconnected("classify needs a connected graph")
    delta = s.max_degree
    if s.is_tree:
        if g.n >= 3:
            centre = tree_centre(g)
            uni = _uniform_tree(g, list(centre))
            if uni is not None:
                h, d = uni
                tag = SYMMETRIC_TREE if len(centre) == 1 else BISYMMETRIC_TREE
                return GraphClass(tag, delta, {"h": h, "d": d})
        return GraphClass(GENERAL_TREE, delta, {"n": g.n})
    degrees = set(s.degree_histogram)
    if degrees == {2}:
        return GraphClass(CYCLE, 2, {"n": g.n})
    if g.n == 4 and g.m == 6:
        return GraphClass(K4, 3)
    if g.n == 6 and g.m == 9 and degrees == {3} and _is_k33(g):
        return GraphClass(K33, 3)
    return GraphClass(GENERAL_CYCLIC, delta, {"n": g.n})


def _is_k33(g: Graph) -> bool:
    side = [None] * g.n
    side[0] = 0
    stack = [0]
    while stack:
        x = stack.pop()
        for y in g.neighbours(x):
            if side[y] is None:
                side[y] = 1 - side[x]
                stack.append(y)
            elif side[y] == side[x]:
                return False
    return side.count(0) == 3


@dataclass(frozen=True)
class ListSizeClaim:
    k: int
    claim: str  # "guaranteed" or "exceptional"

    def to_json(self) -> dict[str, Any]:
        return {"required_list_size": self.k, "claim": self.claim}


def required_list_size(cls: GraphClass) -> ListSizeClaim:
    """Smallest list size that always admits a distinguishing colouring."""
    if cls.tag == CYCLE:
        return ListSizeClaim(3 if cls.params["n"] <= 5 else 2, "exceptional")
    if cls.delta <= 2:
        raise Unsupported(f"{cls.label()} has maximum degree {cls.delta}; no list-size table applies",
                          graph_class=cls.label())
    if cls.tag in (K4, K33, SYMMETRIC_TREE, BISYMMETRIC_TREE):
        return ListSizeClaim(cls.delta, "exceptional")
    return ListSizeClaim(cls.delta - 1, "guaranteed")
