"""Per-edge colour lists, colourings, and colour subgraphs.

Colours are opaque non-negative integers.  Role names such as "pink" or
"blue" are bound at run time by the engines; no value is reserved.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import MalformedLine, UncolouredIncidentEdge
from .graph import Graph


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[frozenset[int], ...]
    universe: int

    def __post_init__(self) -> None:
        for i, lst in enumerate(self.lists):
            if not lst:
                raise ValueError(f"list of edge {i} is empty")
            if min(lst) < 0 or max(lst) >= self.universe:
                raise ValueError(f"list of edge {i} leaves the universe 0..{self.universe - 1}")

    @classmethod
    def of(cls, lists: Iterable[Iterable[int]], universe: int | None = None) -> "ListAssignment":
        fl = tuple(frozenset(x) for x in lists)
        if universe is None:
            universe = 1 + max((max(x) for x in fl if x), default=-1)
        return cls(fl, universe)

    @classmethod
    def uniform(cls, g: Graph, colours: Iterable[int], universe: int | None = None) -> "ListAssignment":
        cs = list(colours)
        return cls.of([cs] * g.m, universe)

    def __getitem__(self, e: int) -> frozenset[int]:
        return self.lists[e]

    def __len__(self) -> int:
        return len(self.lists)

    @property
    def min_size(self) -> int:
        return min((len(x) for x in self.lists), default=0)

    def colours(self) -> list[int]:
        return sorted(set().union(*self.lists)) if self.lists else []

    def truncate(self, k: int) -> "ListAssignment":
        """Keep the ``k`` smallest colours of every list."""
        return ListAssignment(tuple(frozenset(sorted(x)[:k]) for x in self.lists), self.universe)

    def to_json(self) -> dict[str, Any]:
        return {"universe": self.universe, "lists": [sorted(x) for x in self.lists]}

    @classmethod
    def from_json(cls, obj: dict[str, Any], g: Graph | None = None) -> "ListAssignment":
        try:
            lists = obj["lists"]
            universe = int(obj["universe"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedLine(f"bad list assignment JSON: {exc}") from exc
        la = cls.of(lists, universe)
        if g is not None and len(la) != g.m:
            raise MalformedLine(f"{len(la)} lists for a graph with {g.m} edges")
        return la


@dataclass(frozen=True)
class EdgeColouring:
    colours: tuple[int | None, ...]

    def __getitem__(self, e: int) -> int | None:
        return self.colours[e]

    def __len__(self) -> int:
        return len(self.colours)

    def __iter__(self):
        return iter(self.colours)

    @property
    def is_total(self) -> bool:
        return all(c is not None for c in self.colours)

    def respects(self, lists: ListAssignment) -> bool:
        return all(c is None or c in lists[e] for e, c in enumerate(self.colours))

    def to_json(self, g: Graph) -> dict[str, Any]:
        return {"edges": [[u, v, c] for (u, v), c in zip(g.edges, self.colours)]}

    @classmethod
    def from_json(cls, obj: dict[str, Any], g: Graph) -> "EdgeColouring":
        cols: list[int | None] = [None] * g.m
        for row in obj.get("edges", []):
            u, v, c = row
            if not g.has_edge(u, v):
                raise MalformedLine(f"colouring mentions non-edge ({u}, {v})")
            cols[g.edge_id(u, v)] = c
        return cls(tuple(cols))


@dataclass(frozen=True)
class ColourSubgraph:
    colour: int
    edge_set: frozenset[int]
    trivial: bool


def colour_subgraph(g: Graph, L: ListAssignment, i: int) -> ColourSubgraph:
    edges = frozenset(e for e in range(g.m) if i in L[e])
    return ColourSubgraph(i, edges, len(edges) == g.m)


@dataclass(frozen=True)
class ListClassification:
    all_identical: bool
    nontrivial_colours: list[int]
    cyclic_nontrivial_colours: list[int]


def has_cycle(g: Graph, edge_set: Iterable[int]) -> bool:
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_set:
        a, b = (find(x) for x in g.edges[e])
        if a == b:
            return True
        parent[a] = b
    return False


def classify_lists(g: Graph, L: ListAssignment) -> ListClassification:
    identical = len(set(L.lists)) <= 1
    nontrivial, cyclic = [], []
    for i in L.colours():
        h = colour_subgraph(g, L, i)
        if h.trivial:
            continue
        nontrivial.append(i)
        if has_cycle(g, sorted(h.edge_set)):
            cyclic.append(i)
    return ListClassification(identical, nontrivial, cyclic)


def palette(g: Graph, c: Sequence[int | None], v: int) -> Counter:
    cols = [c[e] for e in g.incident(v)]
    if any(x is None for x in cols):
        raise UncolouredIncidentEdge(f"vertex {v} has an uncoloured edge", vertex=v)
    return Counter(cols)


def palette_key(g: Graph, c: Sequence[int | None], v: int) -> tuple:
    """Hashable palette, tolerating uncoloured edges (they count as ``-1``)."""
    return tuple(sorted(-1 if c[e] is None else c[e] for e in g.incident(v)))


# ---------------------------------------------------------------- generation

LIST_MODES = ("random", "identical", "one-off-identical")


def generate_lists(g: Graph, k: int, universe: int, seed: int = 0, mode: str = "random") -> ListAssignment:
    """Seeded list assignment with lists of size ``k`` drawn from ``0..universe-1``.

    ``identical`` gives every edge ``{0..k-1}``; ``one-off-identical`` does
    the same except the last edge, which swaps ``k-1`` for ``k``.
    """
    if k > universe:
        raise ValueError(f"list size {k} exceeds universe {universe}")
    base = list(range(k))
    if mode == "identical":
        return ListAssignment.of([base] * g.m, universe)
    if mode == "one-off-identical":
        if k >= universe:
            raise ValueError("one-off-identical needs universe > k")
        lists = [base] * g.m
        if g.m:
            lists[-1] = base[:-1] + [k]
        return ListAssignment.of(lists, universe)
    if mode != "random":
        raise ValueError(f"unknown list mode {mode!r}")
    rng = random.Random(seed)
    return ListAssignment.of([rng.sample(range(universe), k) for _ in range(g.m)], universe)


def load_lists(text: str, g: Graph | None = None) -> ListAssignment:
    return ListAssignment.from_json(json.loads(text), g)
