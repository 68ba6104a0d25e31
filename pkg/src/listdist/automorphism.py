"""Full automorphism groups of small graphs and colour-preserving subgroups.

Groups are stored as two integer arrays: ``perms[i, x]`` is the image of
vertex ``x`` under the ``i``-th element, and ``edge_perms[i, e]`` is the id
of the image of edge ``e``.  Elements are sorted lexicographically by vertex
image, so the identity always comes first.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import TooLarge
from .graph import Edge, Graph, canon, distances

DEFAULT_VERTEX_CAP = 12
DEFAULT_ELEMENT_CAP = 2_000_000


@dataclass(frozen=True)
class Automorphism:
    image: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.image[v]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self`` after ``other``."""
        return Automorphism(tuple(self.image[x] for x in other.image))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.image)
        for x, y in enumerate(self.image):
            inv[y] = x
        return Automorphism(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.image))


class AutomorphismGroup:
    """An explicit list of automorphisms of ``graph`` (identity first)."""

    def __init__(self, graph: Graph, perms: np.ndarray, edge_perms: np.ndarray | None = None) -> None:
        self.graph = graph
        self.perms = perms
        if edge_perms is None:
            edge_perms = _edge_perms(graph, perms)
        self.edge_perms = edge_perms

    def __len__(self) -> int:
        return len(self.perms)

    def __iter__(self) -> Iterator[Automorphism]:
        return (Automorphism(tuple(int(x) for x in row)) for row in self.perms)

    def __contains__(self, a: Automorphism) -> bool:
        return bool((self.perms == np.asarray(a.image)).all(axis=1).any())

    @property
    def elements(self) -> list[Automorphism]:
        return list(self)

    @property
    def is_trivial(self) -> bool:
        return len(self.perms) == 1

    def subgroup(self, mask: np.ndarray) -> "AutomorphismGroup":
        return AutomorphismGroup(self.graph, self.perms[mask], self.edge_perms[mask])

    def __repr__(self) -> str:
        return f"AutomorphismGroup(order={len(self)}, n={self.graph.n})"


def _edge_perms(g: Graph, perms: np.ndarray) -> np.ndarray:
    if g.m == 0:
        return np.zeros((len(perms), 0), dtype=np.int32)
    lookup = np.full((g.n, g.n), -1, dtype=np.int32)
    for i, (u, v) in enumerate(g.edges):
        lookup[u, v] = lookup[v, u] = i
    ends = np.asarray(g.edges)
    return lookup[perms[:, ends[:, 0]], perms[:, ends[:, 1]]]


def vertex_invariants(g: Graph) -> list[tuple]:
    """Degree, sorted neighbour degrees and BFS distance profile of every vertex."""
    out = []
    for v in range(g.n):
        nd = tuple(sorted(g.degree(w) for w in g.neighbours(v)))
        prof = Counter(d for d in distances(g, [v]) if d is not None)
        out.append((g.degree(v), nd, tuple(sorted(prof.items()))))
    return out


def automorphisms(g: Graph, cap: int = DEFAULT_VERTEX_CAP,
                  max_elements: int = DEFAULT_ELEMENT_CAP) -> AutomorphismGroup:
    """Enumerate Aut(g) by backtracking over invariant-compatible images."""
    n = g.n
    if n > cap:
        raise TooLarge(f"{n} vertices exceeds the enumeration cap {cap}", n=n, cap=cap)
    if n == 0:
        return AutomorphismGroup(g, np.zeros((1, 0), dtype=np.int32))
    inv = vertex_invariants(g)
    adjbits = [sum(1 << w for w in g.neighbours(v)) for v in range(n)]
    cls = Counter(inv)

    # search order: BFS from the rarest class so each vertex has mapped neighbours
    order: list[int] = []
    placed = [False] * n
    while len(order) < n:
        start = min((v for v in range(n) if not placed[v]), key=lambda v: (cls[inv[v]], v))
        placed[start] = True
        queue = [start]
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in g.neighbours(x):
                if not placed[y]:
                    placed[y] = True
                    queue.append(y)
    candidates = [[w for w in range(n) if inv[w] == inv[v]] for v in order]
    earlier = [order[:i] for i in range(n)]

    image = [-1] * n
    used = [False] * n
    found: list[tuple[int, ...]] = []

    def search(i: int) -> None:
        if i == n:
            found.append(tuple(image))
            if len(found) > max_elements:
                raise TooLarge(f"automorphism group exceeds {max_elements} elements")
            return
        x = order[i]
        ax = adjbits[x]
        for y in candidates[i]:
            if used[y]:
                continue
            ay = adjbits[y]
            if all(((ax >> w) & 1) == ((ay >> image[w]) & 1) for w in earlier[i]):
                image[x] = y
                used[y] = True
                search(i + 1)
                used[y] = False
        image[x] = -1

    search(0)
    found.sort()
    perms = np.array(found, dtype=np.int32).reshape(len(found), n)
    return AutomorphismGroup(g, perms)


def edge_image(g: Graph, a: Automorphism | Sequence[int], e: Edge | int) -> Edge:
    img = a.image if isinstance(a, Automorphism) else a
    u, v = g.edges[e] if isinstance(e, int) else e
    return canon(img[u], img[v])


def _colour_array(c: Sequence[int | None]) -> np.ndarray:
    return np.array([-1 if x is None else x for x in c], dtype=np.int64)


def preserving_mask(group: AutomorphismGroup, c: Sequence[int | None]) -> np.ndarray:
    """Boolean mask of elements mapping every edge to an edge of the same colour.

    Uncoloured edges (``None``) behave as one extra colour, so they must map
    to uncoloured edges.
    """
    col = _colour_array(c)
    if col.size == 0:
        return np.ones(len(group), dtype=bool)
    return (col[group.edge_perms] == col).all(axis=1)


def is_distinguishing(g: Graph, group: AutomorphismGroup, c: Sequence[int | None]) -> bool:
    if any(x is None for x in c):
        raise ValueError("is_distinguishing needs a total colouring")
    return int(preserving_mask(group, c).sum()) == 1


def colour_preserving_stabilizer(g: Graph, group: AutomorphismGroup,
                                 c: Sequence[int | None]) -> AutomorphismGroup:
    return group.subgroup(preserving_mask(group, c))


def fixed_vertices(group: AutomorphismGroup) -> set[int]:
    n = group.perms.shape[1]
    ident = np.arange(n)
    return {int(v) for v in np.flatnonzero((group.perms == ident).all(axis=0))}


def setwise_stabilizer(group: AutomorphismGroup, edge_ids: Sequence[int]) -> AutomorphismGroup:
    """Elements mapping the given edge set onto itself."""
    mask = np.zeros(group.edge_perms.shape[1], dtype=bool)
    mask[list(edge_ids)] = True
    keep = (mask[group.edge_perms] == mask).all(axis=1)
    return group.subgroup(keep)
