"""Finite simple graphs with dense vertex and edge indices.

Vertices are ``0..n-1``; edges are canonical pairs ``(u, v)`` with ``u < v``
and carry a dense edge id (their position in ``Graph.edges``).  Every
iteration order in this module is index-ascending, so every query is
deterministic.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DuplicateEdge, InvalidGraph6, LoopEdge, MalformedLine

Edge = tuple[int, int]
Cycle = tuple[int, ...]

MAX_VERTICES = 1 << 16


def canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    Two graphs compare equal iff they have the same vertex count and the
    same labelled edge set, so a ``Graph`` can key caches.
    """

    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)
    _edge_ids: dict[Edge, int] = field(init=False, compare=False, repr=False, hash=False)
    _incident: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        inc: list[list[int]] = [[] for _ in range(self.n)]
        ids: dict[Edge, int] = {}
        for i, (u, v) in enumerate(self.edges):
            adj[u].append(v)
            adj[v].append(u)
            inc[u].append(i)
            inc[v].append(i)
            ids[(u, v)] = i
        order = [sorted(range(len(a)), key=a.__getitem__) for a in adj]
        object.__setattr__(self, "adjacency", tuple(tuple(a[j] for j in o) for a, o in zip(adj, order)))
        object.__setattr__(self, "_incident", tuple(tuple(c[j] for j in o) for c, o in zip(inc, order)))
        object.__setattr__(self, "_edge_ids", ids)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        seen: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise LoopEdge(f"loop at vertex {u}", vertex=u)
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedLine(f"edge ({u}, {v}) out of range for n={n}")
            e = canon(u, v)
            if e in seen:
                raise DuplicateEdge(f"duplicate edge {e}", edge=list(e))
            seen.add(e)
        if n >= MAX_VERTICES:
            raise MalformedLine(f"graphs with {n} vertices are not supported")
        return cls(n, tuple(sorted(seen)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def incident(self, v: int) -> tuple[int, ...]:
        """Edge ids at ``v``, ordered like ``neighbours(v)``."""
        return self._incident[v]

    def has_edge(self, u: int, v: int) -> bool:
        return canon(u, v) in self._edge_ids

    def edge_id(self, u: int, v: int) -> int:
        return self._edge_ids[canon(u, v)]

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """The graph with vertex ``x`` renamed ``perm[x]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------- parsing

def parse_edge_list(text: str) -> Graph:
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise MalformedLine(f"line {lineno}: expected 'u v', got {raw!r}", line=lineno)
        pairs.append((int(parts[0]), int(parts[1])))
    n = 1 + max((max(p) for p in pairs), default=-1)
    return Graph.from_edges(n, pairs)


def _graph6_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise InvalidGraph6("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 4 and data[1] != 126:
        return (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63), 4
    raise InvalidGraph6("graph6 sizes above 258047 are not supported")


def parse_graph6(text: str) -> Graph:
    line = text.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    data = line.encode("ascii", errors="replace")
    if any(not 63 <= b <= 126 for b in data):
        raise InvalidGraph6(f"invalid graph6 byte in {line!r}")
    n, offset = _graph6_size(data)
    body = data[offset:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise InvalidGraph6(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    bits = []
    for b in body:
        x = b - 63
        bits.extend((x >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise InvalidGraph6("non-zero padding bits")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = [n + 63]
    else:
        head = [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [63 + int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6)]
    return bytes(head + body).decode("ascii")


def read_graph(text: str) -> Graph:
    """Parse either an edge list or a single graph6 line (auto-detected)."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith(">>graph6<<") or not (line[0].isdigit() or " " in line or "\t" in line):
            return parse_graph6(line)
        return parse_edge_list(text)
    return parse_edge_list(text)


# ---------------------------------------------------------------- structure

@dataclass(frozen=True)
class StructureSummary:
    connected: bool
    max_degree: int
    is_tree: bool
    degree_histogram: dict[int, int]


@lru_cache(maxsize=1 << 14)
def analyze(g: Graph) -> StructureSummary:
    seen = distances(g, [0]) if g.n else []
    connected = all(d is not None for d in seen)
    hist = dict(sorted(Counter(g.degree(v) for v in range(g.n)).items()))
    return StructureSummary(connected, g.max_degree, connected and g.m == g.n - 1, hist)


def is_connected(g: Graph) -> bool:
    return analyze(g).connected


def distances(g: Graph, sources: Iterable[int], allowed: frozenset[int] | None = None) -> list[int | None]:
    dist: list[int | None] = [None] * g.n
    queue: deque[int] = deque()
    for s in sorted(set(sources)):
        dist[s] = 0
        queue.append(s)
    while queue:
        x = queue.popleft()
        for y, e in zip(g.adjacency[x], g.incident(x)):
            if dist[y] is None and (allowed is None or e in allowed):
                dist[y] = dist[x] + 1  # type: ignore[operator]
                queue.append(y)
    return dist


def bfs_order(g: Graph, sources: Iterable[int]) -> list[tuple[int, int]]:
    """Reachable vertices as ``(vertex, distance)``, sorted by distance then index."""
    dist = distances(g, sources)
    return sorted(((v, d) for v, d in enumerate(dist) if d is not None), key=lambda t: (t[1], t[0]))


def shortest_path(g: Graph, start: int, targets: Iterable[int],
                  allowed: frozenset[int] | None = None) -> list[int] | None:
    """Shortest path from ``start`` to the nearest target, optionally inside an edge subset.

    Ties are broken towards lower vertex indices.  Returns ``[start]`` when
    ``start`` is itself a target, ``None`` when no target is reachable.
    """
    targets = set(targets)
    if start in targets:
        return [start]
    parent = {start: start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y, e in zip(g.adjacency[x], g.incident(x)):
            if y in parent or (allowed is not None and e not in allowed):
                continue
            parent[y] = x
            if y in targets:
                path = [y]
                while path[-1] != start:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(y)
    return None


def normalize_cycle(cycle: Sequence[int]) -> Cycle:
    k = len(cycle)
    i = min(range(k), key=cycle.__getitem__)
    fwd = tuple(cycle[(i + j) % k] for j in range(k))
    bwd = tuple(cycle[(i - j) % k] for j in range(k))
    return min(fwd, bwd)


def cycle_edges(g: Graph, cycle: Sequence[int]) -> list[int]:
    """Edge ids of ``cycle`` in traversal order: ``(c0,c1), (c1,c2), ..., (c_{k-1},c0)``."""
    k = len(cycle)
    return [g.edge_id(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def is_chordless(g: Graph, cycle: Sequence[int], allowed: frozenset[int] | None = None) -> bool:
    k = len(cycle)
    for i, j in combinations(range(k), 2):
        if (j - i) % k in (1, k - 1):
            continue
        u, v = cycle[i], cycle[j]
        if g.has_edge(u, v) and (allowed is None or g.edge_id(u, v) in allowed):
            return False
    return True


def find_induced_cycle(g: Graph, allowed_edges: Iterable[int] | None = None) -> Cycle | None:
    """A shortest cycle of ``g`` (or of the subgraph formed by ``allowed_edges``).

    A shortest cycle has no chord inside the searched (sub)graph.  The choice
    among shortest cycles is deterministic; ``None`` means the searched graph
    is a forest.
    """
    allowed = None if allowed_edges is None else frozenset(allowed_edges)
    best: Cycle | None = None
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if best is not None and 2 * dist[x] + 1 > len(best):
                break
            for y, e in zip(g.adjacency[x], g.incident(x)):
                if allowed is not None and e not in allowed:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x] and dist[y] >= dist[x]:
                    cyc = _close_cycle(parent, x, y)
                    if cyc is not None:
                        cyc = normalize_cycle(cyc)
                        if best is None or (len(cyc), cyc) < (len(best), best):
                            best = cyc
    return best


def _close_cycle(parent: dict[int, int], x: int, y: int) -> list[int] | None:
    px = [x]
    while parent[px[-1]] != -1:
        px.append(parent[px[-1]])
    py = [y]
    while parent[py[-1]] != -1:
        py.append(parent[py[-1]])
    sx = set(px)
    common = next(z for z in py if z in sx)
    a = px[:px.index(common) + 1]
    b = py[:py.index(common)]
    cyc = a[::-1] + b
    # the two tree branches must meet only at their common ancestor
    if len(set(cyc)) != len(cyc) or len(cyc) < 3:
        return None
    return cyc


@lru_cache(maxsize=4096)
def chordless_cycles(g: Graph) -> tuple[Cycle, ...]:
    """All induced cycles of ``g`` in normal form, sorted by length then lexicographically."""
    out: list[Cycle] = []
    adj = [set(a) for a in g.adjacency]

    def extend(path: list[int], on_path: set[int]) -> None:
        s, last = path[0], path[-1]
        for y in g.adjacency[last]:
            if y <= s or y in on_path:
                continue
            # y may touch only `last` among internal path vertices, and s only when closing
            inner = path[1:-1]
            if any(z in adj[y] for z in inner):
                continue
            if s in adj[y]:
                if len(path) >= 2 and path[1] < y:
                    out.append(tuple(path) + (y,))
                continue
            path.append(y)
            on_path.add(y)
            extend(path, on_path)
            path.pop()
            on_path.discard(y)

    for s in range(g.n):
        for x in g.adjacency[s]:
            if x > s:
                extend([s, x], {s, x})
    return tuple(sorted((normalize_cycle(c) for c in out), key=lambda c: (len(c), c)))


@lru_cache(maxsize=8192)
def cycles_of_length(g: Graph, k: int) -> tuple[Cycle, ...]:
    """All (not necessarily induced) cycles of length ``k``, normalized and sorted."""
    out: list[Cycle] = []
    path: list[int] = []

    def extend(on_path: set[int]) -> None:
        s, last = path[0], path[-1]
        if len(path) == k:
            if g.has_edge(last, s) and path[1] < last:
                out.append(tuple(path))
            return
        for y in g.adjacency[last]:
            if y > s and y not in on_path:
                path.append(y)
                on_path.add(y)
                extend(on_path)
                path.pop()
                on_path.discard(y)

    if k >= 3:
        for s in range(g.n):
            path[:] = [s]
            extend({s})
    return tuple(sorted(out))


@lru_cache(maxsize=8192)
def k_cycles_by_edge(g: Graph, k: int) -> tuple[tuple[Cycle, ...], ...]:
    """For every edge id, the length-``k`` cycles through it."""
    per: list[list[Cycle]] = [[] for _ in range(g.m)]
    for c in cycles_of_length(g, k):
        for e in cycle_edges(g, c):
            per[e].append(c)
    return tuple(tuple(p) for p in per)


def on_k_cycle(g: Graph, e: int, k: int, induced: bool = False) -> bool:
    cycles = k_cycles_by_edge(g, k)[e]
    if not induced:
        return bool(cycles)
    return any(is_chordless(g, c) for c in cycles)


def girth(g: Graph) -> int | None:
    c = find_induced_cycle(g)
    return None if c is None else len(c)


# ---------------------------------------------------------------- families

def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def star(k: int) -> Graph:
    return complete_bipartite(1, k)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def prism() -> Graph:
    """The triangular prism C3 x K2."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def paw() -> Graph:
    """Triangle 0-1-2 with a pendant vertex 3 on 0."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


def double_star(a: int, b: int) -> Graph:
    """Central edge 0-1 with ``a`` leaves on 0 and ``b`` leaves on 1."""
    edges = [(0, 1)] + [(0, 2 + i) for i in range(a)] + [(1, 2 + a + j) for j in range(b)]
    return Graph.from_edges(2 + a + b, edges)
