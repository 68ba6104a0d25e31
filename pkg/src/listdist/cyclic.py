"""Constructive list-distinguishing edge colourings of graphs with a cycle.

Lists are cut to the ``Δ−1`` smallest colours.  The construction has two
phases.

*Starting subgraph.*  A colour (pink) is used to paint a cycle ``C`` plus
possibly a path hanging off it, leaving one blue edge or a blue/green pair
of flanks.  Every other edge touching those vertices gets distinct non-pink
colours.  If some colour's list-subgraph contains a cycle, that cycle is
painted pink except for one blue edge; otherwise pink covers the longest
arc of an induced cycle that stays inside one colour's list-subgraph.

*Growth.*  Repeatedly take the reached vertex closest to the starting
subgraph that still has an uncoloured edge and colour its remaining edges so
that every newly reached vertex is pinned down, and so that no other cycle
of length ``k = |C|`` ends up carrying the starting pattern.  When the new
edges lie on cycles of length ``k`` whose colour could echo the pattern, the
whole cycle is coloured at once by the cycle scheme (pink where listed,
flanks never completing the pattern, then distinct non-pink colours on
everything hanging off the cycle).

The proofs leave many choices open.  Each starting subgraph is tried in a
fixed preference order; within a step, soft preferences are relaxed one at
a time before a step is declared stuck.  A run that gets stuck or fails the
final audit moves on to the next starting subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterator, Sequence

import numpy as np

from .automorphism import AutomorphismGroup, automorphisms, is_distinguishing, preserving_mask
from .errors import (
    ExceptionalGraph, InternalAudit, InvariantViolation, ListTooShort, NotConnected, SchemeStuck,
    Unsupported,
)
from .graph import (
    Graph, analyze, chordless_cycles, cycle_edges, cycles_of_length, distances, find_induced_cycle,
    is_chordless, shortest_path,
)
from .lists import EdgeColouring, ListAssignment, classify_lists, palette_key
from .oracle import exists_distinguishing_from_lists
from .recognizer import K4, K33, classify

T1 = "pink-cycle-one-blue"   # k-1 pink edges and one blue edge
T2 = "pink-arc-two-flanks"   # a pink arc of fixed length between blue and green


@dataclass
class CyclicConfig:
    induced_cycles: bool = False  # read "cycle of length k" as induced cycles only
    debug_invariants: bool = False
    max_starts: int = 256
    repair_budget: int = 20000


@dataclass
class StartSpec:
    case: str
    pink: int
    cycle: tuple[int, ...]          # vertices in traversal order
    path: tuple[int, ...] = ()      # pink path leaving the cycle at path[0]
    u: int = -1
    v: int = -1
    u_plus: int = -1
    arc: tuple[int, ...] = ()       # pink arc of the cycle (vertices), pink-arc starts only
    subcase: str = ""
    blue_rank: int = 0


@dataclass
class Pattern:
    kind: str
    k: int
    run: int
    pink: int
    blue: int
    green: int | None
    gadget: bool
    cycle_edges: tuple[int, ...]

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "k": self.k, "pink_run": self.run, "pink": self.pink, "blue": self.blue,
                "green": self.green, "gadget": self.gadget}


class _Stuck(Exception):
    """A run cannot continue; the engine moves to the next starting subgraph."""


# ---------------------------------------------------------------- choice helper

Check = Callable[[dict[int, int]], bool]


def choose(edges: Sequence[int], options: Sequence[Sequence[int]], soft: Sequence[Check] = (),
           hard: Sequence[Check] = (), distinct: bool = True) -> dict[int, int] | None:
    """First assignment (lexicographic in option order) meeting ``hard`` and as many
    leading ``soft`` checks as possible; soft checks are dropped from the end."""
    edges = list(edges)
    for level in range(len(soft), -1, -1):
        checks = list(hard) + list(soft[:level])
        got = _search(edges, options, checks, distinct)
        if got is not None:
            return got
    return None


def _search(edges: list[int], options: Sequence[Sequence[int]], checks: list[Check],
            distinct: bool) -> dict[int, int] | None:
    chosen: dict[int, int] = {}
    used: set[int] = set()

    def rec(i: int) -> bool:
        if i == len(edges):
            return all(ch(chosen) for ch in checks)
        for c in options[i]:
            if distinct and c in used:
                continue
            chosen[edges[i]] = c
            used.add(c)
            if rec(i + 1):
                return True
            used.discard(c)
            del chosen[edges[i]]
        return False

    return dict(chosen) if rec(0) else None


# ---------------------------------------------------------------- starting subgraphs

def _component(g: Graph, allowed: frozenset[int], start: int) -> set[int]:
    dist = distances(g, [start], allowed)
    return {x for x, d in enumerate(dist) if d is not None}


def pink_cycle_starts(g: Graph, L: ListAssignment, colours: list[int]) -> Iterator[StartSpec]:
    induced = chordless_cycles(g)
    for p in colours:
        hp = frozenset(e for e in range(g.m) if p in L[e])
        for cyc in _cycles_in(g, induced, hp):
            comp = _component(g, hp, cyc[0])
            dist = distances(g, list(cyc), hp)
            roots = sorted((v for v in comp if any(e not in hp for e in g.incident(v))),
                           key=lambda v: (dist[v], v))
            for v in roots:
                path = shortest_path(g, v, set(cyc), hp)
                u = path[-1]
                i = cyc.index(u)
                for u_plus in sorted({cyc[i - 1], cyc[(i + 1) % len(cyc)]}):
                    for rank in range(2):
                        yield StartSpec("pink-cycle", p, cyc, tuple(reversed(path)), u=u, v=v,
                                        u_plus=u_plus, blue_rank=rank)


def _cycles_in(g: Graph, induced: tuple, hp: frozenset[int]) -> Iterator[tuple[int, ...]]:
    """Induced cycles of ``g`` inside ``hp``, then a shortest cycle of ``hp`` if it was not among them."""
    seen = []
    for c in induced:
        if all(e in hp for e in _cycle_edge_ids(g, c)):
            seen.append(c)
            yield c
    short = find_induced_cycle(g, hp)
    if short is not None and short not in seen:
        yield short


@lru_cache(maxsize=1 << 16)
def _cycle_edge_ids(g: Graph, cyc: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(cycle_edges(g, cyc))


@lru_cache(maxsize=4096)
def _k_cycle_index(g: Graph, k: int, induced: bool):
    cycles = cycles_of_length(g, k)
    chosen = tuple(c for c in cycles if is_chordless(g, c)) if induced else cycles
    kcycles = [(c, _cycle_edge_ids(g, c)) for c in chosen]
    per: list[list[int]] = [[] for _ in range(g.m)]
    for idx, (_, es) in enumerate(kcycles):
        for e in es:
            per[e].append(idx)
    all_k = [(c, _cycle_edge_ids(g, c)) for c in cycles]
    return kcycles, [tuple(p) for p in per], all_k


def _arcs(g: Graph, cyc: tuple[int, ...], hp: frozenset[int]) -> list[tuple[int, ...]]:
    """Maximal runs of consecutive cycle edges inside ``hp``, as vertex sequences."""
    k = len(cyc)
    es = _cycle_edge_ids(g, cyc)
    inside = [e in hp for e in es]
    if all(inside):
        return []
    out = []
    start = inside.index(False)
    i = 0
    while i < k:
        j = (start + 1 + i) % k
        if inside[j]:
            run = [j]
            while inside[(run[-1] + 1) % k]:
                run.append((run[-1] + 1) % k)
            out.append(tuple(cyc[(run[0] + t) % k] for t in range(len(run) + 1)))
            i += len(run)
        else:
            i += 1
    return out


def pink_arc_starts(g: Graph, L: ListAssignment, nontrivial: list[int]) -> Iterator[StartSpec]:
    ranked = []
    for cyc in chordless_cycles(g):
        for p in nontrivial:
            hp = frozenset(e for e in range(g.m) if p in L[e])
            arcs = _arcs(g, cyc, hp)
            if not arcs:
                continue
            best = max(len(a) for a in arcs)
            for arc in arcs:
                if len(arc) != best:
                    continue
                ext = []
                for end in (arc[0], arc[-1]):
                    if any(e in hp and g.other(e, end) not in cyc for e in g.incident(end)):
                        ext.append(end)
                ranked.append(((-(len(arc) - 1), -int(bool(ext)), len(cyc), cyc, p, arc), p, cyc, arc, ext))
    ranked.sort(key=lambda r: r[0])
    for _, p, cyc, arc, ext in ranked:
        ends = ext or [arc[0]]
        for u in ends:
            v = arc[-1] if u == arc[0] else arc[0]
            a = arc if u == arc[0] else tuple(reversed(arc))
            for rank in range(2):
                yield StartSpec("pink-arc", p, cyc, (), u=u, v=v, arc=a, blue_rank=rank)


# ---------------------------------------------------------------- one run

class _Run:
    def __init__(self, g: Graph, L: ListAssignment, group: AutomorphismGroup, cfg: CyclicConfig,
                 trace: list | None) -> None:
        self.g, self.L, self.group, self.cfg = g, L, group, cfg
        self.trace = trace
        self.col: list[int | None] = [None] * g.m
        self.opts = [sorted(L[e]) for e in range(g.m)]
        self.step = 0
        self.pattern: Pattern | None = None
        self.g0_edges: set[int] = set()
        self.g0_vertices: set[int] = set()
        self.repairs = 0

    # -- basics

    def log(self, rule: str, vertex: int | None, edges: dict[int, int], **extra: Any) -> None:
        if self.trace is None:
            return
        g = self.g
        self.trace.append({"step": self.step, "vertex": vertex, "rule": rule,
                           "colours": {f"{g.edges[e][0]}-{g.edges[e][1]}": c for e, c in sorted(edges.items())},
                           **extra})

    def paint(self, assignment: dict[int, int]) -> None:
        for e, c in assignment.items():
            self.col[e] = c

    def uncoloured(self, v: int) -> list[int]:
        return [e for e in self.g.incident(v) if self.col[e] is None]

    def nonpink(self, e: int) -> list[int]:
        p = self.pattern.pink
        return [c for c in self.opts[e] if c != p]

    def set_k(self, k: int) -> None:
        self.k = k
        self.kcycles, self.kcyc_by_edge, self.all_k = _k_cycle_index(self.g, k, self.cfg.induced_cycles)

    def on_k(self, e: int) -> bool:
        return bool(self.kcyc_by_edge[e])

    # -- pattern recognition

    def matches(self, cyc: tuple[int, ...], es: tuple[int, ...], col: Sequence[int | None],
                gadget: bool) -> bool:
        pat = self.pattern
        seq = [col[e] for e in es]
        if any(c is None for c in seq):
            return False
        k = len(seq)
        pink = pat.pink
        if pat.kind == T1:
            if seq.count(pink) != k - 1:
                return False
            j = next(i for i, c in enumerate(seq) if c != pink)
            if seq[j] != pat.blue:
                return False
            if not gadget:
                return True
            return any(self._has_gadget(x, es, col) for x in (cyc[j], cyc[(j + 1) % k]))
        # T2: maximal pink run of length pat.run flanked by blue and green
        if seq.count(pink) == k:
            return False
        for i in range(k):
            if seq[i] == pink or seq[(i + 1) % k] != pink:
                continue
            j = (i + 1) % k
            run = 0
            while seq[j] == pink:
                run += 1
                j = (j + 1) % k
            if run != pat.run or {seq[i], seq[j]} != {pat.blue, pat.green}:
                continue
            if not gadget:
                return True
            # blue side end of the run
            end = cyc[(i + 1) % k] if seq[i] == pat.blue else cyc[j]
            if self._has_gadget(end, es, col):
                return True
        return False

    def _has_gadget(self, x: int, es: tuple[int, ...], col: Sequence[int | None]) -> bool:
        on = set(es)
        return any(col[e] == self.pattern.pink and e not in on for e in self.g.incident(x))

    def no_copy(self, trial: dict[int, int]) -> bool:
        """Soft check: the trial assignment completes no k-cycle carrying the pattern (gadget ignored)."""
        if self.pattern is None:
            return True
        col = self.col
        base = self.pattern.cycle_edges
        seen = set()
        for e in trial:
            for idx in self.kcyc_by_edge[e]:
                if idx in seen:
                    continue
                seen.add(idx)
                cyc, es = self.kcycles[idx]
                if set(es) == set(base):
                    continue
                view = _Overlay(col, trial)
                if self.matches(cyc, es, view, gadget=False):
                    return False
        return True

    # -- invariants

    def check_invariants(self) -> None:
        """Debug assertions, recomputed element by element rather than through the group arrays."""
        if not self.cfg.debug_invariants:
            return
        g = self.g
        col = self.col
        g0 = self.g0_edges
        reached = [v for v in range(g.n) if any(col[e] is not None for e in g.incident(v))]
        for a in self.group:
            img = [g.edge_id(a(x), a(y)) for x, y in g.edges]
            if {img[e] for e in g0} != g0 or any(col[img[e]] != col[e] for e in range(g.m)):
                continue
            moved = [v for v in reached if a(v) != v]
            if moved:
                raise InvariantViolation(f"step {self.step}: reached vertices {moved} are not fixed",
                                         invariant="reached-fixed", step=self.step, vertices=moved)
        pink = self.pattern.pink
        for x in range(g.n):
            if x in self.g0_vertices:
                continue
            coloured = [e for e in g.incident(x) if col[e] is not None]
            if len(coloured) == 1 and col[coloured[0]] == pink and self.on_k(coloured[0]):
                raise InvariantViolation(f"step {self.step}: lone pink edge at {x} lies on a {self.k}-cycle",
                                         invariant="lone-pink", step=self.step, vertex=x)

    # -- starting subgraph

    def start(self, spec: StartSpec) -> None:
        g = self.g
        cyc = spec.cycle
        self.set_k(len(cyc))
        ces = _cycle_edge_ids(g, cyc)
        if spec.case == "pink-cycle":
            self._start_pink_cycle(spec, ces)
        else:
            self._start_pink_arc(spec, ces)
        self.g0_vertices = set(cyc) | set(spec.path) | set(spec.arc)
        core = set(self.g0_vertices)
        self.g0_edges = {e for e in range(g.m) if set(g.edges[e]) & core}
        for x in core:
            for e in g.incident(x):
                self.g0_vertices.add(g.other(e, x))
        if any(self.col[e] is None for e in self.g0_edges):
            raise AssertionError("starting subgraph left uncoloured")
        stab = np.zeros(g.m, dtype=bool)
        stab[list(self.g0_edges)] = True
        self.stab_mask = (stab[self.group.edge_perms] == stab).all(axis=1)
        self.dist0 = distances(g, sorted(core))
        if not self.reached_fixed() or self.copies_near(range(g.m)):
            raise _Stuck("starting subgraph colouring does not pin down the starting subgraph")
        self.check_invariants()

    def _pick(self, e: int, avoid: set[int], rank: int) -> int:
        cands = [c for c in self.opts[e] if c not in avoid]
        if not cands:
            raise _Stuck(f"no colour for edge {self.g.edges[e]}")
        return cands[min(rank, len(cands) - 1)]

    def _colour_vertex_edges(self, x: int, soft: Sequence[Check] = (), hard: Sequence[Check] = (),
                             rule: str = "start-distinct") -> None:
        es = self.uncoloured(x)
        if not es:
            return
        opts = [self.nonpink(e) for e in es]
        got = choose(es, opts, [self.no_copy, *soft], hard)
        if got is None:
            raise _Stuck(f"no distinct non-pink colours at vertex {x}")
        self.paint(got)
        self.log(rule, x, got)

    def _start_pink_cycle(self, spec: StartSpec, ces: tuple[int, ...]) -> None:
        g = self.g
        pink, u, v, up = spec.pink, spec.u, spec.v, spec.u_plus
        blue_edge = g.edge_id(u, up)
        blue = self._pick(blue_edge, {pink}, spec.blue_rank)
        path_edges = [g.edge_id(a, b) for a, b in zip(spec.path, spec.path[1:])]
        gadget = bool(path_edges)
        self.pattern = Pattern(T1, len(spec.cycle), len(spec.cycle) - 1, pink, blue, None, gadget, ces)
        first = {e: pink for e in ces if e != blue_edge}
        first.update({e: pink for e in path_edges})
        first[blue_edge] = blue
        self.paint(first)
        self.log("start-pink-cycle", u, first, v=v, u_plus=up)
        # does some automorphism move the painted cycle-with-path onto itself non-trivially?
        painted = np.full(g.m, -1, dtype=np.int64)
        for e, c in first.items():
            painted[e] = c
        keep = (painted[self.group.edge_perms] == painted).all(axis=1)
        verts = sorted(set(spec.cycle) | set(spec.path))
        moves = (self.group.perms[keep][:, verts] != np.asarray(verts)).any()
        order = [x for x in list(spec.cycle) + list(spec.path) if x != v]
        for x in dict.fromkeys(order):
            self._colour_vertex_edges(x)
        if moves and v != up:
            def differ(trial: dict[int, int]) -> bool:
                view = _Overlay(self.col, trial)
                return palette_key(g, view, v) != palette_key(g, view, up)
            self._colour_vertex_edges(v, hard=[differ], rule="start-split-palette")
        else:
            self._colour_vertex_edges(v)

    def _start_pink_arc(self, spec: StartSpec, ces: tuple[int, ...]) -> None:
        g = self.g
        pink, u, v, arc, cyc = spec.pink, spec.u, spec.v, spec.arc, spec.cycle
        k = len(cyc)
        hp = frozenset(e for e in range(g.m) if pink in self.L[e])
        arc_edges = [g.edge_id(a, b) for a, b in zip(arc, arc[1:])]
        # gadget and tail: greedy pink path leaving the cycle at u
        tail = [u]
        seen = set(cyc)
        while True:
            x = tail[-1]
            nxt = [y for y, e in zip(g.adjacency[x], g.incident(x)) if e in hp and y not in seen]
            if not nxt:
                break
            seen.add(nxt[0])
            tail.append(nxt[0])
        tail_edges = [g.edge_id(a, b) for a, b in zip(tail, tail[1:])]
        spec.path = tuple(tail)
        gadget = bool(tail_edges)
        rest = [e for e in ces if e not in arc_edges]
        first = {e: pink for e in arc_edges + tail_edges}
        self.paint(first)
        i = cyc.index(u)
        nb = [cyc[i - 1], cyc[(i + 1) % k]]
        u_minus = next(y for y in nb if y != arc[1])
        j = cyc.index(v)
        nbv = [cyc[j - 1], cyc[(j + 1) % k]]
        v_plus = next(y for y in nbv if y != arc[-2])
        if len(rest) >= 2:
            spec.subcase = "two-flanks"
            e_blue, e_green = g.edge_id(u, u_minus), g.edge_id(v, v_plus)
            blue = self._pick(e_blue, {pink}, spec.blue_rank)
            green = self._pick(e_green, {pink, blue}, 0)
            self.pattern = Pattern(T2, k, len(arc_edges), pink, blue, green, gadget, ces)
            self.paint({e_blue: blue, e_green: green})
            self.log("start-pink-arc", u, {**first, e_blue: blue, e_green: green}, v=v)
            for x in dict.fromkeys(list(arc) + tail):
                self._colour_vertex_edges(x)
            # cycle scheme from v through v_plus round to u
            order = list(cyc[j:]) + list(cyc[:j])
            if order[1] != v_plus:
                order = [order[0]] + order[1:][::-1]
            self.cycle_scheme(tuple(order), rule="start-scheme")
            return
        e_uv = rest[0]
        if g.degree(u) == 2 and g.degree(v) == 2:
            spec.subcase = "degree-two-ends"
            u_plus = arc[1]
            e_up = g.edge_id(u, u_plus)
            blue = self._pick(e_up, {pink}, spec.blue_rank)
            green = self._pick(e_uv, {pink, blue}, 0)
            self.pattern = Pattern(T2, k, len(arc_edges) - 1, pink, blue, green, False, ces)
            self.paint({e_up: blue, e_uv: green})
            self.log("start-recolour-flank", u, {**first, e_up: blue, e_uv: green}, v=v)
        else:
            spec.subcase = "one-flank"
            blue = self._pick(e_uv, {pink}, spec.blue_rank)
            self.pattern = Pattern(T1, k, k - 1, pink, blue, None, gadget, ces)
            self.paint({e_uv: blue})
            self.log("start-one-flank", u, {**first, e_uv: blue}, v=v)
            for x in tail[1:]:
                self._colour_vertex_edges(x)
            self._colour_vertex_edges(u)

            def differ(trial: dict[int, int]) -> bool:
                view = _Overlay(self.col, trial)
                return palette_key(g, view, u) != palette_key(g, view, v)
            self._colour_vertex_edges(v, hard=[differ], rule="start-split-palette")
        for x in dict.fromkeys(list(cyc) + tail):
            self.second_pass_vertex(x, cyc, None)

    # -- cycle scheme

    def cycle_scheme(self, order: tuple[int, ...], rule: str = "cycle-scheme") -> None:
        """Colour the cycle ``order`` (first pass) and everything hanging off it (second pass)."""
        g = self.g
        pat = self.pattern
        k = len(order)
        es = [g.edge_id(order[i], order[(i + 1) % k]) for i in range(k)]
        fresh = set()
        for i, e in enumerate(es):
            if self.col[e] is not None:
                continue
            remaining = [f for f in es if self.col[f] is None]
            cands: list[int] = []
            if pat.pink in self.L[e]:
                cands.append(pat.pink)
            cands += [c for c in self.opts[e] if c != pat.pink]

            def ok(c: int, e=e, remaining=remaining) -> bool:
                trial = {e: c}
                if len(remaining) == 1 and c == pat.pink and self._two_runs(es, trial):
                    return False
                return not self._completes_flanks(es, i, c) and self.no_copy(trial)

            pick = next((c for c in cands if ok(c)), None)
            if pick is None:
                pick = next((c for c in cands if self.no_copy({e: c})), cands[0])
            self.col[e] = pick
            fresh.add(e)
        self.log(rule, order[0], {e: self.col[e] for e in es if e in fresh}, cycle=list(order))
        for i, x in enumerate(order):
            self.second_pass_vertex(x, order, es[i] if es[i] in fresh else None, nxt=es[i])

    def _two_runs(self, es: list[int], trial: dict[int, int]) -> bool:
        seq = [trial.get(e, self.col[e]) for e in es]
        pink = self.pattern.pink
        nonpink = sum(1 for c in seq if c != pink)
        runs = _pink_runs(seq, pink)
        return nonpink == 2 and len(runs) == 2 and all(r == self.pattern.run for r in runs)

    def _completes_flanks(self, es: list[int], i: int, c: int) -> bool:
        """Would colour ``c`` on ``es[i]`` close a pink run of the pattern length between both flanks?"""
        pat = self.pattern
        k = len(es)
        run = 0
        j = (i - 1) % k
        while self.col[es[j]] == pat.pink and run < k:
            run += 1
            j = (j - 1) % k
        if pat.kind == T1:
            return run == k - 1 and c == pat.blue
        if run != pat.run:
            return False
        before = self.col[es[j]]
        return {before, c} == {pat.blue, pat.green}

    def second_pass_vertex(self, x: int, cyc: Sequence[int], recolourable: int | None,
                           nxt: int | None = None) -> None:
        es = self.uncoloured(x)
        if not es:
            return
        pat = self.pattern
        next_col = None if nxt is None else self.col[nxt]
        soft: list[Check] = []
        if next_col is not None and next_col != pat.pink:
            soft.append(lambda t, c=next_col: c not in t.values())
        comp = self._complementary_flank(x, cyc)
        if comp is not None:
            soft.append(lambda t, c=comp: c not in t.values())
        opts = [self.nonpink(e) for e in es]
        got = choose(es, opts, [self.no_copy, *soft])
        if got is None:
            raise _Stuck(f"second pass stuck at vertex {x}")
        if comp is not None and comp in got.values() and recolourable is not None and comp in self.L[recolourable]:
            trial = {recolourable: comp}
            if self.no_copy(trial):
                self.col[recolourable] = comp
                self.log("scheme-move-flank", x, trial)
        self.paint(got)
        self.log("scheme-second-pass", x, got)

    def _complementary_flank(self, x: int, cyc: Sequence[int]) -> int | None:
        """If ``x`` ends a pink run of the pattern length on ``cyc``, the flank colour missing on the far side."""
        pat = self.pattern
        if pat.kind != T2:
            return None
        g = self.g
        k = len(cyc)
        if x not in cyc:
            return None
        es = [g.edge_id(cyc[i], cyc[(i + 1) % k]) for i in range(k)]
        i = list(cyc).index(x)
        for step in (1, -1):
            # walk the run starting at x in direction step
            first = es[i] if step == 1 else es[i - 1]
            if self.col[first] != pat.pink:
                continue
            run, j = 0, i
            while run < k:
                e = es[j] if step == 1 else es[j - 1]
                if self.col[e] != pat.pink:
                    break
                run += 1
                j = (j + step) % k
            if run != pat.run:
                continue
            far = es[j] if step == 1 else es[j - 1]
            if self.col[far] == pat.blue:
                return pat.green
            if self.col[far] == pat.green:
                return pat.blue
        return None

    # -- growth

    def grow(self) -> None:
        g = self.g
        while True:
            todo = [v for v in range(g.n)
                    if any(self.col[e] is not None for e in g.incident(v)) and self.uncoloured(v)]
            if not todo:
                break
            v = min(todo, key=lambda x: (self.dist0[x], x))
            self.step += 1
            snap = list(self.col)
            mark = len(self.trace) if self.trace is not None else 0
            try:
                self.process(v)
                good = self.step_ok(snap)
            except _Stuck:
                good = False
            if not good:
                touched = [e for e in range(g.m) if snap[e] is None and self.col[e] is not None]
                touched = sorted(set(touched) | {e for e in g.incident(v) if snap[e] is None})
                primary = {e: self.col[e] for e in touched if self.col[e] is not None}
                self.col = snap
                if self.trace is not None:
                    del self.trace[mark:]
                self.repair(v, touched, primary)
            self.check_invariants()
        if any(c is None for c in self.col):
            raise _Stuck("uncoloured edges left after growth")

    def reached_fixed(self) -> bool:
        g = self.g
        mask = self.stab_mask & preserving_mask(self.group, self.col)
        if mask.sum() == 1:
            return True
        reached = [v for v in range(g.n) if any(self.col[e] is not None for e in g.incident(v))]
        perms = self.group.perms[mask][:, reached]
        return bool((perms == np.asarray(reached)).all())

    def lone_pink_ok(self, edges: Sequence[int]) -> bool:
        g = self.g
        pink = self.pattern.pink
        for e in edges:
            if self.col[e] != pink or not self.on_k(e):
                continue
            for x in g.edges[e]:
                if x in self.g0_vertices:
                    continue
                if sum(1 for f in g.incident(x) if self.col[f] is not None) == 1:
                    return False
        return True

    def copies_near(self, edges: Sequence[int]) -> bool:
        """Does any k-cycle through (or touching a pink end of) the given edges now carry the pattern?"""
        g = self.g
        pink = self.pattern.pink
        base = set(self.pattern.cycle_edges)
        idxs: set[int] = set()
        for e in edges:
            idxs.update(self.kcyc_by_edge[e])
            if self.col[e] == pink and self.pattern.gadget:
                for x in g.edges[e]:
                    for f in g.incident(x):
                        idxs.update(self.kcyc_by_edge[f])
        for idx in idxs:
            cyc, es = self.kcycles[idx]
            if set(es) != base and self.matches(cyc, es, self.col, gadget=self.pattern.gadget):
                return True
        return False

    def step_ok(self, snap: Sequence[int | None]) -> bool:
        new = [e for e in range(self.g.m) if snap[e] is None and self.col[e] is not None]
        return self.reached_fixed() and self.lone_pink_ok(new) and not self.copies_near(new)

    def repair(self, v: int, edges: list[int], primary: dict[int, int]) -> None:
        """Search colourings of ``edges`` (literal choice first) that keep the growth invariants."""
        opts = []
        for e in edges:
            first = primary.get(e)
            opts.append(([first] if first is not None else []) + [c for c in self.opts[e] if c != first])
        snap = list(self.col)
        budget = self.cfg.repair_budget
        col = self.col

        def rec(i: int) -> bool:
            nonlocal budget
            if i == len(edges):
                budget -= 1
                return self.step_ok(snap)
            for c in opts[i]:
                if budget <= 0:
                    return False
                col[edges[i]] = c
                if rec(i + 1):
                    return True
            col[edges[i]] = None
            return False

        if not rec(0):
            self.col[:] = snap
            raise _Stuck(f"no colouring of the edges at {v} keeps the growth invariants")
        self.repairs += 1
        self.log("repair", v, {e: self.col[e] for e in edges}, literal={f"{self.g.edges[e][0]}-{self.g.edges[e][1]}": c
                                                                         for e, c in sorted(primary.items())})

    def process(self, v: int) -> None:
        g = self.g
        pat = self.pattern
        pink = pat.pink
        reached = [any(self.col[e] is not None for e in g.incident(x)) for x in range(g.n)]
        open_edges = self.uncoloured(v)
        back = [e for e in g.incident(v) if self.col[e] is not None]
        horizontal = [e for e in open_edges if reached[g.other(e, v)]]
        forward = [e for e in open_edges if not reached[g.other(e, v)]]
        on_k = [e for e in forward if self.on_k(e)]

        def colour_plain(pink_ok: set[int], rule: str) -> None:
            edges = forward + horizontal
            opts = []
            for e in forward:
                tail = [pink] if pink in self.L[e] and e in pink_ok else []
                opts.append([c for c in self.opts[e] if c != pink] + tail)
            for e in horizontal:
                opts.append(self.nonpink(e))
            # horizontal edges may repeat forward colours; only forward edges must be distinct
            fwd = set(forward)

            def distinct_fwd(t: dict[int, int]) -> bool:
                cs = [t[e] for e in forward]
                return len(set(cs)) == len(cs)

            def no_pink(t: dict[int, int]) -> bool:
                return all(t[e] != pink for e in forward)

            got = choose(edges, opts, [self.no_copy, no_pink], [distinct_fwd], distinct=False)
            if got is None:
                raise _Stuck(f"cannot colour edges at {v}")
            self.paint(got)
            self.log(rule, v, got, forward=[list(g.edges[e]) for e in forward if e in fwd])

        if not on_k:
            colour_plain(set(forward), "no-k-cycle")
            return
        all_on_k = len(on_k) == len(forward)
        same_lists = len({self.L[e] for e in forward}) == 1 and all(pink in self.L[e] for e in forward)
        full_fan = len(forward) == g.max_degree - 1
        if not (all_on_k and same_lists and full_fan):
            allowed = set() if not (same_lists and full_fan) else {e for e in forward if not self.on_k(e)}
            colour_plain(allowed, "conditions-fail")
            return
        self.colour_through_cycle(v, back, forward)

    def colour_through_cycle(self, v: int, back: list[int], forward: list[int]) -> None:
        g = self.g
        pat = self.pattern
        pink, blue = pat.pink, pat.blue
        fset = set(forward)
        cands = []
        for e in forward:
            for idx in self.kcyc_by_edge[e]:
                cyc, es = self.kcycles[idx]
                at_v = [f for f in es if v in g.edges[f]]
                if not all(f in fset or f in back for f in at_v):
                    continue
                via_back = any(f in back for f in at_v)
                cands.append((not is_chordless(g, cyc), not via_back, cyc, es, at_v))
        if not cands:
            raise _Stuck(f"no usable {self.k}-cycle at {v}")
        cands.sort(key=lambda t: t[:3])
        _, _, cyc, es, at_v = cands[0]
        k = len(cyc)
        i = cyc.index(v)
        order = cyc[i:] + cyc[:i]
        if any(f in back for f in at_v):
            b = next(f for f in at_v if f in back)
            if g.edge_id(order[0], order[-1]) != b:
                order = (order[0],) + tuple(reversed(order[1:]))
            self.log("cycle-through-back-edge", v, {}, cycle=list(order))
            self.cycle_scheme(order)
            return
        e1, e2 = sorted(at_v)
        off = [e for e in forward if e not in (e1, e2)]
        both_pb = g.max_degree == 3 and self.L[e1] == self.L[e2] == frozenset({pink, blue})
        first: dict[int, int] = {}
        if off:
            got = choose(off, [[c for c in self.opts[e] if c not in (pink, blue)] or self.nonpink(e) for e in off],
                         [self.no_copy])
            if got is None:
                raise _Stuck(f"off-cycle forward edges at {v}")
            first.update(got)
        if not both_pb:
            other = [c for c in self.opts[e2] if c not in (pink, blue)]
            if pink not in self.L[e1] or not other:
                e1, e2 = e2, e1
                other = [c for c in self.opts[e2] if c not in (pink, blue)]
            if pink not in self.L[e1] or not other:
                raise _Stuck(f"cannot split the two cycle edges at {v}")
            first[e1] = pink
            first[e2] = other[0]
            self.paint(first)
            self.log("cycle-two-forward", v, first, cycle=list(order))
            far = g.other(e1, v)
            if order[1] != far:
                order = (order[0],) + tuple(reversed(order[1:]))
            self.cycle_scheme(order)
            return
        # Δ = 3 and both lists are {pink, blue}: pink both ways as far as possible
        first[e1] = first[e2] = pink
        self.paint(first)
        seq = [g.edge_id(order[j], order[(j + 1) % k]) for j in range(k)]
        left, right = 0, k - 1
        while left + 1 < right and self.col[seq[left + 1]] is None and pink in self.L[seq[left + 1]]:
            left += 1
            self.col[seq[left]] = pink
        while right - 1 > left and self.col[seq[right - 1]] is None and pink in self.L[seq[right - 1]]:
            right -= 1
            self.col[seq[right]] = pink
        nexts = [seq[j] for j in {left + 1, right - 1} if left < j < right and self.col[seq[j]] is None]
        if nexts:
            opts = [self.nonpink(e) for e in nexts]

            def not_all_blue(t: dict[int, int]) -> bool:
                return any(c != blue for c in t.values())
            got = choose(nexts, opts, [self.no_copy], [not_all_blue], distinct=False)
            if got is None:
                raise _Stuck(f"pink-blue cycle edges at {v}")
            self.paint(got)
        self.log("cycle-pink-both-ways", v, {e: self.col[e] for e in seq if self.col[e] is not None},
                 cycle=list(order))
        self.cycle_scheme(order)

    # -- audit

    def audit(self) -> None:
        base = set(self.pattern.cycle_edges)
        for cyc, es in self.all_k:
            if set(es) == base:
                continue
            if self.matches(cyc, es, self.col, gadget=self.pattern.gadget):
                raise InternalAudit(f"second copy of the starting pattern on cycle {list(cyc)}",
                                    cycle=list(cyc))


class _Overlay:
    """Read-only view of a colouring with some trial assignments on top."""

    def __init__(self, base: list[int | None], trial: dict[int, int]) -> None:
        self.base, self.trial = base, trial

    def __getitem__(self, e: int) -> int | None:
        return self.trial.get(e, self.base[e])

    def __len__(self) -> int:
        return len(self.base)


def _pink_runs(seq: list[int | None], pink: int) -> list[int]:
    k = len(seq)
    if all(c == pink for c in seq):
        return [k]
    start = next(i for i, c in enumerate(seq) if c != pink)
    runs, cur = [], 0
    for t in range(1, k + 1):
        c = seq[(start + t) % k]
        if c == pink:
            cur += 1
        elif cur:
            runs.append(cur)
            cur = 0
    return runs


# ---------------------------------------------------------------- engine

@dataclass
class CyclicResult:
    colouring: EdgeColouring
    pattern: dict[str, Any] | None
    start: dict[str, Any]
    starts_tried: int
    repairs: int = 0
    trace: list = field(default_factory=list)


def check_cyclic_input(g: Graph, L: ListAssignment) -> int:
    s = analyze(g)
    if not s.connected:
        raise NotConnected("graph is not connected")
    if s.is_tree:
        raise Unsupported("graph is a tree; use the tree engine")
    delta = s.max_degree
    if delta < 3:
        raise Unsupported(f"maximum degree {delta} < 3", delta=delta)
    cls = classify(g)
    if cls.tag in (K4, K33):
        raise ExceptionalGraph(f"{cls.tag} needs lists of size {delta}", graph_class=cls.tag,
                               required_list_size=delta)
    if len(L) != g.m:
        raise ValueError(f"{len(L)} lists for {g.m} edges")
    if L.min_size < delta - 1:
        raise ListTooShort(f"lists must have size at least {delta - 1}", required=delta - 1)
    return delta


def colour_cyclic_detailed(g: Graph, L: ListAssignment, group: AutomorphismGroup | None = None,
                           config: CyclicConfig | None = None, trace: list | None = None) -> CyclicResult:
    cfg = config or CyclicConfig()
    delta = check_cyclic_input(g, L)
    Lt = L.truncate(delta - 1)
    group = automorphisms(g) if group is None else group
    info = classify_lists(g, Lt)
    if info.all_identical:
        rep = exists_distinguishing_from_lists(g, group, Lt)
        if not rep.feasible:
            raise InternalAudit("identical lists of size Δ−1 admit no distinguishing colouring")
        if trace is not None:
            trace.append({"step": 0, "vertex": None, "rule": "identical-lists-search",
                          "colourings_examined": rep.colourings_examined})
        return CyclicResult(rep.witness, None, {"case": "identical-lists"}, 0, 0, trace or [])

    if info.cyclic_nontrivial_colours:
        starts: Iterator[StartSpec] = pink_cycle_starts(g, Lt, info.cyclic_nontrivial_colours)
    else:
        starts = pink_arc_starts(g, Lt, info.nontrivial_colours)
    last: Exception | None = None
    tried = 0
    for spec in starts:
        if tried >= cfg.max_starts:
            break
        tried += 1
        local: list | None = [] if trace is not None else None
        run = _Run(g, Lt, group, cfg, local)
        try:
            run.start(spec)
            run.grow()
            run.audit()
        except (_Stuck, InternalAudit) as exc:
            last = exc
            continue
        if not is_distinguishing(g, group, run.col):
            last = InternalAudit("construction finished but the colouring is not distinguishing")
            continue
        if trace is not None:
            trace.extend(local)
        start = {"case": spec.case, "subcase": spec.subcase, "pink": spec.pink, "cycle": list(spec.cycle),
                 "path": list(spec.path), "u": spec.u, "v": spec.v}
        return CyclicResult(EdgeColouring(tuple(run.col)), run.pattern.to_json(), start, tried, run.repairs,
                            trace or [])
    if isinstance(last, InternalAudit):
        raise InternalAudit(f"all {tried} starting subgraphs failed; last: {last}", starts_tried=tried)
    raise SchemeStuck(f"all {tried} starting subgraphs got stuck; last: {last}", starts_tried=tried)


def colour_cyclic(g: Graph, L: ListAssignment, group: AutomorphismGroup | None = None,
                  config: CyclicConfig | None = None, trace: list | None = None) -> EdgeColouring:
    return colour_cyclic_detailed(g, L, group, config, trace).colouring
