"""Dispatch a (graph, lists) instance to the right engine and verify the result."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .automorphism import DEFAULT_VERTEX_CAP, AutomorphismGroup, automorphisms, is_distinguishing
from .cyclic import CyclicConfig, colour_cyclic_detailed
from .errors import ExceptionalGraph, ExceptionalTree, InternalAudit, TooLarge, Unsupported
from .graph import Graph
from .lists import EdgeColouring, ListAssignment
from .recognizer import CYCLE, K4, K33, classify, required_list_size
from .trees import colour_tree, tree_colouring_is_distinguishing


@dataclass
class ColourReport:
    colouring: EdgeColouring
    graph_class: str
    engine: str
    verified_by: str
    details: dict[str, Any] = field(default_factory=dict)
    trace: list = field(default_factory=list)

    def to_json(self, g: Graph) -> dict[str, Any]:
        out = {
            "graph": {"n": g.n, "m": g.m},
            "class": self.graph_class,
            "engine": self.engine,
            "colouring": self.colouring.to_json(g)["edges"],
            "verified": True,
            "verified_by": self.verified_by,
            **self.details,
        }
        if self.trace:
            out["trace"] = self.trace
        return out


def verify(g: Graph, c: EdgeColouring, L: ListAssignment | None = None,
           group: AutomorphismGroup | None = None, cap: int = DEFAULT_VERTEX_CAP) -> str:
    """Independent check of a finished colouring; returns the route used, raises on failure."""
    if not c.is_total:
        raise InternalAudit("colouring is not total")
    if L is not None and not c.respects(L):
        bad = [list(g.edges[e]) for e, col in enumerate(c) if col not in L[e]]
        raise InternalAudit("colouring leaves the lists", edges=bad)
    try:
        group = automorphisms(g, cap=cap) if group is None else group
    except TooLarge:
        if g.m == g.n - 1:
            if tree_colouring_is_distinguishing(g, c.colours):
                return "tree-signatures"
            raise InternalAudit("tree colouring is not distinguishing")
        raise
    if not is_distinguishing(g, group, c.colours):
        raise InternalAudit("colouring is not distinguishing")
    return "automorphism-group"


def colour_graph(g: Graph, L: ListAssignment, config: CyclicConfig | None = None,
                 group: AutomorphismGroup | None = None, trace: bool = False,
                 cap: int = DEFAULT_VERTEX_CAP) -> ColourReport:
    cls = classify(g)
    if cls.tag in (K4, K33, CYCLE):
        need = required_list_size(cls)
        raise ExceptionalGraph(f"{cls.label()} is exceptional; lists of size {need.k} are needed",
                               graph_class=cls.label(), hint=f"required_list_size = {need.k}",
                               required_list_size=need.k)
    if cls.exceptional:
        raise ExceptionalTree(f"{cls.label()} is exceptional; lists of size {cls.delta} are needed",
                              graph_class=cls.label(), hint=f"required_list_size = {cls.delta}",
                              required_list_size=cls.delta)
    if cls.delta < 3:
        raise Unsupported(f"maximum degree {cls.delta} < 3 is outside both engines", graph_class=cls.label())
    steps: list | None = [] if trace else None
    if cls.is_tree:
        col = colour_tree(g, L, steps)
        report = ColourReport(col, cls.label(), "tree", "", {}, steps or [])
    else:
        group = automorphisms(g, cap=cap) if group is None else group
        res = colour_cyclic_detailed(g, L, group, config, steps)
        report = ColourReport(res.colouring, cls.label(), "cyclic", "",
                              {"start": res.start, "pattern": res.pattern, "starts_tried": res.starts_tried,
                               "repairs": res.repairs}, steps or [])
    report.verified_by = verify(g, report.colouring, L, group, cap)
    return report
