"""Corpus property suites: every graph of a size range under seeded random lists.

A suite instance is a (graph, lists) pair.  Cyclic suites cover connected
non-tree graphs with Δ ≥ 3 other than K4 and K33; tree suites cover trees with
Δ in {3, 4} that the recognizer does not flag as exceptional.  Each graph gets
``seeds`` random assignments of size Δ−1 from a universe of 2Δ colours, plus
the one-off-identical assignment.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Iterator

from .automorphism import AutomorphismGroup, automorphisms
from .corpus import load_corpus
from .cyclic import CyclicConfig
from .errors import ListDistError
from .graph import Graph
from .lists import ListAssignment, generate_lists
from .oracle import exists_distinguishing_from_lists
from .recognizer import classify
from .solve import colour_graph


@dataclass
class SuiteConfig:
    kind: str  # "cyclic" or "trees"
    sizes: tuple[int, ...]
    seeds: int = 20
    one_off: bool = True
    debug_invariants: bool = False
    check_oracle: bool = False


@dataclass
class SuiteResult:
    graphs: int = 0
    runs: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    oracle_disagreements: list[dict[str, Any]] = field(default_factory=list)
    invariant_violations: int = 0
    repaired: int = 0
    seconds: float = 0.0
    oracle_seconds: float = 0.0

    def summary(self) -> dict[str, Any]:
        return {"graphs": self.graphs, "runs": self.runs, "failures": len(self.failures),
                "oracle_disagreements": len(self.oracle_disagreements),
                "invariant_violations": self.invariant_violations, "repaired": self.repaired,
                "seconds": round(self.seconds, 1), "oracle_seconds": round(self.oracle_seconds, 1)}


def in_suite(kind: str, g: Graph) -> bool:
    cls = classify(g)
    if kind == "cyclic":
        return not cls.is_tree and g.max_degree >= 3 and cls.tag not in ("K4", "K33") and g.n >= 4
    return cls.is_tree and g.max_degree in (3, 4) and not cls.exceptional


def suite_graphs(cfg: SuiteConfig) -> Iterator[Graph]:
    corpus = "connected" if cfg.kind == "cyclic" else "trees"
    for n in cfg.sizes:
        for g in load_corpus(corpus, n):
            if in_suite(cfg.kind, g):
                yield g


def suite_lists(g: Graph, cfg: SuiteConfig) -> Iterator[tuple[str, int, ListAssignment]]:
    d = g.max_degree
    for s in range(cfg.seeds):
        yield "random", s, generate_lists(g, d - 1, 2 * d, s)
    if cfg.one_off:
        yield "one-off-identical", 0, generate_lists(g, d - 1, 2 * d, 0, "one-off-identical")


def run_suite(cfg: SuiteConfig, progress: bool = False) -> SuiteResult:
    res = SuiteResult()
    engine_cfg = CyclicConfig(debug_invariants=cfg.debug_invariants)
    for g in suite_graphs(cfg):
        res.graphs += 1
        group: AutomorphismGroup = automorphisms(g)
        for mode, seed, L in suite_lists(g, cfg):
            res.runs += 1
            t = time.perf_counter()
            try:
                rep = colour_graph(g, L, engine_cfg, group)
            except ListDistError as exc:
                res.seconds += time.perf_counter() - t
                if exc.kind == "InvariantViolation":
                    res.invariant_violations += 1
                res.failures.append({"edges": [list(e) for e in g.edges], "mode": mode, "seed": seed,
                                     **exc.to_json()})
                continue
            res.seconds += time.perf_counter() - t
            res.repaired += bool(rep.details.get("repairs"))
            if cfg.check_oracle:
                t = time.perf_counter()
                if not exists_distinguishing_from_lists(g, group, L).feasible:
                    res.oracle_disagreements.append({"edges": [list(e) for e in g.edges], "mode": mode,
                                                     "seed": seed})
                res.oracle_seconds += time.perf_counter() - t
        if progress and res.graphs % 500 == 0:
            print(f"  {res.graphs} graphs, {res.runs} runs, {len(res.failures)} failures, "
                  f"{res.seconds:.0f}s", flush=True)
    return res
