"""Command-line front end.

Every subcommand prints one JSON document (``corpus`` prints one summary)
and exits with 0 on success, 2 for exceptional or unsupported input, 3 for
infeasible instances or exhausted budgets, and 4 when an internal audit or
invariant check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator

from .automorphism import DEFAULT_VERTEX_CAP, automorphisms, is_distinguishing, preserving_mask
from .corpus import load_corpus
from .cyclic import CyclicConfig
from .errors import ListDistError, MalformedLine
from .graph import Graph, parse_graph6, read_graph
from .lists import LIST_MODES, EdgeColouring, ListAssignment, generate_lists
from .oracle import (
    DEFAULT_BUDGET, all_lists_feasibility, distinguishing_index, exists_distinguishing_from_lists,
    probe_conjecture,
)
from .recognizer import classify, required_list_size
from .solve import colour_graph

COMMANDS = ("colour", "verify", "classify", "oracle", "dprime", "probe", "corpus")
DOT_COLOURS = ("red", "blue", "forestgreen", "orange", "purple", "brown", "deeppink", "cyan4", "gold3", "gray40")


@dataclass
class RunConfig:
    command: str
    graph_path: str | None = None
    lists_path: str | None = None
    colouring_path: str | None = None
    k: int | None = None
    universe: int | None = None
    seed: int = 0
    mode: str = "random"
    budget: int = DEFAULT_BUDGET
    debug_invariants: bool = False
    induced_cycles: bool = False
    trace: bool = False
    dot_path: str | None = None
    output_path: str | None = None
    all_lists: bool = False
    seeds: int = 20
    bundled: str | None = None
    cap: int = DEFAULT_VERTEX_CAP


# ---------------------------------------------------------------- input helpers

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise MalformedLine(f"cannot read {path}: {exc.strerror}") from exc


def load_graph(path: str | None) -> Graph:
    if path is None:
        raise MalformedLine("--graph is required")
    return read_graph(_read_text(path))


def load_lists_file(path: str, g: Graph) -> ListAssignment:
    """Lists as ``{"universe": U, "lists": [...]}`` in edge order, or ``{"edges": [[u, v, [..]], ...]}``."""
    try:
        obj = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise MalformedLine(f"lists file is not JSON: {exc}") from exc
    if isinstance(obj, dict) and "edges" in obj:
        lists: list[list[int] | None] = [None] * g.m
        for row in obj["edges"]:
            u, v, lst = row
            if not g.has_edge(u, v):
                raise MalformedLine(f"lists mention non-edge ({u}, {v})")
            lists[g.edge_id(u, v)] = list(lst)
        if any(x is None for x in lists):
            raise MalformedLine("some edges have no list")
        universe = obj.get("universe")
        return ListAssignment.of(lists, universe)
    return ListAssignment.from_json(obj, g)


def lists_for(cfg: RunConfig, g: Graph) -> ListAssignment:
    if cfg.lists_path:
        return load_lists_file(cfg.lists_path, g)
    k = cfg.k if cfg.k is not None else max(g.max_degree - 1, 1)
    universe = cfg.universe if cfg.universe is not None else max(2 * g.max_degree, k + 1)
    return generate_lists(g, k, universe, cfg.seed, cfg.mode)


def to_dot(g: Graph, c: EdgeColouring) -> str:
    lines = ["graph G {", "  node [shape=circle];"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for (u, v), col in zip(g.edges, c):
        name = DOT_COLOURS[col % len(DOT_COLOURS)] if col is not None else "black"
        lines.append(f'  {u} -- {v} [label="{col}", color="{name}", penwidth=2];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands

def cmd_colour(cfg: RunConfig) -> tuple[int, dict[str, Any]]:
    g = load_graph(cfg.graph_path)
    L = lists_for(cfg, g)
    conf = CyclicConfig(induced_cycles=cfg.induced_cycles, debug_invariants=cfg.debug_invariants)
    rep = colour_graph(g, L, conf, trace=cfg.trace, cap=cfg.cap)
    if cfg.dot_path:
        Path(cfg.dot_path).write_text(to_dot(g, rep.colouring))
    out = rep.to_json(g)
    out["lists"] = L.to_json()
    return 0, out


def cmd_verify(cfg: RunConfig) -> tuple[int, dict[str, Any]]:
    g = load_graph(cfg.graph_path)
    if not cfg.colouring_path:
        raise MalformedLine("--colouring is required")
    try:
        obj = json.loads(_read_text(cfg.colouring_path))
    except json.JSONDecodeError as exc:
        raise MalformedLine(f"colouring file is not JSON: {exc}") from exc
    if "colouring" in obj and "edges" not in obj:
        obj = {"edges": obj["colouring"]}
    c = EdgeColouring.from_json(obj, g)
    if not c.is_total:
        raise MalformedLine("colouring leaves some edges uncoloured")
    group = automorphisms(g, cap=cfg.cap)
    ok = is_distinguishing(g, group, c.colours)
    out: dict[str, Any] = {"distinguishing": ok,
                           "colour_preserving_automorphisms": int(preserving_mask(group, c.colours).sum())}
    if cfg.lists_path:
        out["respects_lists"] = c.respects(load_lists_file(cfg.lists_path, g))
    good = ok and out.get("respects_lists", True)
    return (0 if good else 3), out


def cmd_classify(cfg: RunConfig) -> tuple[int, dict[str, Any]]:
    g = load_graph(cfg.graph_path)
    cls = classify(g)
    out: dict[str, Any] = {"class": cls.label(), "tag": cls.tag, "delta": cls.delta, "exceptional": cls.exceptional}
    try:
        need = required_list_size(cls)
        out["required_list_size"] = need.k
        out["claim"] = need.claim
    except ListDistError:
        out["required_list_size"] = None
        out["claim"] = "none"
    return 0, out


def cmd_oracle(cfg: RunConfig) -> tuple[int, dict[str, Any]]:
    g = load_graph(cfg.graph_path)
    group = automorphisms(g, cap=cfg.cap)
    if cfg.all_lists:
        k = cfg.k if cfg.k is not None else max(g.max_degree - 1, 1)
        universe = cfg.universe if cfg.universe is not None else k + 2
        rep = all_lists_feasibility(g, group, k, universe, cfg.budget)
        return (0 if rep.all_feasible else 3), rep.to_json()
    L = lists_for(cfg, g)
    res = exists_distinguishing_from_lists(g, group, L, cfg.budget)
    out = res.to_json(g)
    out["lists"] = L.to_json()
    return (0 if res.feasible else 3), out


def cmd_dprime(cfg: RunConfig) -> tuple[int, dict[str, Any]]:
    g = load_graph(cfg.graph_path)
    group = automorphisms(g, cap=cfg.cap)
    k_max = cfg.k if cfg.k is not None else g.max_degree + 1
    return 0, {"dprime": distinguishing_index(g, group, k_max, cfg.budget), "automorphisms": len(group)}


def cmd_probe(cfg: RunConfig) -> tuple[int, dict[str, Any]]:
    g = load_graph(cfg.graph_path)
    rep = probe_conjecture(g, cfg.universe or 3, cfg.k, automorphisms(g, cap=cfg.cap), cfg.budget)
    return 0, rep.to_json()


def _corpus_graphs(cfg: RunConfig) -> Iterator[tuple[str, Graph]]:
    if cfg.bundled:
        kind, _, n = cfg.bundled.partition(":")
        for g in load_corpus(kind, int(n)):
            yield f"{kind}:{n}", g
        return
    if not cfg.graph_path:
        raise MalformedLine("corpus needs --graph (graph6 stream) or --bundled KIND:N")
    for i, line in enumerate(_read_text(cfg.graph_path).splitlines()):
        if line.strip() and not line.startswith("#"):
            try:
                yield f"line {i + 1}", parse_graph6(line.strip())
            except ListDistError as exc:
                raise MalformedLine(f"line {i + 1}: {exc}") from exc


def cmd_corpus(cfg: RunConfig) -> tuple[int, dict[str, Any]]:
    conf = CyclicConfig(induced_cycles=cfg.induced_cycles, debug_invariants=cfg.debug_invariants)
    graphs = runs = 0
    skipped: dict[str, int] = {}
    failures: list[dict[str, Any]] = []
    for where, g in _corpus_graphs(cfg):
        graphs += 1
        d = g.max_degree
        if d < 3:
            skipped["max degree < 3"] = skipped.get("max degree < 3", 0) + 1
            continue
        cls = classify(g)
        if cls.exceptional:
            skipped[cls.tag] = skipped.get(cls.tag, 0) + 1
            continue
        group = automorphisms(g, cap=cfg.cap) if not cls.is_tree else None
        k = cfg.k if cfg.k is not None else d - 1
        universe = cfg.universe if cfg.universe is not None else 2 * d
        modes = [("random", s) for s in range(cfg.seed, cfg.seed + cfg.seeds)]
        if universe > k:
            modes.append(("one-off-identical", 0))
        for mode, seed in modes:
            runs += 1
            L = generate_lists(g, k, universe, seed, mode)
            try:
                colour_graph(g, L, conf, group, cap=cfg.cap)
            except ListDistError as exc:
                failures.append({"graph": where, "edges": [list(e) for e in g.edges], "mode": mode,
                                 "seed": seed, "lists": L.to_json(), **exc.to_json()})
    out = {"graphs": graphs, "runs": runs, "failures": len(failures), "skipped": skipped,
           "failure_details": failures[:50]}
    return (0 if not failures else 4), out


HANDLERS = {
    "colour": cmd_colour, "verify": cmd_verify, "classify": cmd_classify, "oracle": cmd_oracle,
    "dprime": cmd_dprime, "probe": cmd_probe, "corpus": cmd_corpus,
}


def run(cfg: RunConfig) -> tuple[int, dict[str, Any]]:
    try:
        return HANDLERS[cfg.command](cfg)
    except ListDistError as exc:
        return exc.exit_code, exc.to_json()


# ---------------------------------------------------------------- argument parsing

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="listdist", description="List-distinguishing edge colourings of small graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, lists: bool = True) -> None:
        p.add_argument("--graph", help="edge-list or graph6 file ('-' for stdin)")
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
        p.add_argument("--cap", type=int, default=DEFAULT_VERTEX_CAP, help="vertex cap for automorphism enumeration")
        if lists:
            p.add_argument("--lists", help="lists JSON; generated from --k/--universe/--seed/--mode when absent")
            p.add_argument("--k", type=int, help="list size (default Δ−1)")
            p.add_argument("--universe", type=int, help="colour universe size (default 2Δ)")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--mode", choices=LIST_MODES, default="random")

    p = sub.add_parser("colour", help="construct and verify a distinguishing list colouring")
    common(p)
    p.add_argument("--debug-invariants", action="store_true", help="assert the growth invariants after every step")
    p.add_argument("--induced-cycles", action="store_true", help="only induced cycles count as cycles of length k")
    p.add_argument("--trace", action="store_true", help="include per-step records")
    p.add_argument("--dot", help="also write a DOT rendering of the colouring")

    p = sub.add_parser("verify", help="check that a colouring is distinguishing")
    common(p, lists=False)
    p.add_argument("--colouring", required=True, help='JSON {"edges": [[u, v, c], ...]}')
    p.add_argument("--lists", help="also check list membership")

    p = sub.add_parser("classify", help="recognise exceptional classes and the list size they need")
    common(p, lists=False)

    p = sub.add_parser("oracle", help="exhaustive feasibility for given lists, or for all lists with --all")
    common(p)
    p.add_argument("--all", dest="all_lists", action="store_true",
                   help="check every assignment of k-subsets of the universe (universe default k+2)")

    p = sub.add_parser("dprime", help="distinguishing index by exhaustive search")
    common(p, lists=False)
    p.add_argument("--k", type=int, help="largest number of colours to try (default Δ+1)")

    p = sub.add_parser("probe", help="compare D′ with list feasibility over a finite universe")
    common(p, lists=False)
    p.add_argument("--universe", type=int, default=3)
    p.add_argument("--k", type=int, help="list size (default D′)")

    p = sub.add_parser("corpus", help="colour every graph of a graph6 stream under seeded random lists")
    common(p)
    p.add_argument("--bundled", help="use a bundled corpus instead, e.g. connected:7 or trees:10")
    p.add_argument("--seeds", type=int, default=20, help="random list assignments per graph")
    p.add_argument("--debug-invariants", action="store_true")
    p.add_argument("--induced-cycles", action="store_true")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    get = lambda name, default=None: getattr(ns, name, default)  # noqa: E731
    return RunConfig(
        command=ns.command, graph_path=get("graph"), lists_path=get("lists"), colouring_path=get("colouring"),
        k=get("k"), universe=get("universe"), seed=get("seed", 0) or 0, mode=get("mode", "random") or "random",
        budget=get("budget", DEFAULT_BUDGET), debug_invariants=bool(get("debug_invariants", False)),
        induced_cycles=bool(get("induced_cycles", False)), trace=bool(get("trace", False)), dot_path=get("dot"),
        output_path=get("out"), all_lists=bool(get("all_lists", False)), seeds=get("seeds", 20) or 20,
        bundled=get("bundled"), cap=get("cap", DEFAULT_VERTEX_CAP),
    )


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    code, payload = run(cfg)
    text = json.dumps(payload, indent=2)
    if cfg.output_path:
        Path(cfg.output_path).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
