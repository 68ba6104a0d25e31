"""Bundled graph6 corpora: all connected graphs (1..8 vertices) and all trees (4..10)."""

from __future__ import annotations

from importlib import resources
from typing import Iterator

from .graph import Graph, parse_graph6

KINDS = {"connected": range(1, 9), "trees": range(4, 11)}


def corpus_lines(kind: str, n: int) -> list[str]:
    if kind not in KINDS or n not in KINDS[kind]:
        raise ValueError(f"no bundled corpus {kind!r} with n={n}")
    text = resources.files("listdist.data").joinpath(f"{kind}_n{n}.g6").read_text()
    return [line for line in text.splitlines() if line.strip()]


def load_corpus(kind: str, n: int) -> Iterator[Graph]:
    for line in corpus_lines(kind, n):
        yield parse_graph6(line)
