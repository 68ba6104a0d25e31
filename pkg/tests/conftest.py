from __future__ import annotations

from functools import lru_cache

import hypothesis.strategies as st
from hypothesis import settings

from listdist.corpus import load_corpus
from listdist.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@lru_cache(maxsize=None)
def small_connected(max_n: int = 6) -> tuple[Graph, ...]:
    return tuple(g for n in range(1, max_n + 1) for g in load_corpus("connected", n))


@lru_cache(maxsize=None)
def small_trees(max_n: int = 8) -> tuple[Graph, ...]:
    return tuple(g for n in range(4, max_n + 1) for g in load_corpus("trees", n))


def corpus_graphs(max_n: int = 6, min_edges: int = 1) -> st.SearchStrategy[Graph]:
    return st.sampled_from([g for g in small_connected(max_n) if g.m >= min_edges])


@st.composite
def relabelled(draw, graphs: st.SearchStrategy[Graph]) -> tuple[Graph, Graph]:
    g = draw(graphs)
    perm = draw(st.permutations(range(g.n)))
    return g, g.relabel(perm)


def renaming_class(L) -> tuple:
    """Smallest relabelled form of a list assignment over all colour permutations of its universe."""
    from itertools import permutations
    return min(tuple(tuple(sorted(p[c] for c in x)) for x in L.lists) for p in permutations(range(L.universe)))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
