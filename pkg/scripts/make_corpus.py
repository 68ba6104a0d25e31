"""Generate the graph6 corpus files shipped in ``listdist/data``.

* ``connected_n{1..8}.g6``: all connected graphs up to isomorphism.  Sizes up
  to 7 come from the networkx graph atlas; size 8 is built by attaching a new
  vertex to every non-empty vertex subset of each connected 7-vertex graph
  (every connected graph has a non-cut vertex, so nothing is missed) and
  removing isomorphic duplicates.
* ``trees_n{4..10}.g6``: all trees up to isomorphism.

Run from the repository root: ``python3 scripts/make_corpus.py``.
"""

from __future__ import annotations

import argparse
import sys
import time
from itertools import combinations
from pathlib import Path

import networkx as nx

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from listdist.graph import Graph, to_graph6  # noqa: E402

EXPECTED_CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}
EXPECTED_TREES = {4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106}


def _to_graph(h: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(h.number_of_nodes(), [(mapping[a], mapping[b]) for a, b in h.edges()])


def connected_atlas(n: int) -> list[nx.Graph]:
    return [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n and nx.is_connected(h)]


def extend_by_one(graphs: list[nx.Graph]) -> list[nx.Graph]:
    buckets: dict[str, list[nx.Graph]] = {}
    out = []
    for h in graphs:
        n = h.number_of_nodes()
        for r in range(1, n + 1):
            for subset in combinations(range(n), r):
                x = h.copy()
                x.add_edges_from((n, s) for s in subset)
                key = nx.weisfeiler_lehman_graph_hash(x, iterations=3) + f"|{x.number_of_edges()}"
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(x, y) for y in bucket):
                    continue
                bucket.append(x)
                out.append(x)
    return out


def write(path: Path, graphs: list[nx.Graph]) -> None:
    lines = sorted(to_graph6(_to_graph(h)) for h in graphs)
    path.write_text("".join(line + "\n" for line in lines))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=ROOT / "src" / "listdist" / "data")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    seven: list[nx.Graph] = []
    for n in range(1, 8):
        gs = connected_atlas(n)
        assert len(gs) == EXPECTED_CONNECTED[n], (n, len(gs))
        write(args.out / f"connected_n{n}.g6", gs)
        if n == 7:
            seven = gs
    t = time.time()
    eight = extend_by_one(seven)
    assert len(eight) == EXPECTED_CONNECTED[8], len(eight)
    write(args.out / "connected_n8.g6", eight)
    print(f"n=8: {len(eight)} graphs in {time.time() - t:.0f}s")

    for n in range(4, 11):
        ts = list(nx.nonisomorphic_trees(n))
        assert len(ts) == EXPECTED_TREES[n], (n, len(ts))
        write(args.out / f"trees_n{n}.g6", ts)
    print("corpus written to", args.out)


if __name__ == "__main__":
    main()
