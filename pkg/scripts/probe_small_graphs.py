"""Compare D′ with list feasibility at k = D′ over every connected graph up to a size.

    python3 scripts/probe_small_graphs.py --max-n 7 --universe 3
"""

from __future__ import annotations

import argparse
import json
from collections import Counter

from listdist.corpus import load_corpus
from listdist.oracle import probe_conjecture


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--universe", type=int, default=3)
    args = ap.parse_args()
    by_dprime: Counter = Counter()
    hits = []
    for n in range(1, args.max_n + 1):
        for g in load_corpus("connected", n):
            rep = probe_conjecture(g, args.universe)
            by_dprime[str(rep.dprime)] += 1
            if rep.is_counterexample:
                hits.append({"edges": [list(e) for e in g.edges], **rep.to_json()})
    print(json.dumps({"graphs": sum(by_dprime.values()), "by_dprime": dict(by_dprime),
                      "counterexamples": hits}, indent=2))


if __name__ == "__main__":
    main()
