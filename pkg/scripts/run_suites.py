"""Run the corpus property suites and print a JSON summary per suite.

    python3 scripts/run_suites.py --kind cyclic --sizes 4-8
    python3 scripts/run_suites.py --kind trees --sizes 4-10 --oracle
    python3 scripts/run_suites.py --kind cyclic --sizes 4-7 --debug-invariants
"""

from __future__ import annotations

import argparse
import json

from listdist.suites import SuiteConfig, run_suite


def parse_sizes(text: str) -> tuple[int, ...]:
    lo, _, hi = text.partition("-")
    return tuple(range(int(lo), int(hi or lo) + 1))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kind", choices=("cyclic", "trees"), default="cyclic")
    ap.add_argument("--sizes", default="4-7", help="vertex counts, e.g. 4-8 or 6")
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--no-one-off", action="store_true", help="skip the one-off-identical assignment")
    ap.add_argument("--debug-invariants", action="store_true")
    ap.add_argument("--oracle", action="store_true", help="cross-check every success with the exhaustive oracle")
    ap.add_argument("--progress", action="store_true")
    args = ap.parse_args()
    cfg = SuiteConfig(args.kind, parse_sizes(args.sizes), args.seeds, not args.no_one_off,
                      args.debug_invariants, args.oracle)
    res = run_suite(cfg, progress=args.progress)
    print(json.dumps({"suite": args.kind, "sizes": list(cfg.sizes), **res.summary(),
                      "failure_details": res.failures[:20]}, indent=2))


if __name__ == "__main__":
    main()
