"""Exhaustive n <= 5 sweep plus random n in {6, 7} instances; prints a JSON summary."""

import argparse
import json
import sys
import time

from mmcomm.sweep import run_sweep


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--random", type=int, default=1000, help="random instances with n in {6, 7}")
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--no-deletion", action="store_true")
    ap.add_argument("--quiet", action="store_true")
    args = ap.parse_args(argv)

    t0 = time.monotonic()

    def progress(gi, n, edges, s):
        if not args.quiet:
            print(f"graph {gi:3d} n={n} |E|={len(edges):2d}  instances so far {s.instances:8d}"
                  f"  {time.monotonic() - t0:7.1f}s", file=sys.stderr, flush=True)

    s = run_sweep(args.max_n, args.random, seed=args.seed, deletion=not args.no_deletion, progress=progress)
    d = s.to_dict()
    d["seconds"] = round(s.seconds, 1)
    print(json.dumps(d, indent=2))
    return 1 if any(d["violations"].values()) else 0


if __name__ == "__main__":
    sys.exit(main())
