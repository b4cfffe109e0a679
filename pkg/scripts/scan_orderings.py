"""Exact fully-robust factor for every ordering orbit of one graph (numba table).

Example: python3 scripts/scan_orderings.py --threshold idididid --top 5
"""

import argparse
import sys

from mmcomm.graph import GraphInstance
from mmcomm.instance_io import load_instance, save_instance
from mmcomm.protocol import TableGraph, fully_robust_from_table
from mmcomm.search import _first_max_matching, ordering_representatives, threshold_graph


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="instance file (its order and opt are ignored)")
    src.add_argument("--threshold", help="threshold graph creation string")
    ap.add_argument("--variant", choices=["lfmm", "maximal"], default="lfmm")
    ap.add_argument("--top", type=int, default=10)
    ap.add_argument("--out", help="write the worst instance here")
    args = ap.parse_args(argv)

    if args.graph:
        g = load_instance(args.graph)
        n, edges = g.n, g.edges
    else:
        n, edges = threshold_graph(args.threshold)
    base = GraphInstance(n, edges, _first_max_matching(n, edges))
    tg = TableGraph.build(n, edges)
    reps = ordering_representatives(n, edges, True)
    res = sorted((fully_robust_from_table(base.with_(sigma=s), tg, args.variant).factor, s) for s in reps)
    print(f"{len(reps)} ordering orbits; max {float(res[-1][0]):.9f}")
    for f, s in res[: args.top]:
        print(f"{float(f):.9f}  {f}  sigma={s}")
    if args.out:
        f, s = res[0]
        save_instance(base.with_(sigma=s), args.out, f"exact fully-robust {args.variant} factor {f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
