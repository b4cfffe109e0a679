"""Command-line front end: ``mmcomm {enumerate,verify,lp,search,mc}``.

Exit codes: 0 success, 1 a verification check failed, 2 usage / parse /
validation error, 3 an enumeration cap was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from .graph import InstanceError
from .instance_io import load_instance, save_instance
from .protocol import FULL, SEMI, CapExceeded

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
MODEL_FLAGS = {"semi": SEMI, "full": FULL}


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _default_seed() -> int:
    v = os.environ.get("MMCOMM_SEED")
    try:
        return int(v) if v else 0
    except ValueError:
        raise SystemExit(f"MMCOMM_SEED must be an integer, got {v!r}")


def cmd_enumerate(args) -> int:
    from .protocol import enumerate_fully_robust, enumerate_semi_robust

    inst = load_instance(args.graph)
    model = MODEL_FLAGS[args.model]
    fn = enumerate_semi_robust if model == SEMI else enumerate_fully_robust
    st = fn(inst, args.variant)
    f = st.factor
    if args.json:
        d = st.to_dict()
        d.update(n=inst.n, m=inst.m)
        print(_dumps(d))
    elif args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["model", "variant", "n", "m", "opt_size", "factor_num", "factor_den", "factor_dec"])
        w.writerow([args.model, args.variant, inst.n, inst.m, st.opt_size,
                    f.numerator, f.denominator, format(float(f), ".12g")])
    else:
        print(f"factor {f} ({format(float(f), '.12g')})")
        print(f"E|OUT| = {st.expected_out}   E|OPT_B| = {st.expected_opt_b}   |OPT| = {st.opt_size}")
        print(f"partitions enumerated: {st.partitions_enumerated}")
        for i, x in enumerate(st.expected_n, start=1):
            print(f"  n_{i} = {x} ({format(float(x), '.12g')})")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .lemmas import verify

    inst = load_instance(args.graph)
    reports = verify(inst, args.suite, trials=args.trials, seed=args.seed)
    ok = all(r.passed for r in reports)
    if args.json:
        print(_dumps({"passed": ok, "reports": [r.to_dict() for r in reports]}))
    else:
        for r in reports:
            print(f"{r.suite:12s} {'PASS' if r.passed else 'FAIL'}  ({r.checked} checks)")
            for v in r.violations[:10]:
                print(f"    {v}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lp(args) -> int:
    from .lp import build_lp, solve_lp, solve_lp_simplex

    if args.imax < 2:
        print("error: --imax must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    lp = build_lp(args.imax)
    sol = solve_lp(lp)
    check = solve_lp_simplex(lp) if args.check else None
    if args.json:
        d = {"i_max": lp.i_max,
             "c": [str(x) for x in lp.c], "a": [str(x) for x in lp.a], **sol.to_dict()}
        if check is not None:
            d["simplex_value"] = str(check.objective)
        print(_dumps(d))
    else:
        print(f"{'i':>3} {'c_i':>12} {'a_i':>12}")
        for i, (c, a) in enumerate(zip(lp.c, lp.a), start=1):
            print(f"{i:>3} {str(c):>12} {str(a) if i > 1 else '-':>12}")
        print("m = (" + ", ".join(str(x) for x in sol.m) + ")")
        print(f"value {sol.objective} ({format(float(sol.objective), '.12g')})")
        if check is not None:
            print(f"simplex cross-check {check.objective}")
    if check is not None and check.objective != sol.objective:
        return EXIT_FAIL
    return EXIT_OK


def cmd_search(args) -> int:
    from .search import SearchConfig, hard_instance_hunt, worst_adversary_search, worst_ordering_search

    path = Path(args.config)
    try:
        raw = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config {path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    kind = raw.pop("kind", "ordering")
    graph = raw.pop("graph", None)
    raw.setdefault("seed", args.seed)
    try:
        cfg = SearchConfig.from_dict(raw)
    except (TypeError, ValueError) as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if kind in ("ordering", "adversary"):
        if graph is None:
            print("error: config needs a 'graph' path", file=sys.stderr)
            return EXIT_USAGE
        inst = load_instance(path.parent / graph)
        if kind == "ordering":
            rep = worst_ordering_search(inst, cfg.model, cfg.variant, cfg)
        else:
            rep = worst_adversary_search(inst, cfg.variant, cfg)
    elif kind == "hunt":
        rep = hard_instance_hunt(cfg)
    else:
        print(f"error: unknown search kind {kind!r}", file=sys.stderr)
        return EXIT_USAGE
    print(_dumps(rep.to_dict(timing=args.timing)))
    if args.witness and rep.best is not None:
        save_instance(rep.best, args.witness, f"exact {rep.model} {rep.variant} factor {rep.factor}")
    return EXIT_OK


def cmd_mc(args) -> int:
    from .protocol import monte_carlo

    inst = load_instance(args.graph)
    r = monte_carlo(inst, MODEL_FLAGS[args.model], args.variant, args.samples, args.seed,
                    backend="numba" if args.numba else "python")
    print(_dumps(r.to_dict()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mmcomm", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=None, help="cap numba worker threads")
    sub = p.add_subparsers(dest="cmd", required=True)

    def graph_arg(sp):
        sp.add_argument("--graph", required=True, help="instance file")

    sp = sub.add_parser("enumerate", help="exact expected approximation factor")
    graph_arg(sp)
    sp.add_argument("--model", choices=sorted(MODEL_FLAGS), default="semi")
    sp.add_argument("--variant", choices=["lfmm", "maximal"], default="lfmm")
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    sp.set_defaults(fn=cmd_enumerate)

    sp = sub.add_parser("verify", help="brute-force lemma checks")
    graph_arg(sp)
    sp.add_argument("--suite", choices=["main-lemma", "closure", "deletion", "counting", "all"], default="all")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("lp", help="solve the worst-case LP")
    sp.add_argument("--imax", type=int, default=6)
    sp.add_argument("--check", action="store_true", help="cross-check with exact simplex")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_lp)

    sp = sub.add_parser("search", help="worst-case ordering / adversary / hard-instance search")
    sp.add_argument("--config", required=True, help="JSON search config")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--witness", help="write the best instance to this file")
    sp.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    sp.set_defaults(fn=cmd_search)

    sp = sub.add_parser("mc", help="Monte Carlo estimate")
    graph_arg(sp)
    sp.add_argument("--model", choices=sorted(MODEL_FLAGS), default="semi")
    sp.add_argument("--variant", choices=["lfmm", "maximal"], default="lfmm")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--numba", action="store_true")
    sp.set_defaults(fn=cmd_mc)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 0) is None:
        args.seed = _default_seed()
    if args.threads is not None:
        import numba

        numba.set_num_threads(max(1, min(args.threads, numba.config.NUMBA_NUM_THREADS)))
    try:
        return args.fn(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InstanceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
