"""Command-line front end.

    mirec gen     polynomial tables P_{D,0..nmax}
    mirec verify  identity suites (family, var, const, closure, bridge, all)
    mirec sweep   one verification per point of a parameter grid
    mirec bench   determinant vs recurrence construction cost

Every number written is an exact rational string. A JSON config file
(``--config``) supplies defaults that command-line flags override.
"""

import argparse
import csv
import io
import itertools
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .errors import MirecError
from .exact import fmt
from .multi import MultiIndexed
from .recvar import compare_paths, generate
from .report import SCHEMA
from .suites import (SUITES, ConfigError, JobConfig, compatible, parse_list,
                     parse_rational, run_suite)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def threads():
    """Worker count: MIREC_THREADS if set, else the CPU count."""
    raw = os.environ.get("MIREC_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ConfigError(f"MIREC_THREADS must be an integer, not {raw!r}")
    return os.cpu_count() or 1


def fan_out(fn, items):
    """``[fn(x) for x in items]`` on a thread pool, results in input order."""
    items = list(items)
    n = min(threads(), len(items)) or 1
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# --- configuration -------------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--config", help="JSON file with default settings")
    p.add_argument("--family", choices=("R", "qR"))
    p.add_argument("--params", help="a,b,c,d (or b,c,d with --N) as exact rationals")
    p.add_argument("--q", help="base q for qR")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--N", type=int, help="finite mode: a = -N (R) or q^-N (qR)")
    mode.add_argument("--indeterminate", action="store_true", help="generic a (default)")
    p.add_argument("--D", help="index set, e.g. 1,2 (empty for none)")
    p.add_argument("--Y", help="coefficients of Y in eta, constant first (default 1)")
    p.add_argument("--X", help="use this X (eta coefficients) instead of the one built from Y")
    p.add_argument("--nmax", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("json", "csv"))


def _settings(args):
    base = {}
    if args.config:
        try:
            with open(args.config) as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}")
        if not isinstance(base, dict):
            raise ConfigError("config must be a JSON object")
    for key in ("family", "params", "q", "N", "D", "Y", "X", "nmax", "seed", "out",
                "format", "suite", "grid", "random"):
        val = getattr(args, key, None)
        if val is not None and val != []:
            base[key] = val
    if getattr(args, "indeterminate", False):
        base["N"] = None
    return base


def build_config(s):
    if "family" not in s or "params" not in s:
        raise ConfigError("--family and --params are required")
    N = s.get("N")
    if N == "indeterminate":
        N = None
    return JobConfig(
        family=s["family"],
        params=parse_list(s["params"]),
        q=parse_rational(s["q"]) if s.get("q") is not None else None,
        N=int(N) if N is not None else None,
        D=tuple(parse_list(s.get("D", ""), int)),
        Y=parse_list(s.get("Y", "1")),
        X=parse_list(s["X"]) if s.get("X") is not None else None,
        nmax=int(s.get("nmax", 4)),
        seed=int(s.get("seed", 0)),
    )


# --- output --------------------------------------------------------------------------------------


def _emit(text, out):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- commands ------------------------------------------------------------------------------------


def cmd_gen(cfg, fmt_name, out):
    lam = cfg.lam()
    if cfg.finite:
        polys = MultiIndexed(cfg.D, lam).polys(cfg.nmax)
    else:
        polys = generate(cfg.D, lam, cfg.nmax)
    rows = [{"n": n, "coeffs": [fmt(c) for c in p.dense()]} for n, p in enumerate(polys)]
    if fmt_name == "csv":
        _emit(_csv(["n", "power", "coeff"],
                   [(r["n"], i, c) for r in rows for i, c in enumerate(r["coeffs"])]), out)
    else:
        _emit(_json({"schema": SCHEMA, "family": cfg.family, "D": list(cfg.D),
                     "config": cfg.as_dict(), "polynomials": rows}), out)
    return EXIT_OK


def _flatten(reports):
    return [(r.title, c) for r in reports for c in r.checks]


def cmd_verify(cfg, suite, fmt_name, out):
    if suite == "all":
        chosen = [s for s in SUITES if compatible(s, cfg) is None]
        skipped = {s: compatible(s, cfg) for s in SUITES if s not in chosen}
    else:
        reason = compatible(suite, cfg)
        if reason:
            raise ConfigError(reason)
        chosen, skipped = [suite], {}
    results = fan_out(lambda s: run_suite(s, cfg), chosen)
    reports = [r for rs in results for r in rs]
    ok = all(r.ok for r in reports)
    if fmt_name == "csv":
        rows = [(t, c.name, c.status) for t, c in _flatten(reports)]
        _emit(_csv(["report", "check", "status"], rows), out)
    else:
        _emit(_json({"schema": SCHEMA, "command": "verify", "suite": suite,
                     "config": cfg.as_dict(), "ok": ok,
                     "skipped": skipped,
                     "failures": sum(len(r.failures()) for r in reports),
                     "reports": [r.as_dict() for r in reports]}), out)
    return EXIT_OK if ok else EXIT_FAIL


def _parse_grid(specs):
    """``["c=1/3,2/5", "d=1/4"]`` -> ordered list of (name, values)."""
    out = []
    for spec in specs:
        name, _, vals = spec.partition("=")
        name = name.strip()
        if name not in ("a", "b", "c", "d") or not vals:
            raise ConfigError(f"grid entries look like c=1/3,2/5 (got {spec!r})")
        out.append((name, parse_list(vals)))
    return out


def _random_grid(cfg, count):
    """``count`` random (b, c, d) tuples near the configured point."""
    rng = random.Random(cfg.seed)
    names = "bcd"
    base = dict(zip(names, cfg.params[-3:]))
    out = []
    for _ in range(count):
        pt = {}
        for k in names:
            pt[k] = base[k] * Fraction(rng.randint(80, 120), 100)
        out.append(pt)
    return out


def cmd_sweep(cfg, suite, grid, count, fmt_name, out):
    if suite == "all":
        raise ConfigError("sweep runs a single suite")
    reason = compatible(suite, cfg)
    if reason:
        raise ConfigError(reason)
    if grid:
        axes = _parse_grid(grid)
        points = [dict(zip([n for n, _ in axes], combo))
                  for combo in itertools.product(*[v for _, v in axes])]
    elif count:
        points = _random_grid(cfg, count)
    else:
        raise ConfigError("sweep needs --grid or --random")

    def one(pt):
        t0 = time.perf_counter_ns()
        rec = {"instance": {k: fmt(v) for k, v in pt.items()}}
        try:
            lam = cfg.lam(**pt)
            inst = JobConfig(cfg.family, list(lam.values()) if not cfg.finite else
                             [lam.b, lam.c, lam.d], cfg.q, cfg.N, cfg.D, cfg.Y, cfg.X,
                             cfg.nmax, cfg.seed)
            reports = run_suite(suite, inst)
            failures = [c.name for r in reports for c in r.failures()]
            in_range = lam.in_range(cfg.D)
        except (ConfigError, MirecError) as exc:
            inst, failures, in_range, lam = None, [f"{type(exc).__name__}: {exc}"], True, None
        if not in_range:
            rec["status"] = "range-advisory"
            rec["violations"] = lam.range_violations(cfg.D)
        else:
            rec["status"] = "fail" if failures else "pass"
        if failures:
            rec["failures"] = failures
            rec["inputs"] = inst.as_dict() if inst else {**cfg.as_dict(), "point": rec["instance"]}
        rec["wall_time_ns"] = time.perf_counter_ns() - t0
        return rec

    records = fan_out(one, points)
    records.sort(key=lambda r: [Fraction(v) for v in r["instance"].values()])
    bad = [r for r in records if r["status"] == "fail"]
    if fmt_name == "csv":
        _emit(_csv(["instance", "status", "failures", "wall_time_ns"],
                   [(";".join(f"{k}={v}" for k, v in r["instance"].items()), r["status"],
                     ";".join(r.get("failures", [])), r["wall_time_ns"]) for r in records]), out)
    else:
        _emit(_json({"schema": SCHEMA, "command": "sweep", "suite": suite,
                     "config": cfg.as_dict(), "counterexamples": len(bad),
                     "records": records}), out)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_bench(cfg, fmt_name, out):
    if cfg.finite:
        raise ConfigError("bench needs indeterminate parameters")
    rows = compare_paths(cfg.D, cfg.lam(), cfg.nmax)
    header = ["method", "n", "mult_count", "wall_time_ns"]
    data = [(m, n, c, int(t * 1e9)) for m, n, c, t in rows]
    if fmt_name == "json":
        _emit(_json({"schema": SCHEMA, "command": "bench", "config": cfg.as_dict(),
                     "rows": [dict(zip(header, r)) for r in data]}), out)
    else:
        _emit(_csv(header, data), out)
    return EXIT_OK


# --- entry point ---------------------------------------------------------------------------------


def make_parser():
    parser = argparse.ArgumentParser(prog="mirec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("gen", help="write P_{D,n} coefficient tables")
    _add_common(p)
    p = sub.add_parser("verify", help="run verification suites")
    _add_common(p)
    p.add_argument("--suite", choices=SUITES + ("all",))
    p = sub.add_parser("sweep", help="verify over a parameter grid")
    _add_common(p)
    p.add_argument("--suite", choices=SUITES)
    p.add_argument("--grid", action="append", default=[],
                   help="axis such as c=1/3,2/5 (repeatable)")
    p.add_argument("--random", type=int, help="number of seeded random points")
    p = sub.add_parser("bench", help="determinant vs recurrence cost")
    _add_common(p)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        s = _settings(args)
        cfg = build_config(s)
        out = s.get("out")
        if args.command == "gen":
            return cmd_gen(cfg, s.get("format", "json"), out)
        if args.command == "verify":
            return cmd_verify(cfg, s.get("suite", "all"), s.get("format", "json"), out)
        if args.command == "sweep":
            return cmd_sweep(cfg, s.get("suite", "const"), s.get("grid"), s.get("random"),
                             s.get("format", "json"), out)
        return cmd_bench(cfg, s.get("format", "csv"), out)
    except ConfigError as exc:
        print(f"mirec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MirecError as exc:
        print(f"mirec: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
