"""Command-line front end.

Exit codes: 0 success, 1 certification failure, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from .det_model import DetParams, FeedbackState, Uncharacterized, det_outer_polytope, det_sum_capacity
from .det_sim import SchemeDomain, SchemeId, simulate, trace, trace_jsonl, trace_table
from .gauss_ach import SWEEP_COLUMNS, gap_bound, sweep_rows
from .gauss_outer import GaussParams, cross_only_sum_bound, gauss_outer_polytope, sum_rate_bound
from .rate_region import RatePolytope
from .svg import render_regions

MAX_REGIONS = 3


class UsageError(ValueError):
    pass


# -- argument helpers --------------------------------------------------------

def _db(x: float, db: bool) -> float:
    return 10 ** (x / 10) if db else x


def _gauss(args) -> GaussParams:
    if args.snr is None or args.inr is None:
        raise UsageError("gauss model needs --snr and --inr")
    return GaussParams(_db(args.snr, args.db), _db(args.inr, args.db))


def _det(args) -> DetParams:
    if args.n is None or args.m is None:
        raise UsageError("det model needs --n and --m")
    return DetParams(args.n, args.m)


def parse_range(text: str) -> tuple[float, float]:
    """'a..b' or a single value 'a'."""
    lo, sep, hi = text.partition("..")
    lo = float(lo)
    return (lo, float(hi)) if sep else (lo, lo)


def snr_grid(text: str, per_decade: int, db: bool) -> list[float]:
    lo, hi = (_db(v, db) for v in parse_range(text))
    if lo == hi:
        return [lo]
    if lo <= 0 or hi < lo:
        raise UsageError(f"bad SNR range {text!r}")
    k = round(math.log10(hi / lo) * per_decade)
    return [float(v) for v in np.logspace(math.log10(lo), math.log10(hi), k + 1)]


def alpha_grid(text: str, step: float) -> list[float]:
    if text == "any":
        text = "0.1..3.0"
    lo, hi = parse_range(text)
    if hi < lo or step <= 0:
        raise UsageError(f"bad alpha range {text!r}")
    k = int(round((hi - lo) / step))
    return [round(lo + i * step, 10) for i in range(k + 1)]


def grid_points(args) -> list[tuple[float, float, float]]:
    pts = []
    for s in snr_grid(args.snr, args.per_decade, args.db):
        for a in alpha_grid(args.alpha, args.step):
            pts.append((s, s**a if s > 0 else 0.0, a))
    return pts


def _write_csv(rows: list[dict], columns, path: str | None) -> None:
    fh = open(path, "w", newline="") if path else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=list(columns))
        w.writeheader()
        w.writerows(rows)
    finally:
        if path:
            fh.close()


# -- subcommands ---------------------------------------------------------------

def _region(model: str, state: str, args) -> RatePolytope:
    if model == "det":
        return det_outer_polytope(state, _det(args))
    return gauss_outer_polytope(state, _gauss(args))


def cmd_region(args) -> int:
    states = [args.state] + (args.overlay or [])
    if len(states) > MAX_REGIONS:
        raise UsageError(f"at most {MAX_REGIONS} regions per plot")
    polys = [(str(FeedbackState.parse(s)), _region(args.model, s, args)) for s in states]
    doc = polys[0][1].to_dict()
    doc.update(model=args.model, state=polys[0][0])
    out = Path(args.out)
    out.with_suffix(".json").write_text(json.dumps(doc, indent=2) + "\n")
    out.with_suffix(".svg").write_text(render_regions(polys))
    print(json.dumps(doc))
    return 0


def cmd_sumcap(args) -> int:
    f = FeedbackState.parse(args.state)
    if args.model == "det":
        print(det_sum_capacity(f, _det(args)))
        return 0
    g = _gauss(args)
    if not f.any_link:
        raise Uncharacterized(str(f))
    opt = sum_rate_bound(g)
    value = opt.value if f.has_direct else min(opt.value, cross_only_sum_bound(g))
    print(f"{value:.6f} bits  rho_star={opt.rho_star:.6f}")
    return 0


def cmd_simulate(args) -> int:
    scheme = SchemeId(args.scheme)
    p = DetParams(args.n, args.m)
    res = simulate(scheme, p, args.B, args.seed)
    records = trace(scheme, p, args.B, args.seed)
    if args.out:
        Path(args.out).write_text(trace_jsonl(records))
    if args.table:
        print(trace_table(records))
    a, t = res.achieved, res.target
    print(f"{scheme.value} n={p.n} m={p.m} B={args.B} seed={args.seed}: "
          f"achieved=({a.r1}, {a.r2}) = ({float(a.r1):.4f}, {float(a.r2):.4f}) "
          f"target=({t.r1}, {t.r2}) decode_ok={str(res.decode_ok).lower()}")
    return 0 if res.decode_ok else 1


def cmd_gap(args) -> int:
    f = FeedbackState.parse(args.state)
    bound = gap_bound(f)
    rows, worst = [], (-1.0, None)
    for pt in grid_points(args):
        new = sweep_rows([f], [pt], args.slack)
        gap = max((r["gap_bits"] for r in new), default=0.0)
        if gap > worst[0]:
            worst = (gap, pt)
        rows += new
    if args.csv:
        _write_csv(rows, SWEEP_COLUMNS, args.csv)
    gap, (snr, inr, a) = worst
    where = f"snr={snr:g} inr={inr:g} alpha={a:g}"
    if gap > bound:
        print(f"FAIL state {f}: gap {gap:.4f} bits exceeds {bound} at {where}")
        return 1
    print(f"PASS state {f}: max gap {gap:.4f} bits <= {bound} (worst at {where})")
    return 0


def cmd_sweep(args) -> int:
    states = [FeedbackState.parse(s) for s in args.states.split(",")]
    _write_csv(sweep_rows(states, grid_points(args), args.slack), SWEEP_COLUMNS, args.out)
    return 0


# -- parser ----------------------------------------------------------------------

def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="direct-link levels (det)")
    p.add_argument("--m", type=int, help="cross-link levels (det)")
    p.add_argument("--snr", type=float, help="direct-link SNR (gauss)")
    p.add_argument("--inr", type=float, help="cross-link INR (gauss)")
    p.add_argument("--db", action="store_true", help="SNR/INR given in dB")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--snr", default="1e1..1e6", help="SNR value or range lo..hi (log-spaced)")
    p.add_argument("--alpha", default="0.1..3.0", help="alpha value, range lo..hi, or 'any'")
    p.add_argument("--step", type=float, default=0.1, help="alpha step")
    p.add_argument("--per-decade", type=int, default=1, help="SNR points per decade")
    p.add_argument("--db", action="store_true", help="SNR range given in dB")
    p.add_argument("--slack", type=float, default=1e-9, help="feasibility slack in bits")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fbic", description="Interference channel feedback regions and gaps")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("region", help="outer region as JSON + SVG")
    p.add_argument("model", choices=["det", "gauss"])
    p.add_argument("state")
    _add_params(p)
    p.add_argument("--overlay", action="append", metavar="STATE", help="extra state drawn in the same plot")
    p.add_argument("--out", default="region", help="output path prefix (.json and .svg)")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("sumcap", help="sum capacity (det) or sum-rate bound (gauss)")
    p.add_argument("model", choices=["det", "gauss"])
    p.add_argument("state")
    _add_params(p)
    p.set_defaults(func=cmd_sumcap)

    p = sub.add_parser("simulate", help="run a deterministic scheme block by block")
    p.add_argument("scheme", choices=[s.value for s in SchemeId])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--B", type=int, default=10, help="number of blocks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the transcript as JSON lines")
    p.add_argument("--table", action="store_true", help="print the bit-level block table")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gap", help="certify the constant gap over a grid")
    p.add_argument("state")
    _add_grid(p)
    p.add_argument("--csv", help="write per-vertex rows here")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("sweep", help="per-vertex gap rows for several states")
    p.add_argument("--states", default="1000,1001,1100,1110,0110,1111")
    _add_grid(p)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (Uncharacterized, SchemeDomain, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
