"""Command-line front end: single-point computations, sweeps, and the verify battery.

Single-point commands print one JSON object to stdout with a settings header
(tol, grid_n, starts, seed), so every output is self-describing.  Sweeps write
CSV or JSON files with all numeric fields at 17 significant digits, which
round-trips doubles exactly.  The verify battery exits 0 only if every check
passes.  Grid commands parallelize over p; set LPINDEX_WORKERS to pin the
process count (default: available parallelism).  runtime_ms is the one
diagnostic, non-reproducible column.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .core import Mat2, make_exponent
from .critical import compute_mp, lemma21_bounds
from .index import estimate_index, remark_counterexample, verify_claim_region
from .norms import op_norm
from .radius import numerical_radius

DEFAULTS = {"tol": 1e-10, "grid_n": 4096, "starts": 64, "seed": 0}

SWEEP_COLUMNS = ("p", "q", "t0", "mp", "lower_bound", "index_estimate", "gap", "runtime_ms")

VERIFY_CLAIM_GRID = 12


def _fmt17(x) -> str:
    return format(float(x), ".17g")


def _settings(**overrides) -> dict:
    s = dict(DEFAULTS)
    s.update(overrides)
    return s


def _print_json(command: str, settings: dict, result: dict) -> None:
    print(json.dumps({"command": command, "settings": settings, "result": result}))


def _workers() -> int:
    raw = os.environ.get("LPINDEX_WORKERS")
    if raw is not None:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _pmap(fn, items):
    """Order-preserving map, parallel over processes when it pays off."""
    workers = min(_workers(), len(items))
    if workers <= 1 or len(items) < 4:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _grid(pmin: float, pmax: float, n: int) -> list[float]:
    if n == 1:
        return [pmin]
    step = (pmax - pmin) / (n - 1)
    return [pmin + i * step for i in range(n)]


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


# ----------------------------------------------------------------- commands


def cmd_mp(args) -> int:
    if not (math.isfinite(args.p) and args.p > 1.0):
        return _fail(f"p must be finite and > 1, got {args.p}")
    if args.tol <= 0.0:
        return _fail(f"tol must be > 0, got {args.tol}")
    e = make_exponent(args.p)
    cp = compute_mp(e, tol=args.tol)
    _print_json(
        "mp",
        _settings(tol=args.tol),
        {
            "p": e.p,
            "q": e.q,
            "t0": cp.t0,
            "mp": cp.mp,
            "derivative_residual": cp.derivative_residual,
            "degenerate": cp.degenerate,
        },
    )
    return 0


def _parse_matrix(args) -> Mat2 | None:
    try:
        return Mat2(args.a, args.b, args.c, args.d)
    except ValueError:
        return None


def cmd_radius(args) -> int:
    if not (math.isfinite(args.p) and args.p > 1.0):
        return _fail(f"p must be finite and > 1, got {args.p}")
    if args.tol <= 0.0:
        return _fail(f"tol must be > 0, got {args.tol}")
    T = _parse_matrix(args)
    if T is None:
        return _fail("matrix entries must be finite")
    e = make_exponent(args.p)
    r = numerical_radius(T, e, tol=args.tol)
    _print_json(
        "radius",
        _settings(tol=args.tol),
        {
            "p": e.p,
            "matrix": {"a": T.a, "b": T.b, "c": T.c, "d": T.d},
            "value": r.value,
            "branch": r.branch,
            "t_star": r.t_star,
            "tol": r.tol,
        },
    )
    return 0


def cmd_opnorm(args) -> int:
    if not (math.isfinite(args.p) and args.p > 1.0):
        return _fail(f"p must be finite and > 1, got {args.p}")
    if args.tol <= 0.0:
        return _fail(f"tol must be > 0, got {args.tol}")
    T = _parse_matrix(args)
    if T is None:
        return _fail("matrix entries must be finite")
    e = make_exponent(args.p)
    r = op_norm(T, e, tol=args.tol)
    x1, x2 = r.witness(e)
    _print_json(
        "opnorm",
        _settings(tol=args.tol),
        {
            "p": e.p,
            "matrix": {"a": T.a, "b": T.b, "c": T.c, "d": T.d},
            "norm": r.norm,
            "witness": {"s": r.s, "sign": r.sign, "swapped": r.swapped, "x1": x1, "x2": x2},
            "tol": r.tol,
        },
    )
    return 0


def cmd_index(args) -> int:
    if not (math.isfinite(args.p) and args.p > 1.0):
        return _fail(f"p must be finite and > 1, got {args.p}")
    if args.starts < 1:
        return _fail(f"starts must be >= 1, got {args.starts}")
    if args.tol <= 0.0:
        return _fail(f"tol must be > 0, got {args.tol}")
    e = make_exponent(args.p)
    est = estimate_index(e, starts=args.starts, seed=args.seed, tol=args.tol)
    m = est.minimizer
    _print_json(
        "index",
        _settings(starts=args.starts, seed=args.seed, tol=args.tol),
        {
            "p": e.p,
            "value": est.value,
            "mp": est.mp,
            "gap": est.gap,
            "minimizer": {"a": m.a, "b": m.b, "c": m.c, "d": m.d},
            "starts": est.starts,
            "converged": est.converged,
        },
    )
    return 0


def cmd_counterexample(args) -> int:
    if not (math.isfinite(args.p) and 1.0 < args.p < 2.0):
        return _fail(f"p must lie in (1, 2), got {args.p}")
    rec = remark_counterexample(args.p)
    _print_json(
        "counterexample",
        _settings(),
        {
            "p": rec.p,
            "t0": rec.t0,
            "mp": rec.mp,
            "ratio": rec.ratio,
            "is_below": rec.is_below,
        },
    )
    return 0


def _verify_row(item) -> dict:
    p, claim_grid = item
    e = make_exponent(p)
    rep = lemma21_bounds(e)
    row = {
        "p": p,
        "lemma_margin": rep.margin,
        "lemma_ok": rep.all_hold,
    }
    for cid in (1, 2, 3):
        cr = verify_claim_region(cid, e, grid_n=claim_grid)
        row[f"claim{cid}_gap"] = cr.infimum_found - cr.target
        row[f"claim{cid}_ok"] = cr.holds
    row["ok"] = row["lemma_ok"] and all(row[f"claim{cid}_ok"] for cid in (1, 2, 3))
    return row


def cmd_verify(args) -> int:
    eps = 1e-9
    if not (1.2 - eps <= args.pmin <= args.pmax <= 1.5 + eps):
        return _fail(f"verify needs 6/5 <= pmin <= pmax <= 3/2, got [{args.pmin}, {args.pmax}]")
    if args.n < 1:
        return _fail(f"n must be >= 1, got {args.n}")
    ps = _grid(args.pmin, args.pmax, args.n)
    rows = _pmap(_verify_row, [(p, VERIFY_CLAIM_GRID) for p in ps])
    n_pass = 0
    for row in rows:
        status = "ok" if row["ok"] else "FAIL"
        n_pass += row["ok"]
        print(
            f"p={row['p']:.12g}  lemma_margin={row['lemma_margin']:.6e}  "
            f"claim_gaps=({row['claim1_gap']:.6e}, {row['claim2_gap']:.6e}, "
            f"{row['claim3_gap']:.6e})  {status}"
        )
    print(f"verify: {n_pass}/{len(rows)} p-values passed on [{args.pmin:.12g}, {args.pmax:.12g}]")
    return 0 if n_pass == len(rows) else 1


def _sweep_row(item) -> dict:
    p, starts, seed, tol = item
    t_begin = time.perf_counter()
    e = make_exponent(p)
    cp = compute_mp(e, tol=tol)
    est = estimate_index(e, starts=starts, seed=seed, tol=tol)
    lower = max(2.0 ** (-1.0 / e.p), 2.0 ** (-1.0 / e.q)) * cp.mp
    return {
        "p": p,
        "q": e.q,
        "t0": cp.t0,
        "mp": cp.mp,
        "lower_bound": lower,
        "index_estimate": est.value,
        "gap": est.gap,
        "runtime_ms": (time.perf_counter() - t_begin) * 1e3,
    }


def _write_sweep_csv(path: str, rows: list[dict]) -> None:
    lines = [",".join(SWEEP_COLUMNS)]
    for row in rows:
        lines.append(",".join(_fmt17(row[col]) for col in SWEEP_COLUMNS))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_sweep_json(path: str, rows: list[dict]) -> None:
    parts = []
    for row in rows:
        fields = ", ".join(f'"{col}": {_fmt17(row[col])}' for col in SWEEP_COLUMNS)
        parts.append("  {" + fields + "}")
    with open(path, "w", newline="\n") as fh:
        fh.write("[\n" + ",\n".join(parts) + "\n]\n")


def cmd_sweep(args) -> int:
    if not (math.isfinite(args.pmin) and args.pmin > 1.0):
        return _fail(f"pmin must be > 1, got {args.pmin}")
    if args.pmax < args.pmin:
        return _fail(f"pmax must be >= pmin, got [{args.pmin}, {args.pmax}]")
    if args.n < 2:
        return _fail(f"n must be >= 2, got {args.n}")
    out = args.out
    if out is None:
        out = "sweep.json" if args.format == "json" else "sweep.csv"
    ps = _grid(args.pmin, args.pmax, args.n)
    rows = _pmap(_sweep_row, [(p, args.starts, args.seed, args.tol) for p in ps])
    try:
        if args.format == "json":
            _write_sweep_json(out, rows)
        else:
            _write_sweep_csv(out, rows)
    except OSError as exc:
        return _fail(f"cannot write {out}: {exc}")
    max_gap = max(abs(row["gap"]) for row in rows)
    settings = _settings(starts=args.starts, seed=args.seed, tol=args.tol)
    print(
        json.dumps(
            {
                "command": "sweep",
                "settings": settings,
                "rows": len(rows),
                "out": out,
                "format": args.format,
                "max_abs_gap": max_gap,
            }
        )
    )
    return 0


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lpindex",
        description="Numerical radius, operator norms, and the numerical index of the real l_p plane.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_mp = sub.add_parser("mp", help="critical point t0 and value mp for one exponent")
    p_mp.add_argument("p", type=float)
    p_mp.add_argument("--tol", type=float, default=DEFAULTS["tol"])
    p_mp.set_defaults(fn=cmd_mp)

    for name, fn, hlp in (
        ("radius", cmd_radius, "numerical radius of (a b; c d)"),
        ("opnorm", cmd_opnorm, "operator norm of (a b; c d)"),
    ):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("p", type=float)
        sp.add_argument("a", type=float)
        sp.add_argument("b", type=float)
        sp.add_argument("c", type=float)
        sp.add_argument("d", type=float)
        sp.add_argument("--tol", type=float, default=DEFAULTS["tol"])
        sp.set_defaults(fn=fn)

    p_idx = sub.add_parser("index", help="estimate the numerical index at one exponent")
    p_idx.add_argument("p", type=float)
    p_idx.add_argument("--starts", type=int, default=DEFAULTS["starts"])
    p_idx.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    p_idx.add_argument("--tol", type=float, default=DEFAULTS["tol"])
    p_idx.set_defaults(fn=cmd_index)

    p_ver = sub.add_parser("verify", help="run the bracket and claim-region battery on a p-grid")
    p_ver.add_argument("--pmin", type=float, default=1.2)
    p_ver.add_argument("--pmax", type=float, default=1.5)
    p_ver.add_argument("--n", type=int, default=100)
    p_ver.set_defaults(fn=cmd_verify)

    p_sw = sub.add_parser("sweep", help="tabulate t0, mp, and index estimates over a p-grid")
    p_sw.add_argument("--pmin", type=float, default=1.2)
    p_sw.add_argument("--pmax", type=float, default=6.0)
    p_sw.add_argument("--n", type=int, default=25)
    p_sw.add_argument("--out", type=str, default=None)
    p_sw.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sw.add_argument("--starts", type=int, default=DEFAULTS["starts"])
    p_sw.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    p_sw.add_argument("--tol", type=float, default=DEFAULTS["tol"])
    p_sw.set_defaults(fn=cmd_sweep)

    p_ce = sub.add_parser("counterexample", help="evaluate the fixed breakdown matrix")
    p_ce.add_argument("--p", type=float, default=1.16)
    p_ce.set_defaults(fn=cmd_counterexample)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        return _fail(str(exc))


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
