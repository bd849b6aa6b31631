"""Command-line frontend.

Subcommands: ``constants`` (tabulate the sharp constants), ``bellman``
(evaluate an extremal value at a point), ``optimizer`` (construct and export
an extremal function), ``verify`` (run verification suites), ``tabulate``
(grid sweeps to CSV).

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 I/O failure.  Output is deterministic for fixed flags and seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import verify
from .candidates import (
    max_exp_mean,
    max_square_mean,
    max_tail_measure,
    min_abs_mean,
    min_power_mean,
    tail_measure_envelope,
)
from .constants import (
    bp_threshold,
    eps0,
    jn_bound_p1,
    jn_sharp_C,
    k_of_C,
    solve_xi,
)
from .domain import Point, abs_mean_region, solve_u, solve_v, tail_region, FourRegion
from .errors import BelowThresholdWarning, DomainError
from .optimizers import (
    AbsPower,
    Indicator,
    averages,
    indicator_optimizer,
    optimizer_minus,
    optimizer_plus,
    step_optimizer,
)
from .rootfind import Tolerance

_EXIT_OK = 0
_EXIT_VERIFY_FAIL = 1
_EXIT_USAGE = 2
_EXIT_IO = 3


def _fmt(value: float, machine: bool) -> str:
    if isinstance(value, float):
        return f"{value:.17g}" if machine else f"{value:.6g}"
    return str(value)


def _emit_table(header: list[str], rows: list[list], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v, machine=True) for v in row])
    elif fmt == "json":
        records = [
            {key: val for key, val in zip(header, row)} for row in rows
        ]
        out.write(json.dumps(records, indent=2) + "\n")
    else:
        widths = [
            max(len(h), max((len(_fmt(r[i], False)) for r in rows), default=0))
            for i, h in enumerate(header)
        ]
        out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
        for row in rows:
            out.write(
                "  ".join(_fmt(v, False).ljust(w) for v, w in zip(row, widths)).rstrip()
                + "\n"
            )


def _parse_floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _cmd_constants(args) -> int:
    p_values = _parse_floats(args.p)
    eps_values = _parse_floats(args.eps) if args.eps else []
    for p in p_values:
        if not 1.0 <= p <= 2.0:
            print(f"error: p={p} outside [1, 2]", file=sys.stderr)
            return _EXIT_USAGE
    header = ["p", "eps0"]
    if eps_values:
        header += ["eps", "C_lower", "C_upper"]
    rows: list[list] = []
    try:
        for p in p_values:
            e0 = eps0(p)
            if not eps_values:
                rows.append([p, e0])
                continue
            for eps in eps_values:
                if p == 1.0:
                    lower, upper = jn_bound_p1(eps)
                else:
                    lower = upper = jn_sharp_C(eps, p)
                rows.append([p, e0, eps, lower, upper])
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    _emit_table(header, rows, args.format)
    return _EXIT_OK


def _cmd_bellman(args) -> int:
    try:
        params = solve_xi(args.C)
        x = Point(args.x[0], args.x[1])
        diag: dict[str, object] = {
            "C": params.C,
            "xi_minus": params.xi_minus,
            "xi_plus": params.xi_plus,
        }
        flags: list[str] = []
        if args.kind == "b_p":
            if args.p is None:
                print("error: --kind b_p requires --p", file=sys.stderr)
                return _EXIT_USAGE
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always", BelowThresholdWarning)
                value = min_power_mean(x, args.p, params)
            if any(issubclass(w.category, BelowThresholdWarning) for w in caught):
                flags.append(f"below-threshold:C<{bp_threshold(args.p):.6g}")
            diag["u_plus"] = solve_u(x, params, "plus")
        elif args.kind == "b_1":
            value = min_abs_mean(x, params)
            diag["region"] = abs_mean_region(x, params).value
        elif args.kind == "B_2":
            value = max_square_mean(x, params)
            diag["u_minus"] = solve_u(x, params, "minus")
        elif args.kind == "A":
            if args.delta is None:
                print("error: --kind A requires --delta", file=sys.stderr)
                return _EXIT_USAGE
            value = max_exp_mean(x, args.delta, params)
            if math.isfinite(value):
                diag["u_plus"] = solve_u(x, params, "plus")
        elif args.kind == "D":
            if args.lam is None:
                print("error: --kind D requires --lambda", file=sys.stderr)
                return _EXIT_USAGE
            value = max_tail_measure(x, args.lam, params)
            region = tail_region(x, args.lam, params)
            diag["region"] = region.value
            if region is FourRegion.SECANT_FAN:
                diag["v"] = solve_v(x, args.lam, params)
            envelope, simple = tail_measure_envelope(args.lam, params)
            diag["vertical_envelope"] = envelope
            diag["convenient_bound"] = simple
        else:
            print(f"error: unknown kind {args.kind}", file=sys.stderr)
            return _EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    if args.format == "json":
        record = {"kind": args.kind, "x": [x.x1, x.x2], "value": value,
                  "flags": flags, **diag}
        print(json.dumps(record, indent=2))
    elif args.format == "csv":
        header = ["kind", "x1", "x2", "value"] + list(diag)
        row = [args.kind, x.x1, x.x2, value] + list(diag.values())
        _emit_table(header, [row], "csv")
    else:
        print(f"{args.kind}({_fmt(x.x1, False)}, {_fmt(x.x2, False)}) = {_fmt(value, False)}")
        for key, val in diag.items():
            print(f"  {key} = {_fmt(val, False) if isinstance(val, float) else val}")
        for flag in flags:
            print(f"  flag: {flag}")
    return _EXIT_OK


def _cmd_optimizer(args) -> int:
    try:
        params = solve_xi(args.C)
        x = Point(args.x[0], args.x[1])
        if args.kind == "phi+":
            phi = optimizer_plus(x, params)
            fkind = AbsPower(args.p if args.p is not None else 2.0)
        elif args.kind == "phi-":
            phi = optimizer_minus(x, params)
            fkind = AbsPower(2.0)
        elif args.kind == "psi":
            phi = step_optimizer(x, params)
            fkind = AbsPower(1.0)
        elif args.kind == "eta":
            if args.lam is None:
                print("error: --kind eta requires --lambda", file=sys.stderr)
                return _EXIT_USAGE
            phi = indicator_optimizer(x, args.lam, params)
            fkind = Indicator(args.lam)
        else:
            print(f"error: unknown kind {args.kind}", file=sys.stderr)
            return _EXIT_USAGE
        triple = averages(phi, fkind)
        cfg = verify.ScanConfig(grid_depth=args.depth)
        char, witness = verify.scan_ainfty(phi, cfg)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    record = json.loads(phi.to_json())
    record["averages"] = {
        "mean": triple.mean,
        "exp_mean": triple.exp_mean,
        "f_mean": triple.f_mean,
        "method": triple.method,
    }
    record["scanned_char"] = char
    record["char_witness"] = list(witness)
    text = json.dumps(record, indent=2)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return _EXIT_IO
        print(f"wrote {args.out}")
    else:
        print(text)
    return _EXIT_OK


def _cmd_verify(args) -> int:
    cfg = verify.ScanConfig(
        grid_depth=args.depth,
        geometric_refine_at_zero=True,
        tol=Tolerance(abs=args.tol, rel=max(args.tol * 1e-2, 4e-16)),
        samples=args.samples,
    )
    names = sorted(verify.SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in verify.SUITES:
            print(
                f"error: unknown suite {name!r}; known: "
                f"{', '.join(sorted(verify.SUITES))}, all",
                file=sys.stderr,
            )
            return _EXIT_USAGE
    threads = int(os.environ.get("JNBELLMAN_THREADS", "1") or "1")
    if threads > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = {name: pool.submit(verify.run_suite, name, cfg, args.seed)
                       for name in names}
            results = {name: futures[name].result() for name in names}
    else:
        results = {name: verify.run_suite(name, cfg, args.seed) for name in names}
    reports = [rep for name in names for rep in results[name]]
    if args.format == "json":
        print(verify.reports_to_json(reports))
    else:
        for rep in reports:
            print(rep.to_text())
    return _EXIT_OK if all(r.passed for r in reports) else _EXIT_VERIFY_FAIL


def _cmd_tabulate(args) -> int:
    try:
        if args.what == "xi":
            grid = np.geomspace(max(args.min, 1.0), args.max, args.num)
            header = ["C", "xi_minus", "xi_plus"]
            rows = []
            for c in grid:
                prm = solve_xi(float(c))
                rows.append([prm.C, prm.xi_minus, prm.xi_plus])
        elif args.what == "k":
            grid = np.geomspace(max(args.min, 1.0), args.max, args.num)
            header = ["C", "k"]
            rows = [[float(c), k_of_C(solve_xi(float(c)))] for c in grid]
        elif args.what == "eps0":
            grid = np.linspace(max(args.min, 1.0), min(args.max, 2.0), args.num)
            header = ["p", "eps0"]
            rows = [[float(p), eps0(float(p))] for p in grid]
        elif args.what == "envelope":
            params = solve_xi(args.C)
            grid = np.linspace(args.min, args.max, args.num)
            header = ["lambda", "envelope", "convenient_bound"]
            rows = []
            for lam in grid:
                exact, simple = tail_measure_envelope(float(lam), params)
                rows.append([float(lam), exact, simple])
        else:
            print(f"error: unknown table {args.what}", file=sys.stderr)
            return _EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                _emit_table(header, rows, "csv", out=fh)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return _EXIT_IO
        print(f"wrote {args.out}")
    else:
        _emit_table(header, rows, "csv")
    return _EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jnbellman",
        description="Sharp John-Nirenberg constants, extremal values on the "
        "exponential strip, explicit extremal functions, and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constants", help="tabulate sharp constants")
    c.add_argument("--p", required=True, help="comma-separated p values in [1,2]")
    c.add_argument("--eps", help="comma-separated oscillation bounds")
    c.add_argument("--format", choices=("text", "csv", "json"), default="text")
    c.set_defaults(func=_cmd_constants)

    b = sub.add_parser("bellman", help="evaluate an extremal value at a point")
    b.add_argument("--kind", required=True, choices=("b_p", "b_1", "B_2", "A", "D"))
    b.add_argument("--C", type=float, required=True)
    b.add_argument("--x", type=float, nargs=2, required=True, metavar=("X1", "X2"))
    b.add_argument("--p", type=float)
    b.add_argument("--delta", type=float)
    b.add_argument("--lambda", dest="lam", type=float)
    b.add_argument("--format", choices=("text", "csv", "json"), default="text")
    b.set_defaults(func=_cmd_bellman)

    o = sub.add_parser("optimizer", help="construct and export an extremal function")
    o.add_argument("--kind", required=True, choices=("phi+", "phi-", "psi", "eta"))
    o.add_argument("--C", type=float, required=True)
    o.add_argument("--x", type=float, nargs=2, required=True, metavar=("X1", "X2"))
    o.add_argument("--p", type=float)
    o.add_argument("--lambda", dest="lam", type=float)
    o.add_argument("--depth", type=int, default=12)
    o.add_argument("-o", "--out")
    o.set_defaults(func=_cmd_optimizer)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all")
    v.add_argument("--depth", type=int, default=12)
    v.add_argument("--tol", type=float, default=1e-14)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=_cmd_verify)

    t = sub.add_parser("tabulate", help="grid sweep to CSV")
    t.add_argument("--what", required=True, choices=("xi", "k", "eps0", "envelope"))
    t.add_argument("--min", type=float, default=1.0)
    t.add_argument("--max", type=float, default=100.0)
    t.add_argument("--num", type=int, default=50)
    t.add_argument("--C", type=float, default=2.0, help="fixed C for envelope sweeps")
    t.add_argument("-o", "--out")
    t.set_defaults(func=_cmd_tabulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
