"""Command-line front end: ``taylor-mean {mean,verify,sweep}``.

Exit codes: 0 on success, 1 on a numerical failure or failed check, 2 on a
usage or precondition error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from . import lab
from .errors import PreconditionError, TaylorMeanError
from .functions import Power, parse_spec
from .means import compute_mean, solve_r3_pair
from .sweep import (SweepCase, conjecture_sweep, counterexample_report,
                    nonreal_nodes_report, to_json_number)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUITES = ("vw", "reflection", "factor-signs", "derivative-tables", "lemma5", "lemma6",
          "l-poly", "v1", "theorem1")
SUITE_DEFAULTS = {
    "vw": ("p", "-12..20"),
    "reflection": ("p", "-12..20"),
    "factor-signs": ("n", "1..30"),
    "derivative-tables": ("n", "2..30"),
    "lemma5": ("n", "4..40"),
    "lemma6": ("n", "13..40"),
    "l-poly": ("n", "4..25"),
    "v1": ("n", "4..25"),
    "theorem1": ("p", "-12..20"),
}
DEFAULT_B_GRID = "3/2,2,3,10"


class UsageError(Exception):
    pass


# -- value parsing --------------------------------------------------------------

def parse_number(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def parse_grid(text: str) -> list[Fraction]:
    """Comma-separated items, each a number or an inclusive ``lo..hi[:step]``."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ".." in item:
            rng, _, step_txt = item.partition(":")
            lo_txt, _, hi_txt = rng.partition("..")
            lo, hi = parse_number(lo_txt), parse_number(hi_txt)
            step = parse_number(step_txt) if step_txt else Fraction(1)
            if step <= 0:
                raise UsageError(f"range step must be positive in {item!r}")
            if hi < lo:
                raise UsageError(f"empty range {item!r}")
            v = lo
            while v <= hi:
                out.append(v)
                v += step
        else:
            out.append(parse_number(item))
    if not out:
        raise UsageError(f"empty grid {text!r}")
    return out


def parse_int_grid(text: str) -> list[int]:
    vals = parse_grid(text)
    if any(v.denominator != 1 for v in vals):
        raise UsageError(f"integer values expected in {text!r}")
    return [int(v) for v in vals]


def _scalar(v: Fraction):
    return v.numerator if v.denominator == 1 else v


_NEG_VALUE = re.compile(r"^-\d")


def preprocess_argv(argv: list[str]) -> list[str]:
    """Glue ``--opt -12..20`` into ``--opt=-12..20`` so negative ranges parse."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) \
                and _NEG_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


# -- output ---------------------------------------------------------------------------

def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- mean -------------------------------------------------------------------------------

def cmd_mean(args) -> int:
    f = parse_spec(args.f)
    a, b = _scalar(parse_number(args.a)), _scalar(parse_number(args.b))
    if args.via_g:
        if args.r != 3:
            raise UsageError("--via-g requires --r 3")
        res = solve_r3_pair(f, a, b)
    else:
        res = compute_mean(f, args.r, a, b, tol=args.tol)
    d = SweepCase(str(f), args.r, a, b, res).to_dict()
    if args.format == "json":
        text = _dump_json(d)
    elif args.format == "csv":
        text = _mean_csv(d)
    else:
        lines = [f"f = {d['spec']}, r = {d['r']}, a = {d['a']}, b = {d['b']}",
                 f"x0 = {d['x0']!r}" if d["x0"] is not None else "x0 = (none, r even)"]
        for k, ((x, y), ins) in enumerate(zip(d["pairs"], d["inside"]), start=1):
            where = "inside" if ins else "outside"
            lines.append(f"pair {k}: {x!r} +/- {y!r} i  ({where} (a, b))")
        lines.append(f"residual = {d['residual']:.3e}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def _mean_csv(d: dict) -> str:
    rows = []
    for k, ((x, y), ins) in enumerate(zip(d["pairs"], d["inside"]), start=1):
        rows.append([d["spec"], d["r"], d["a"], d["b"], _opt(d["x0"]), k, repr(x), repr(y),
                     str(ins).lower(), repr(d["residual"])])
    if not rows:
        rows.append([d["spec"], d["r"], d["a"], d["b"], _opt(d["x0"]), "", "", "", "",
                     repr(d["residual"])])
    return _rows_csv(["spec", "r", "a", "b", "x0", "pair", "x", "y", "inside", "residual"], rows)


def _opt(v):
    return "" if v is None else repr(v)


# -- verify -------------------------------------------------------------------------

def _check(fn):
    """Run one check; returns (ok, detail)."""
    try:
        out = fn()
    except PreconditionError:
        raise
    except (TaylorMeanError, ArithmeticError) as exc:
        return False, f"{type(exc).__name__}: {exc}"
    if isinstance(out, tuple):
        return bool(out[0]), out[1]
    return bool(out), ""


def _suite_rows(suite: str, values: list[int], b_grid: list[Fraction]):
    rows = []

    def add(case, fn):
        ok, detail = _check(fn)
        rows.append((suite, case, ok, detail))

    for v in values:
        if suite in ("vw", "reflection", "theorem1") and v in lab.EXCLUDED:
            continue
        if suite == "vw":
            add(f"p={v}", lambda v=v: (lab.vw_build(v) is not None, "dual construction matches"))
        elif suite == "reflection":
            add(f"p={v}", lambda v=v: lab.reflection_check(lab.vw_build(v), v))
        elif suite == "factor-signs":
            if v >= 4:
                add(f"Q n={v}", lambda v=v: (True, f"degree {lab.q_factor(v).degree}, all negative"))
            if v >= 1:
                add(f"S n={v}", lambda v=v: (True, f"degree {lab.s_factor(v).degree}, all positive"))
        elif suite == "derivative-tables":
            add(f"n={v}", lambda v=v: lab.derivative_table_check(v))
        elif suite == "lemma5":
            for j in range(0, v - 3):
                add(f"n={v} j={j}", lambda v=v, j=j: _lemma5(v, j))
        elif suite == "lemma6":
            add(f"n={v}", lambda v=v: _lemma6(v))
        elif suite == "l-poly":
            add(f"n={v}", lambda v=v: lab.l_poly_check(v))
        elif suite == "v1":
            add(f"n={v}", lambda v=v: lab.v1_double_sum_check(v))
        elif suite == "theorem1":
            for b in b_grid:
                add(f"p={v} b={to_json_number(b)}", lambda v=v, b=b: _theorem1(v, b))
    return rows


def _lemma5(n, j):
    lhs, rhs = lab.lemma5_sum(n, j)
    return lhs == rhs, f"lhs={lhs} rhs={rhs}"


def _lemma6(n):
    count = lab.lemma6_root_count(n)
    return count == 1, f"count={count}"


def _theorem1(p, b):
    g1, gb, x1 = lab.theorem1_verify(p, b)
    res = compute_mean(Power(p), 3, 1, _scalar(Fraction(b)))
    xr = res.pairs[0][0]
    ok = abs(x1 - xr) <= 1e-9
    detail = f"x1={x1!r} root-solve={xr!r}"
    if p == -1:
        exact = lab.harmonic_pair_exact(b)
        ok = ok and exact
        detail += f" exact-closed-form={exact}"
    return ok, detail


def cmd_verify(args) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    b_grid = parse_grid(args.b or DEFAULT_B_GRID)
    if any(b <= 1 for b in b_grid):
        raise UsageError("--b values must exceed 1")
    rows = []
    for suite in suites:
        axis, default = SUITE_DEFAULTS[suite]
        given = args.n if axis == "n" else args.p
        other = args.p if axis == "n" else args.n
        if other is not None and args.suite != "all":
            raise UsageError(f"suite {suite} takes --{axis}, not --{'p' if axis == 'n' else 'n'}")
        values = parse_int_grid(given or default)
        rows += _suite_rows(suite, values, b_grid)
    passed = sum(1 for r in rows if r[2])
    if args.format == "json":
        text = _dump_json({"checks": [{"suite": s, "case": c, "ok": ok, "detail": d}
                                      for s, c, ok, d in rows],
                           "summary": {"total": len(rows), "passed": passed,
                                       "failed": len(rows) - passed}})
    elif args.format == "csv":
        text = _rows_csv(["suite", "case", "ok", "detail"],
                         [(s, c, str(ok).lower(), d) for s, c, ok, d in rows])
    else:
        width = max((len(c) for _, c, _, _ in rows), default=4)
        lines = [f"{s:<18} {c:<{width}} {'PASS' if ok else 'FAIL'}  {d}" for s, c, ok, d in rows]
        lines.append(f"{passed}/{len(rows)} checks passed")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK if rows and passed == len(rows) else EXIT_FAIL


# -- sweep -------------------------------------------------------------------------------

DEMOS = {"nonreal-nodes": nonreal_nodes_report, "counterexample": counterexample_report}


def cmd_sweep(args) -> int:
    if args.demo:
        report = DEMOS[args.demo]()
        if args.format == "csv":
            raise UsageError("demos are emitted as json or plain")
        if args.format == "plain":
            text = "".join(f"{k}: {v}\n" for k, v in sorted(report.items()))
        else:
            text = _dump_json(report)
        _emit(text, args.output)
        ok = report.get("match", True) and not report.get("x1_inside", False)
        return EXIT_OK if ok else EXIT_FAIL
    if not args.f or not args.r or not args.b:
        raise UsageError("sweep needs --f, --r and --b (or --demo)")
    specs = [parse_spec(s) for s in args.f.split(";")] if ";" in args.f \
        else [parse_spec(args.f)]
    r_values = parse_int_grid(args.r)
    if any(r < 1 for r in r_values):
        raise UsageError("--r values must be >= 1")
    a = _scalar(parse_number(args.a))
    b_grid = [_scalar(b) for b in parse_grid(args.b)]
    if any(b <= a for b in b_grid) or a <= 0:
        raise UsageError("need 0 < a < b for every grid value")
    report = conjecture_sweep(specs, r_values, b_grid, a=a, jobs=args.jobs)
    if args.format == "csv":
        text = report.to_csv()
    elif args.format == "plain":
        lines = []
        for c in report.cases:
            d = c.to_dict()
            if "error" in d:
                lines.append(f"{d['spec']} r={d['r']} b={d['b']}: ERROR {d['error']}")
                continue
            xs = ", ".join(f"{x:.12g}{'' if ins else '*'}" for (x, _), ins in zip(d["pairs"], d["inside"]))
            lines.append(f"{d['spec']} r={d['r']} b={d['b']}: pairs [{xs}] cj1={d['cj1']} cj2={d['cj2']}")
        s = report.summary
        lines.append(f"{s['cases']} cases, {s['errors']} errors, cj1 {s['cj1_true']}/{s['with_pairs']}, "
                     f"cj2 {s['cj2_true']}/{s['with_pairs']}  (* = outside (a, b))")
        text = "\n".join(lines) + "\n"
    else:
        text = report.to_json()
    _emit(text, args.output)
    failed_closed_forms = any(not chk["ok"] for chk in report.summary["closed_form_checks"])
    if failed_closed_forms or (args.strict and report.summary["errors"]):
        return EXIT_FAIL
    return EXIT_OK


# -- entry point ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="taylor-mean",
                                 description="Means from intersections of Taylor polynomials.")
    sub = ap.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mean", help="roots of P_b - P_a as means of a and b")
    m.add_argument("--f", required=True, help="power:<p>, exp or log")
    m.add_argument("--r", type=int, required=True)
    m.add_argument("--a", required=True)
    m.add_argument("--b", required=True)
    m.add_argument("--tol", type=float, default=None, help="residual tolerance (default 1e-8)")
    m.add_argument("--via-g", action="store_true", help="r = 3 only: pair from the cubic g")
    m.set_defaults(func=cmd_mean)

    v = sub.add_parser("verify", help="exact verification suites")
    v.add_argument("--suite", required=True, choices=SUITES + ("all",))
    v.add_argument("--n", default=None, help="n values, e.g. 4..30")
    v.add_argument("--p", default=None, help="exponents, e.g. -12..20")
    v.add_argument("--b", default=None, help=f"b grid for theorem1 (default {DEFAULT_B_GRID})")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="conjecture sweeps and fixed demos")
    s.add_argument("--f", default=None, help="spec, or several separated by ';'")
    s.add_argument("--r", default=None, help="orders, e.g. 4,5,7 or 2..6")
    s.add_argument("--a", default="1")
    s.add_argument("--b", default=None, help="b grid, e.g. 2,4 or 1.5..10:0.5")
    s.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: $TAYLOR_MEAN_JOBS or 1)")
    s.add_argument("--strict", action="store_true", help="exit 1 if any case errors")
    s.add_argument("--demo", choices=sorted(DEMOS), default=None)
    s.set_defaults(func=cmd_sweep)

    for p in (m, v, s):
        p.add_argument("--format", choices=("json", "csv", "plain"),
                       default="plain" if p is v else "json")
        p.add_argument("--output", default=None, help="write to this file instead of stdout")
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = preprocess_argv(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with 2 on bad usage
    try:
        return args.func(args)
    except (UsageError, PreconditionError) as exc:
        print(f"taylor-mean: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TaylorMeanError, ArithmeticError) as exc:
        print(f"taylor-mean: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
