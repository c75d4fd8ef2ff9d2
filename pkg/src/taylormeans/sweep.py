"""Grid sweeps over (f, r, b) recording where conjugate-pair real parts fall,
plus two fixed demonstrations.

Reports are deterministic: cases are sorted by key after evaluation, so the
output does not depend on ``jobs``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import TaylorMeanError
from .functions import Power
from .means import MeanResult, compute_mean
from .poly import Polynomial
from .roots import raw_roots

JOBS_ENV = "TAYLOR_MEAN_JOBS"
CLOSED_FORM_TOL = 1e-9


def to_json_number(x):
    """ints and floats stay JSON numbers; non-integer Fractions become "num/den"."""
    if x is None or isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return x
    return float(x)


def _key_number(x) -> Fraction:
    return Fraction(x)


@dataclass(frozen=True)
class SweepCase:
    spec: str
    r: int
    a: object
    b: object
    result: MeanResult | None = None
    error: str | None = None

    @property
    def key(self):
        return (self.spec, self.r, _key_number(self.a), _key_number(self.b))

    def to_dict(self) -> dict:
        res = self.result
        out = {
            "spec": self.spec,
            "r": self.r,
            "a": to_json_number(self.a),
            "b": to_json_number(self.b),
            "x0": None if res is None else res.x0,
            "pairs": [] if res is None else [[x, y] for x, y in res.pairs],
            "inside": [] if res is None else list(res.inside),
            "cj1": None if res is None else res.cj1,
            "cj2": None if res is None else res.cj2,
            "residual": None if res is None else res.residual,
        }
        if res is not None and any(res.boundary):
            out["boundary"] = list(res.boundary)
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass(frozen=True)
class SweepReport:
    cases: tuple
    summary: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"cases": [c.to_dict() for c in self.cases], "summary": self.summary}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["spec", "r", "a", "b", "x0", "pair", "x", "y", "inside",
                    "cj1", "cj2", "residual", "error"])
        for case in self.cases:
            d = case.to_dict()
            head = [d["spec"], d["r"], d["a"], d["b"], _csv(d["x0"])]
            tail = [_csv(d["cj1"]), _csv(d["cj2"]), _csv(d["residual"]), d.get("error", "")]
            if not d["pairs"]:
                w.writerow(head + ["", "", "", ""] + tail)
            for k, ((x, y), ins) in enumerate(zip(d["pairs"], d["inside"]), start=1):
                w.writerow(head + [k, _csv(x), _csv(y), _csv(ins)] + tail)
        return buf.getvalue()


def _csv(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v) if isinstance(v, float) else v


# -- closed forms for f = 1/z -------------------------------------------------------

def reciprocal_closed_forms(r: int, a, b) -> list[float] | None:
    """Known pair real parts for f = 1/z at r = 4 and r = 5, ascending order."""
    a, b = float(a), float(b)
    s5 = math.sqrt(5)
    if r == 5:
        return sorted([(a + b) * a * b / (2 * (a * a - a * b + b * b)),
                       3 * (a + b) * a * b / (2 * (a * a + a * b + b * b))])
    if r == 4:
        return sorted([0.5 * (5 + s5) * a * b * (a + b) / (2 * b * b + (1 + s5) * a * b + 2 * a * a),
                       0.5 * (5 - s5) * a * b * (a + b) / (2 * b * b - (s5 - 1) * a * b + 2 * a * a)])
    return None


def _closed_form_check(case: SweepCase) -> dict | None:
    if case.result is None or case.spec != "power:-1":
        return None
    expected = reciprocal_closed_forms(case.r, case.a, case.b)
    if expected is None:
        return None
    got = sorted(x for x, _ in case.result.pairs)
    ok = len(got) == len(expected) and all(
        abs(g - e) <= CLOSED_FORM_TOL * max(1.0, abs(e)) for g, e in zip(got, expected))
    return {"r": case.r, "a": to_json_number(case.a), "b": to_json_number(case.b),
            "expected": expected, "got": got, "ok": ok}


# -- the sweep -------------------------------------------------------------------------

def _run_case(args) -> SweepCase:
    f, r, a, b = args
    try:
        return SweepCase(str(f), r, a, b, compute_mean(f, r, a, b))
    except (TaylorMeanError, ArithmeticError, ValueError) as exc:
        return SweepCase(str(f), r, a, b, error=f"{type(exc).__name__}: {exc}")


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def conjecture_sweep(specs, r_values, b_grid, a=1, jobs: int | None = None) -> SweepReport:
    """Evaluate every (spec, r, b) case; failures become error markers."""
    jobs = default_jobs() if jobs is None else max(1, int(jobs))
    work = [(f, int(r), a, b) for f in specs for r in r_values for b in b_grid]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cases = list(pool.map(_run_case, work))
    else:
        cases = [_run_case(w) for w in work]
    cases.sort(key=lambda c: c.key)
    return SweepReport(tuple(cases), _summarize(cases))


def _label(c: SweepCase) -> str:
    return f"{c.spec} r={c.r} a={to_json_number(c.a)} b={to_json_number(c.b)}"


def _summarize(cases) -> dict:
    ok = [c for c in cases if c.result is not None]
    with_pairs = [c for c in ok if c.result.pairs]
    checks = [chk for chk in map(_closed_form_check, cases) if chk is not None]
    return {
        "cases": len(cases),
        "errors": len(cases) - len(ok),
        "with_pairs": len(with_pairs),
        "cj1_true": sum(c.result.cj1 for c in with_pairs),
        "cj2_true": sum(c.result.cj2 for c in with_pairs),
        "cj1_false": [_label(c) for c in with_pairs if not c.result.cj1],
        "cj2_false": [_label(c) for c in with_pairs if not c.result.cj2],
        "max_residual": max((c.result.residual for c in ok), default=None),
        "closed_form_checks": checks,
    }


# -- demonstrations ---------------------------------------------------------------------

def nonreal_nodes_poly() -> Polynomial:
    """P_a - P_b for f = z^4, r = 3, a = 2+4i, b = 4+2i (complex coefficients)."""
    a, b = complex(2, 4), complex(4, 2)

    def taylor3(c):
        # f^(k)(c)/k! = binom(4, k) c^(4-k)
        out = Polynomial((), "float")
        for k in range(4):
            out = out + Polynomial.binomial_power(c, k, "float") * (comb(4, k) * c ** (4 - k))
        return out

    return taylor3(a) - taylor3(b)


def nonreal_nodes_demo() -> list[complex]:
    """Roots of P_{2+4i} - P_{4+2i} for z^4 at r = 3, sorted by real part."""
    roots = raw_roots(nonreal_nodes_poly())
    return sorted((complex(z) for z in roots), key=lambda z: (z.real, z.imag))


def nonreal_nodes_report() -> dict:
    roots = nonreal_nodes_demo()
    expected = [complex(2, 2), complex(3, 3), complex(4, 4)]
    a, b = complex(2, 4), complex(4, 2)
    lead = nonreal_nodes_poly().leading
    return {
        "demo": "nonreal-nodes",
        "f": "power:4", "r": 3, "a": [a.real, a.imag], "b": [b.real, b.imag],
        "roots": [[z.real, z.imag] for z in roots],
        "expected": [[z.real, z.imag] for z in expected],
        "match": all(abs(z - e) <= 1e-9 for z, e in zip(roots, expected)),
        "arithmetic_mean": [((a + b) / 2).real, ((a + b) / 2).imag],
        "middle_root_is_mean": abs(roots[1] - (a + b) / 2) <= 1e-9,
        "leading_coefficient": [lead.real, lead.imag],
    }


def counterexample_report() -> dict:
    """f = z^(3/2), r = 3 on (1, 36): x0 = 6 lies inside, the pair's real part 33/43 does not."""
    res = compute_mean(Power(Fraction(3, 2)), 3, 1, 36)
    x1, y1 = res.pairs[0]
    return {
        "demo": "counterexample",
        "f": "power:3/2", "r": 3, "a": 1, "b": 36,
        "x0": res.x0, "x0_expected": 6.0,
        "x1": x1, "x1_expected": 33 / 43,
        "y1": y1, "y1_expected": 15 * math.sqrt(291) / 43,
        "x0_inside": bool(1 < res.x0 < 36),
        "x1_inside": res.inside[0],
        "note": "the point outside (a, b) is the pair real part x1, not the real root x0",
        "residual": res.residual,
    }


__all__ = ["SweepCase", "SweepReport", "conjecture_sweep", "nonreal_nodes_demo",
           "nonreal_nodes_report", "counterexample_report", "reciprocal_closed_forms",
           "to_json_number", "default_jobs"]
