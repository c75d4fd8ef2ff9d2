"""Means from intersections of Taylor polynomials.

``P_c`` is the order-r Taylor polynomial of f at c.  The difference
``P_b - P_a`` has exactly one real root for odd r (a mean of a and b) and
conjugate pairs whose real parts may or may not lie in (a, b).  This module
builds ``P_b - P_a`` by two independent routes, extracts its roots, and
implements the r = 3 pipeline through the auxiliary cubic g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import mpmath
import numpy as np
from scipy.optimize import brentq

from .config import DEFAULT
from .errors import MismatchError, PreconditionError
from .functions import (FunctionSpec, MomentIntegrals, Power, center_of_mass,
                        check_density, check_interval, kth_derivative, moment_integrals)
from .poly import EXACT, FLOAT, Polynomial, evaluate, is_exact, poly_gcd
from .quadrature import integrate
from .roots import all_roots, newton_polish


@dataclass(frozen=True)
class MeanResult:
    """Roots of P_b - P_a organised as means of a and b.

    ``residual`` is the largest |integral of f^(r+1)(t) (z - t)^r over [a, b]|
    over the reported roots z, computed by quadrature.
    """

    spec: str
    r: int
    a: object
    b: object
    x0: float | None
    pairs: tuple
    inside: tuple
    residual: float
    boundary: tuple = field(default=())

    @property
    def cj1(self) -> bool:
        return any(self.inside)

    @property
    def cj2(self) -> bool:
        return bool(self.inside) and all(self.inside)


@dataclass(frozen=True)
class GCubic:
    poly: Polynomial
    moments: MomentIntegrals


# -- construction of P_b - P_a -----------------------------------------------

def taylor_poly(f: FunctionSpec, r: int, c) -> Polynomial:
    """Order-r Taylor polynomial of f at c, in the monomial basis."""
    if r < 0:
        raise PreconditionError("order r must be non-negative")
    derivs = [kth_derivative(f, k, c) for k in range(r + 1)]
    return _expand_taylor(derivs, c)


def _expand_taylor(derivs, c) -> Polynomial:
    exact = all(is_exact(d) for d in derivs) and is_exact(c)
    dom = EXACT if exact else FLOAT
    out = Polynomial((), dom)
    for k, d in enumerate(derivs):
        coef = Fraction(d) / factorial(k) if exact else d / factorial(k)
        out = out + Polynomial.binomial_power(c, k, dom) * coef
    return out


def taylor_diff_coefficients(f: FunctionSpec, r: int, a, b) -> Polynomial:
    return taylor_poly(f, r, b) - taylor_poly(f, r, a)


def taylor_diff_integral(f: FunctionSpec, r: int, a, b,
                         moments: MomentIntegrals | None = None) -> Polynomial:
    """(1/r!) * integral of f^(r+1)(t) (x - t)^r dt, expanded against the moments."""
    mom = moments or moment_integrals(f, r, a, b)
    coeffs = [comb(r, i) * (-1) ** (r - i) * mom.m(r - i) for i in range(r + 1)]
    if mom.exact:
        return Polynomial([Fraction(c, factorial(r)) for c in coeffs], EXACT)
    return Polynomial([c / factorial(r) for c in coeffs], FLOAT)


def _routes_agree(p: Polynomial, q: Polynomial, rel: float) -> bool:
    if p.domain == EXACT and q.domain == EXACT:
        return p == q
    n = max(len(p), len(q))
    scale = max([abs(c) for c in p.coeffs] + [abs(c) for c in q.coeffs] + [0.0])
    return all(abs(float(p[i]) - float(q[i])) <= rel * scale for i in range(n))


def taylor_diff(f: FunctionSpec, r: int, a, b) -> Polynomial:
    """P_b - P_a, built by coefficient subtraction and checked against the
    integral-remainder route.

    Raises :class:`MismatchError` if the two disagree (exactly in the rational
    domain, to ``dual_route_rel`` relative otherwise).
    """
    check_interval(a, b)
    check_density(f, r + 1, a, b)
    coeff_route = taylor_diff_coefficients(f, r, a, b)
    integral_route = taylor_diff_integral(f, r, a, b)
    if not _routes_agree(coeff_route, integral_route, DEFAULT.dual_route_rel):
        raise MismatchError(
            f"P_b - P_a routes disagree for {f}, r={r}, [{a}, {b}]:\n"
            f"  coefficients: {coeff_route}\n  integral:     {integral_route}")
    return coeff_route


_MP_DPS = 40


def remainder_residual(f: FunctionSpec, r: int, a, b, z) -> float:
    """|integral of f^(r+1)(t) (z - t)^r over [a, b]| at the float point z.

    Real and imaginary parts are integrated separately.  When f has an
    mpmath density the quadrature runs at 40 digits, so the value measures
    the point z itself rather than float64 cancellation inside the integral.
    """
    check_interval(a, b)
    z = complex(z)
    mp_dens = f.mp_density(r + 1)
    if mp_dens is not None:
        with mpmath.workdps(_MP_DPS):
            zz = mpmath.mpc(z.real, z.imag)
            lo, hi = _mp_scalar(a), _mp_scalar(b)
            re = mpmath.quad(lambda t: mp_dens(t) * mpmath.re((zz - t) ** r), [lo, hi])
            im = mpmath.quad(lambda t: mp_dens(t) * mpmath.im((zz - t) ** r), [lo, hi]) \
                if z.imag else mpmath.mpf(0)
            return float(mpmath.hypot(re, im))
    dens = f.density(r + 1)

    def integrand(t):
        return dens(t) * (z - t) ** r

    re, _ = integrate(lambda t: integrand(t).real, a, b)
    if z.imag == 0:
        return abs(re)
    im, _ = integrate(lambda t: integrand(t).imag, a, b)
    return math.hypot(re, im)


def _mp_scalar(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def polish_root(p: Polynomial, z: complex, steps: int = 8) -> complex:
    """Newton steps at 40 digits on the coefficients of p; the result is the
    float nearest the refined root.  Float-domain p falls back to float Newton."""
    if p.domain != EXACT:
        return newton_polish(p, z)
    with mpmath.workdps(_MP_DPS):
        cs = [_mp_scalar(c) for c in p.coeffs]
        dcs = [k * c for k, c in enumerate(cs)][1:]
        w = mpmath.mpc(z.real, z.imag)
        for _ in range(steps):
            fw = mpmath.polyval(cs[::-1], w)
            dw = mpmath.polyval(dcs[::-1], w)
            if dw == 0 or fw == 0:
                break
            step = fw / dw
            w -= step
            if abs(step) <= abs(w) * mpmath.mpf(10) ** (-_MP_DPS + 5):
                break
        out = complex(w)
    return out if out.imag else complex(out.real, 0.0)


# -- boundary membership ---------------------------------------------------

def has_pair_with_real_part(p: Polynomial, c) -> bool:
    """Exact test: does ``p`` have a nonreal root with real part exactly c?

    Writes p(c + iy) = R(y) + i I(y) and looks for a nonzero real common root
    of R and I through their exact gcd.
    """
    if p.domain != EXACT or not is_exact(c):
        raise PreconditionError("boundary test needs exact data")
    shifted = p.compose(Polynomial((c, 1)))
    re = [0] * len(shifted)
    im = [0] * len(shifted)
    for k, q in enumerate(shifted.coeffs):
        sign = -1 if (k // 2) % 2 else 1
        (re if k % 2 == 0 else im)[k] = sign * q
    g = poly_gcd(Polynomial(re), Polynomial(im))
    while g.degree and g[0] == 0:
        g = Polynomial(g.coeffs[1:])
    if not g.degree:
        return False
    return len(all_roots(g).reals) > 0


def _classify(p: Polynomial, pairs, a, b, tol: float):
    """In-interval flags; near-endpoint real parts are settled exactly."""
    inside, boundary, fixed = [], [], []
    for x, y in pairs:
        flag = a < x < b
        on_edge = None
        if p.domain == EXACT and is_exact(a) and is_exact(b):
            for edge in (a, b):
                if abs(x - edge) <= tol * max(1.0, abs(float(edge))) \
                        and has_pair_with_real_part(p, edge):
                    on_edge = edge
        if on_edge is not None:
            x, flag = float(on_edge), False
        inside.append(flag)
        boundary.append(on_edge is not None)
        fixed.append((x, y))
    return tuple(fixed), tuple(inside), tuple(boundary)


# -- general means -----------------------------------------------------------

def compute_mean(f: FunctionSpec, r: int, a, b, tol: float | None = None) -> MeanResult:
    """All roots of P_b - P_a as a :class:`MeanResult`."""
    tol = DEFAULT.residual if tol is None else tol
    if r < 1:
        raise PreconditionError("order r must be >= 1")
    p = taylor_diff(f, r, a, b)
    rs = all_roots(p)
    expected_reals = 1 if r % 2 else 0
    if len(rs.reals) != expected_reals:
        raise MismatchError(
            f"{f}, r={r}: found {len(rs.reals)} real roots, expected {expected_reals}")
    x0 = None
    if r % 2:
        x0 = polish_root(p, rs.reals[0]).real
        if not a < x0 < b:
            raise MismatchError(f"real root {x0} outside ({a}, {b})")
    pairs = tuple(polish_root(p, complex(x, y)) for x, y in rs.pairs)
    pairs = tuple((z.real, abs(z.imag)) for z in pairs)
    pairs, inside, boundary = _classify(p, pairs, a, b, DEFAULT.identity_rel)
    zs = ([x0] if x0 is not None else []) + [complex(x, y) for x, y in pairs]
    residual = max(remainder_residual(f, r, a, b, z) for z in zs)
    if not residual <= tol:
        raise MismatchError(f"root residual {residual:.3e} exceeds {tol:.1e}")
    return MeanResult(str(f), r, a, b, x0, pairs, inside, residual, boundary)


def unique_real_mean(f: FunctionSpec, r: int, a, b) -> float:
    """The unique real root of P_b - P_a for odd r; it lies in (a, b)."""
    if r < 1 or r % 2 == 0:
        raise PreconditionError("unique real mean needs odd r")
    p = taylor_diff(f, r, a, b)
    reals = all_roots(p).reals
    if len(reals) != 1:
        raise MismatchError(f"{len(reals)} real roots for odd r={r}")
    x0 = polish_root(p, reals[0]).real
    if not a < x0 < b:
        raise MismatchError(f"real root {x0} outside ({a}, {b})")
    return x0


def real_parts_average_check(f: FunctionSpec, r: int, a, b, tol: float | None = None):
    """(average of root real parts, center of mass by quadrature).

    ``tol`` is forwarded to :func:`compute_mean` as the residual bound.
    """
    res = compute_mean(f, r, a, b, tol)
    total = sum(2 * x for x, _ in res.pairs)
    if res.x0 is not None:
        total += res.x0
    return total / r, center_of_mass(f, r, a, b, method="quadrature")


# -- r = 3 -------------------------------------------------------------------

def g_cubic(f: FunctionSpec, a, b) -> GCubic:
    """g(x) = 8A^2 x^3 - 24AB x^2 + 6(AC + 3B^2) x + AD - 9BC."""
    mom = moment_integrals(f, 3, a, b)
    A, B, C, D = mom.moments
    coeffs = [A * D - 9 * B * C, 6 * (A * C + 3 * B * B), -24 * A * B, 8 * A * A]
    return GCubic(Polynomial(coeffs), mom)


def g_integral_form(f: FunctionSpec, a, b, x) -> float:
    """9 I2 I1 - I3 I0 with I_k = integral of f''''(t) (x - t)^k, by quadrature."""
    check_interval(a, b)
    check_density(f, 4, a, b)
    dens = f.density(4)
    x = float(x)
    I = [integrate(lambda t, k=k: dens(t) * (x - t) ** k, a, b)[0] for k in range(4)]
    return 9 * I[2] * I[1] - I[3] * I[0]


def _float_monic(p: Polynomial):
    q = p.monic()
    c = [float(v) for v in reversed(q.coeffs)]
    return lambda x: float(np.polyval(c, x))


def _bracket_root(fn, lo: float, hi: float) -> float:
    """Root of an increasing function: start from [lo, hi], widen geometrically."""
    width = hi - lo
    for _ in range(200):
        if fn(lo) <= 0:
            break
        lo -= width
        width *= 2
    width = hi - lo
    for _ in range(200):
        if fn(hi) >= 0:
            break
        hi += width
        width *= 2
    if fn(lo) == 0:
        return lo
    if fn(hi) == 0:
        return hi
    return brentq(fn, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)


def _rescale(a, b):
    if is_exact(a) and is_exact(b):
        return Fraction(1), Fraction(b) / Fraction(a)
    return 1.0, float(b) / float(a)


def solve_r3_pair(f: FunctionSpec, a, b) -> MeanResult:
    """x1 as the unique real root of g, y1 from the radical, then a residual check.

    For power functions the problem is solved on (1, b/a) and scaled back by a.
    """
    check_interval(a, b)
    scale = 1
    aa, bb = a, b
    if isinstance(f, Power):
        aa, bb = _rescale(a, b)
        scale = a
    gc = g_cubic(f, aa, bb)
    A, B, C, _ = gc.moments.moments
    g = _float_monic(gc.poly)
    x1 = _bracket_root(g, float(aa), float(bb))
    radicand = 3 * x1 * x1 - 6 * float(B / A) * x1 + 3 * float(C / A)
    if radicand <= 0:
        raise MismatchError(f"nonpositive radicand {radicand} for y1")
    y1 = math.sqrt(radicand)
    x1, y1 = float(scale) * x1, float(scale) * y1

    p = taylor_diff(f, 3, a, b)
    reals = all_roots(p).reals
    if len(reals) != 1:
        raise MismatchError(f"{len(reals)} real roots for r=3")
    x0 = polish_root(p, reals[0]).real
    pairs, inside, boundary = _classify(p, ((x1, y1),), a, b, DEFAULT.identity_rel)
    residual = max(remainder_residual(f, 3, a, b, z) for z in (x0, complex(*pairs[0])))
    if not residual <= DEFAULT.residual:
        raise MismatchError(f"residual {residual:.3e} at z1 = {x1} + {y1}i")
    return MeanResult(str(f), 3, a, b, x0, pairs, inside, residual, boundary)


# -- Stolarsky means and the partial bounds for real exponents ---------------

_DEGENERATE = 1e-12


def stolarsky_mean(r: float, s: float, x: float, y: float) -> float:
    """Two-parameter Stolarsky mean E_{r,s}(x, y) for x, y > 0.

    Near-degenerate parameters are routed to the limit branches explicitly.
    """
    if not (x > 0 and y > 0):
        raise PreconditionError("Stolarsky mean needs x, y > 0")
    r, s, x, y = float(r), float(s), float(x), float(y)
    if x == y:
        return x
    if abs(r) < _DEGENERATE:
        r = 0.0
    if abs(s) < _DEGENERATE:
        s = 0.0
    if r == 0 and s == 0:
        return math.sqrt(x * y)
    if r == 0:
        r, s = s, r
    lx, ly = math.log(x), math.log(y)
    if s == 0:
        return (math.expm1(r * lx - r * ly) * math.exp(r * ly) / (r * (lx - ly))) ** (1 / r)
    if abs(r - s) < _DEGENERATE:
        xr, yr = x ** r, y ** r
        return math.exp(-1 / r + (xr * lx - yr * ly) / (xr - yr))
    num = math.expm1(r * (lx - ly)) * math.exp(r * ly)
    den = math.expm1(s * (lx - ly)) * math.exp(s * ly)
    return (s / r * num / den) ** (1 / (r - s))


def lemma_k(s: float, x: float) -> float:
    """3 E_{s-1,s}(x, 1) - x; exceeds 2 for x > 1 when s >= 3/2."""
    return 3 * stolarsky_mean(s - 1, s, x, 1) - x


def lemma_l(s: float, x: float) -> float:
    """3 E_{s-1,s}(x, 1) - 2x - 1; negative for x > 1 when s < 0."""
    return 3 * stolarsky_mean(s - 1, s, x, 1) - 2 * x - 1


def theorem2_bounds(p, b):
    """Pair real part x1 for f = z^p, r = 3 on (1, b), and whether the
    Stolarsky bounds certify 1 < x1 (p >= 7/2) or x1 < b (p < 2).

    Uses x0 + 2 x1 = 3 E_{s-1,s}(b, 1) with s = p - 2.
    """
    f = Power(p)
    if f.identically_zero(4):
        raise PreconditionError(f"exponent {p} is excluded")
    if not b > 1:
        raise PreconditionError("need b > 1 (a is normalized to 1)")
    s = float(f.p) - 2
    x0 = unique_real_mean(f, 3, Fraction(1) if is_exact(b) else 1.0, b)
    three_e = 3 * stolarsky_mean(s - 1, s, float(b), 1.0)
    x1 = 0.5 * (three_e - x0)
    lower_ok = f.p >= Fraction(7, 2) and lemma_k(s, float(b)) > 2 and x1 > 1
    upper_ok = f.p < 2 and lemma_l(s, float(b)) < 0 and x1 < b
    return x1, bool(lower_ok), bool(upper_ok)
