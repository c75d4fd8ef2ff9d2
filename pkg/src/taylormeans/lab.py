"""Exact verification of the sign and factorization claims behind the r = 3
mean property for f(z) = z^p.

Everything here runs over the rationals.  Functions of b that carry negative
powers (p < 4) are held as :class:`Laurent` values: ``b**shift * poly(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod

from .errors import ExcludedExponent, MismatchError, PreconditionError, SignViolation
from .functions import Power, moment_integrals
from .means import _bracket_root, _float_monic, g_cubic
from .poly import EXACT, Polynomial, divide_out_root_power, evaluate, fourier_budan_bound

EXCLUDED = frozenset({0, 1, 2, 3})


class Laurent:
    """``b**shift * poly(b)`` with ``poly(0) != 0`` after normalization."""

    __slots__ = ("shift", "poly")

    def __init__(self, shift: int, poly: Polynomial):
        coeffs = list(poly.coeffs)
        lead_zeros = 0
        while lead_zeros < len(coeffs) and coeffs[lead_zeros] == 0:
            lead_zeros += 1
        if lead_zeros == len(coeffs):
            shift, coeffs = 0, []
        self.shift = shift + lead_zeros
        self.poly = Polynomial(coeffs[lead_zeros:], EXACT)

    @classmethod
    def from_terms(cls, terms) -> "Laurent":
        """Build from (coefficient, exponent) pairs with integer exponents."""
        terms = [(Fraction(c), int(e)) for c, e in terms if c != 0]
        if not terms:
            return cls(0, Polynomial((), EXACT))
        lo = min(e for _, e in terms)
        coeffs = [Fraction(0)] * (max(e for _, e in terms) - lo + 1)
        for c, e in terms:
            coeffs[e - lo] += c
        return cls(lo, Polynomial(coeffs, EXACT))

    @classmethod
    def monomial(cls, c, e: int) -> "Laurent":
        return cls.from_terms([(c, e)])

    def terms(self):
        return [(c, self.shift + k) for k, c in enumerate(self.poly.coeffs) if c != 0]

    def __add__(self, other: "Laurent") -> "Laurent":
        return Laurent.from_terms(self.terms() + other.terms())

    def __neg__(self) -> "Laurent":
        return Laurent(self.shift, -self.poly)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Laurent):
            return Laurent(self.shift + other.shift, self.poly * other.poly)
        return Laurent(self.shift, self.poly * Fraction(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Laurent":
        return Laurent(self.shift, self.poly / Fraction(scalar))

    def __eq__(self, other) -> bool:
        return isinstance(other, Laurent) and self.shift == other.shift and self.poly == other.poly

    def __hash__(self):
        return hash((self.shift, self.poly))

    def __repr__(self) -> str:
        return f"Laurent(shift={self.shift}, poly={self.poly!r})"

    def reflect(self) -> "Laurent":
        """L(1/b)."""
        return Laurent.from_terms([(c, -e) for c, e in self.terms()])

    def __call__(self, b):
        b = Fraction(b)
        return b ** self.shift * evaluate(self.poly, b)

    def as_polynomial(self) -> Polynomial:
        """The ordinary polynomial b**shift * poly; requires shift >= 0."""
        if self.shift < 0:
            raise PreconditionError(f"negative shift {self.shift}; not a polynomial")
        return Polynomial([0] * self.shift + list(self.poly.coeffs), EXACT)


def _check_p(p) -> int:
    if isinstance(p, Fraction):
        if p.denominator != 1:
            raise PreconditionError(f"exponent {p} is not an integer")
        p = p.numerator
    if p in EXCLUDED:
        raise ExcludedExponent(f"exponent {p} is excluded: f'''' vanishes identically")
    return int(p)


# -- moments and the V, W pair ----------------------------------------------

@dataclass(frozen=True)
class PowerCase:
    p: int
    b: Fraction
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction


def abcd_power(p: int, b) -> PowerCase:
    p = _check_p(p)
    b = Fraction(b)
    if not b > 1:
        raise PreconditionError("b must exceed 1")
    A = p * (p - 1) * (p - 2) * (b ** (p - 3) - 1)
    B = p * (p - 1) * (p - 3) * (b ** (p - 2) - 1)
    C = p * (p - 2) * (p - 3) * (b ** (p - 1) - 1)
    D = (p - 1) * (p - 2) * (p - 3) * (b ** p - 1)
    return PowerCase(p, b, A, B, C, D)


def _abcd_symbolic(p: int):
    one = Laurent.monomial(1, 0)
    return (p * (p - 1) * (p - 2) * (Laurent.monomial(1, p - 3) - one),
            p * (p - 1) * (p - 3) * (Laurent.monomial(1, p - 2) - one),
            p * (p - 2) * (p - 3) * (Laurent.monomial(1, p - 1) - one),
            (p - 1) * (p - 2) * (p - 3) * (Laurent.monomial(1, p) - one))


def _g_at(p: int, x: Laurent) -> Laurent:
    A, B, C, D = _abcd_symbolic(p)
    return (8 * A * A * x * x * x - 24 * A * B * x * x
            + 6 * (A * C + 3 * B * B) * x + A * D - 9 * B * C)


def v_display(p: int) -> Laurent:
    return Laurent.from_terms([
        (12 * (p + 1), 0),
        (-2 * (p - 2) * (p - 3) * (4 * p * p - 12 * p - 1), 2 * p - 3),
        (6 * p * (p - 3) * (4 * p * p - 16 * p + 13), 2 * p - 4),
        (-24 * p * (p - 1) * (p - 2) * (p - 3), 2 * p - 5),
        (8 * p * (p - 1) * (p - 2) ** 2, 2 * p - 6),
        (-(p - 1) * (p - 2) ** 2 * (p - 3), p),
        (3 * p * (p - 2) * (p - 3) * (p - 5), p - 1),
        (-3 * p * (p - 3) * (p * p - 9 * p + 2), p - 2),
        ((p - 2) * (p + 1) * (p * p - 13 * p + 6), p - 3),
    ])


def w_display(p: int) -> Laurent:
    return Laurent.from_terms([
        (12 * (p + 1), 2 * p - 3),
        ((p - 2) * (p + 1) * (p * p - 13 * p + 6), p),
        (-3 * p * (p - 3) * (p * p - 9 * p + 2), p - 1),
        (3 * p * (p - 2) * (p - 3) * (p - 5), p - 2),
        (-(p - 1) * (p - 2) ** 2 * (p - 3), p - 3),
        (8 * p * (p - 1) * (p - 2) ** 2, 3),
        (-24 * p * (p - 1) * (p - 2) * (p - 3), 2),
        (6 * p * (p - 3) * (4 * p * p - 16 * p + 13), 1),
        (-2 * (p - 2) * (p - 3) * (4 * p * p - 12 * p - 1), 0),
    ])


def k_display(n: int) -> Polynomial:
    """K(b) = V(1/b) for p = -n, in the expanded form."""
    return Laurent.from_terms([
        (-12 * (n - 1), 0),
        (8 * n * (n + 1) * (n + 2) ** 2, 2 * n + 6),
        (-24 * n * (n + 1) * (n + 2) * (n + 3), 2 * n + 5),
        (6 * n * (n + 3) * (4 * n * n + 16 * n + 13), 2 * n + 4),
        (-2 * (n + 2) * (n + 3) * (4 * n * n + 12 * n - 1), 2 * n + 3),
        ((n + 2) * (n - 1) * (n * n + 13 * n + 6), n + 3),
        (-3 * (n + 3) * n * (n * n + 9 * n + 2), n + 2),
        (3 * n * (n + 2) * (n + 3) * (n + 5), n + 1),
        (-(n + 1) * (n + 2) ** 2 * (n + 3), n),
    ]).as_polynomial()


@dataclass(frozen=True)
class VWPair:
    p: int
    V: Laurent
    W: Laurent


def vw_build(p: int) -> VWPair:
    """V = g(1)/(p(p-1)) and W = g(b)/(p(p-1)) as Laurent polynomials in b.

    Built by substituting the symbolic moments into g and compared with the
    expanded display term by term.
    """
    p = _check_p(p)
    scale = p * (p - 1)
    V = _g_at(p, Laurent.monomial(1, 0)) / scale
    W = _g_at(p, Laurent.monomial(1, 1)) / scale
    if V != v_display(p):
        raise MismatchError(f"p={p}: V from g(1) differs from the expanded display")
    if W != w_display(p):
        raise MismatchError(f"p={p}: W from g(b) differs from the expanded display")
    return VWPair(p, V, W)


def vw_values(p, b) -> tuple[float, float]:
    """Float V(b), W(b) from the expanded displays, for any real p."""
    p, b = float(p), float(b)
    v = sum(c * b ** e for c, e in _float_terms_v(p))
    w = sum(c * b ** e for c, e in _float_terms_w(p))
    return v, w


def _float_terms_v(p):
    return [(12 * (p + 1), 0),
            (-2 * (p - 2) * (p - 3) * (4 * p * p - 12 * p - 1), 2 * p - 3),
            (6 * p * (p - 3) * (4 * p * p - 16 * p + 13), 2 * p - 4),
            (-24 * p * (p - 1) * (p - 2) * (p - 3), 2 * p - 5),
            (8 * p * (p - 1) * (p - 2) ** 2, 2 * p - 6),
            (-(p - 1) * (p - 2) ** 2 * (p - 3), p),
            (3 * p * (p - 2) * (p - 3) * (p - 5), p - 1),
            (-3 * p * (p - 3) * (p * p - 9 * p + 2), p - 2),
            ((p - 2) * (p + 1) * (p * p - 13 * p + 6), p - 3)]


def _float_terms_w(p):
    return [(c, (2 * p - 3) - e) for c, e in _float_terms_v(p)]


def reflection_check(pair: VWPair, p: int) -> bool:
    """W(b) == b^(2p-3) V(1/b) as a formal identity."""
    return pair.W == Laurent.monomial(1, 2 * p - 3) * pair.V.reflect()


# -- factorizations -----------------------------------------------------------

def _require_sign(poly: Polynomial, sign: int, what: str) -> None:
    bad = [k for k, c in enumerate(poly.coeffs) if not c * sign > 0]
    if bad:
        raise SignViolation(f"{what}: coefficient(s) at power {bad} not of sign {sign:+d}")


def q_factor(n: int) -> Polynomial:
    """Q = V / (b-1)^5 for p = n >= 4, with every coefficient negative."""
    if n < 4:
        raise PreconditionError("q_factor needs n >= 4")
    V = vw_build(n).V.as_polynomial()
    Q = divide_out_root_power(V, 1, 5)
    _require_sign(Q, -1, f"Q for n={n}")
    return Q


def s_factor(n: int) -> Polynomial:
    """S = K / (b-1)^5 where K(b) = V(1/b) for p = -n.

    S may carry a factor b**m (m = 1 for n = 1, where K has no constant
    term); positivity is required of every coefficient from b**m upward.
    """
    if n < 1:
        raise PreconditionError("s_factor needs n >= 1")
    K = vw_build(-n).V.reflect()
    if K.shift < 0:
        raise MismatchError(f"n={n}: V(1/b) is not a polynomial")
    K = K.as_polynomial()
    if K != k_display(n):
        raise MismatchError(f"n={n}: V(1/b) differs from the displayed K")
    S = divide_out_root_power(K, 1, 5)
    m = next(k for k, c in enumerate(S.coeffs) if c != 0)
    _require_sign(Polynomial(S.coeffs[m:]), 1, f"S for n={n}")
    return S


def _derivatives_at_zero(poly: Polynomial, upto: int):
    return [factorial(i) * poly[i] for i in range(upto + 1)]


def dv_table(n: int) -> dict:
    f = factorial
    t = {0: 12 * n + 12}
    t.update({i: 0 for i in range(1, n - 3)})
    t[n - 3] = f(n - 2) * (n + 1) * (n * n - 13 * n + 6)
    t[n - 2] = -3 * f(n - 2) * (n - 3) * n * (n * n - 9 * n + 2)
    t[n - 1] = 3 * f(n) * (n - 2) * (n - 3) * (n - 5)
    t[n] = -f(n) * (n - 1) * (n - 2) ** 2 * (n - 3)
    t.update({i: 0 for i in range(n + 1, 2 * n - 6)})
    return t


def dk_table(n: int) -> dict:
    f = factorial
    t = {0: -12 * (n - 1)}
    t.update({i: 0 for i in range(1, n)})
    t[n] = -f(n + 3) * (n + 2)
    t[n + 1] = 3 * f(n + 3) * n * (n + 5)
    t[n + 2] = -3 * f(n + 3) * n * (n * n + 9 * n + 2)
    t[n + 3] = f(n + 3) * (n + 2) * (n - 1) * (n * n + 13 * n + 6)
    t.update({i: 0 for i in range(n + 4, 2 * n + 3)})
    return t


def derivative_table_check(n: int, table: str = "both") -> bool:
    """Compare derivatives at b = 0 of V (p = n) and K (p = -n) against the
    tabulated closed forms.  ``table`` is ``"V"``, ``"K"`` or ``"both"``;
    ``"both"`` skips the V table below n = 9.
    """
    checks = []
    if table in ("V", "both") and (table == "V" or n >= 9):
        if n < 9:
            raise PreconditionError("V table needs n >= 9")
        V = vw_build(n).V.as_polynomial()
        checks.append((V, dv_table(n)))
    if table in ("K", "both"):
        if n < 2:
            raise PreconditionError("K table needs n >= 2")
        K = vw_build(-n).V.reflect().as_polynomial()
        checks.append((K, dk_table(n)))
    if not checks:
        raise PreconditionError(f"unknown table {table!r}")
    for poly, expected in checks:
        got = _derivatives_at_zero(poly, max(expected))
        if any(got[i] != v for i, v in expected.items()):
            return False
    return True


# -- alternate-proof machinery --------------------------------------------------

def c_k(k: int) -> int:
    return 8 * k ** 3 + 60 * k ** 2 + 130 * k + 75


def lemma5_sum(n: int, j: int) -> tuple[Fraction, Fraction]:
    if n < 4 or not 0 <= j <= n - 4:
        raise PreconditionError("need n >= 4 and 0 <= j <= n - 4")
    lhs = sum(c_k(k) * comb(n, k + 4) * (-1) ** (k - j) * comb(k, j) for k in range(j, n - 3))
    rhs = Fraction(-(n + j + 1) * (n * n - (10 * j + 13) * n + j * j + 5 * j + 6), 2)
    return Fraction(lhs), rhs


def n_poly(n: int) -> Polynomial:
    """N(x) = sum_k C_k binom(n, k+4) x^k, i.e. M(x) / x^4."""
    return Polynomial([c_k(k) * comb(n, k + 4) for k in range(n - 3)], EXACT)


def lemma6_root_count(n: int) -> int:
    """Fourier-Budan count for N on (-1, 0); also checks the value N(-1)."""
    if n < 13:
        raise PreconditionError("lemma6_root_count needs n >= 13")
    N = n_poly(n)
    expected = Fraction(-(n + 1) * (n * n - 13 * n + 6), 2)
    if N(-1) != expected:
        raise MismatchError(f"n={n}: N(-1) = {N(-1)}, expected {expected}")
    return fourier_budan_bound(N, -1, 0)


def l_poly(n: int) -> Polynomial:
    bm1 = Polynomial((-1, 1))
    out = Polynomial((), EXACT)
    for k in range(n - 3):
        out = out + bm1 ** (k + 4) * (-2 * c_k(k) * comb(n, k + 4))
    return out


def l_poly_check(n: int) -> bool:
    """V' == (n-2)(n-3) b^(n-4) L exactly, plus the derivative values of L at 1.

    The cubic closed form for L^(k)(1) is compared for 4 <= k <= n (below
    that, and above n, L^(k)(1) must vanish).
    """
    if n < 4:
        raise PreconditionError("l_poly_check needs n >= 4")
    V = vw_build(n).V.as_polynomial()
    L = l_poly(n)
    if V.derivative() != L * Polynomial([0] * (n - 4) + [(n - 2) * (n - 3)]):
        return False
    for k in range(0, n + 2):
        got = L.derivative(k)(1)
        if 4 <= k <= n:
            falling = prod(n - j for j in range(k))
            want = -2 * (8 * k ** 3 - 36 * k ** 2 + 34 * k + 3) * falling
            four_term = (-2 * (2 * n - 3) * (4 * n * n - 12 * n - 1) * falling
                         + 12 * n * (4 * n * n - 16 * n + 13) * prod(n - j for j in range(1, k + 1))
                         - 24 * n * (n - 1) * (2 * n - 5) * prod(n - j for j in range(2, k + 2))
                         + 16 * n * (n - 1) * (n - 2) * prod(n - j for j in range(3, k + 3)))
            if got != want or got != four_term:
                return False
        elif got != 0:
            return False
    return True


def v1_double_sum(n: int) -> Polynomial:
    # collect the (k, j) terms by the exponent e = j + k + 5 first
    by_exp: dict[int, Fraction] = {}
    for k in range(n - 3):
        for j in range(n - 3):
            e = j + k + 5
            by_exp[e] = by_exp.get(e, 0) + Fraction(c_k(k) * comb(n, k + 4) * comb(n - 4, j), e)
    bm1 = Polynomial((-1, 1))
    power = bm1 ** 5
    out = Polynomial((), EXACT)
    for e in range(5, max(by_exp) + 1):
        out = out + power * by_exp[e]
        power = power * bm1
    return out * (-2 * (n - 2) * (n - 3))


def v1_double_sum_check(n: int) -> bool:
    if n < 4:
        raise PreconditionError("v1_double_sum_check needs n >= 4")
    V = vw_build(n).V.as_polynomial()
    S = v1_double_sum(n)
    return S == V and S.degree == 2 * n - 3


# -- instances of the r = 3 mean property -------------------------------------------

def theorem1_verify(p: int, b) -> tuple[Fraction, Fraction, float]:
    """Exact g(1) < 0 < g(b) for f = z^p on (1, b), and the bracketed x1."""
    case = abcd_power(p, b)
    p, b = case.p, case.b
    A, B, C, D = case.A, case.B, case.C, case.D

    def g(x):
        return 8 * A * A * x ** 3 - 24 * A * B * x * x + 6 * (A * C + 3 * B * B) * x + A * D - 9 * B * C

    g1, gb = g(Fraction(1)), g(b)
    pair = vw_build(p)
    if g1 != p * (p - 1) * pair.V(b) or gb != p * (p - 1) * pair.W(b):
        raise MismatchError(f"p={p}, b={b}: g(1), g(b) disagree with p(p-1) V, p(p-1) W")
    if not g1 < 0 < gb:
        raise SignViolation(f"p={p}, b={b}: g(1)={g1}, g(b)={gb}")
    gc = g_cubic(Power(p), 1, b)
    if tuple(gc.moments.moments) != (A, B, C, D):
        raise MismatchError(f"p={p}, b={b}: closed moments disagree with the ABCD formulas")
    x1 = _bracket_root(_float_monic(gc.poly), 1.0, float(b))
    if not 1 < x1 < b:
        raise SignViolation(f"p={p}, b={b}: x1={x1} outside (1, b)")
    return g1, gb, x1


def harmonic_pair_exact(b) -> bool:
    """For f = 1/z, g vanishes exactly at ab(a+b)/(a^2+b^2) with a = 1."""
    b = Fraction(b)
    gc = g_cubic(Power(-1), 1, b)
    return gc.poly(b * (1 + b) / (1 + b * b)) == 0


def moments_match(p: int, b) -> bool:
    case = abcd_power(p, b)
    mom = moment_integrals(Power(p), 3, 1, case.b)
    return tuple(mom.moments) == (case.A, case.B, case.C, case.D)
