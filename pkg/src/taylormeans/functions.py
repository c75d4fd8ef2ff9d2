"""Function specifications: derivatives f^(k)(c) and moment integrals.

A :class:`FunctionSpec` describes f on (0, inf).  Closed-form variants
(:class:`Power`, :class:`Exp`, :class:`Log`) also know the antiderivatives of
``t**j * f^(r+1)(t)``; :class:`CustomOracle` only supplies derivatives and
falls back to adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from .errors import DomainError, ExcludedExponent, PreconditionError, SignChange
from .poly import is_exact
from .quadrature import integrate


def falling_factorial(p, k: int):
    """p (p-1) ... (p-k+1); empty product is 1."""
    out = Fraction(1) if is_exact(p) else 1.0
    for i in range(k):
        out *= p - i
    return out


def _iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 2:
        return n
    # integer Newton from an upper bound decreases monotonically to floor(root)
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == n else None


def rational_power(c, e):
    """c**e, exact when c and e are rational and the result is rational.

    Falls back to float otherwise.
    """
    if is_exact(c) and is_exact(e):
        c, e = Fraction(c), Fraction(e)
        if e.denominator == 1:
            return c ** int(e)
        num = _iroot(c.numerator, e.denominator)
        den = _iroot(c.denominator, e.denominator)
        if num is not None and den is not None:
            return Fraction(num, den) ** e.numerator
    return float(c) ** float(e)


def _mpf(x):
    """mpmath value of a Fraction or float at the working precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _log_ratio(b, a) -> float:
    return math.log(float(b) / float(a)) if not (is_exact(a) and is_exact(b)) \
        else math.log(Fraction(b) / Fraction(a))


class FunctionSpec:
    """Base class; subclasses supply ``derivative`` and optionally moments."""

    label = "f"

    def derivative(self, k: int, c):
        raise NotImplementedError

    def density(self, order: int) -> Callable[[np.ndarray], np.ndarray]:
        """Vectorized t -> f^(order)(t) in float64."""
        return np.vectorize(lambda t: float(self.derivative(order, float(t))), otypes=[float])

    def closed_moment(self, order: int, j: int, a, b):
        """Integral of t**j * f^(order)(t) over [a, b], or None if unknown."""
        return None

    def mp_density(self, order: int):
        """t -> f^(order)(t) in mpmath arithmetic at the working precision,
        or None when only a float oracle exists."""
        return None

    def identically_zero(self, order: int) -> bool:
        return False

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Power(FunctionSpec):
    """f(z) = z**p."""

    p: object

    def __post_init__(self):
        p = self.p
        if isinstance(p, float) and p.is_integer():
            p = Fraction(p)
        if is_exact(p):
            p = Fraction(p)
        object.__setattr__(self, "p", p)

    @property
    def label(self) -> str:
        p = self.p
        if isinstance(p, Fraction) and p.denominator == 1:
            return f"power:{p.numerator}"
        return f"power:{p}"

    @property
    def is_integer(self) -> bool:
        return isinstance(self.p, Fraction) and self.p.denominator == 1

    def derivative(self, k: int, c):
        coef = falling_factorial(self.p, k)
        if coef == 0:
            return coef
        return coef * rational_power(c, self.p - k)

    def density(self, order: int):
        coef = float(falling_factorial(self.p, order))
        e = float(self.p - order)
        return lambda t: coef * np.power(t, e)

    def identically_zero(self, order: int) -> bool:
        return falling_factorial(self.p, order) == 0

    def mp_density(self, order: int):
        coef = _mpf(falling_factorial(self.p, order))
        e = _mpf(self.p - order)
        return lambda t: coef * mpmath.power(t, e)

    def closed_moment(self, order: int, j: int, a, b):
        coef = falling_factorial(self.p, order)
        e = self.p - order + j + 1
        if e == 0:
            return coef * _log_ratio(b, a)
        return coef * (rational_power(b, e) - rational_power(a, e)) / e


@dataclass(frozen=True)
class Exp(FunctionSpec):
    label = "exp"

    def derivative(self, k: int, c):
        return math.exp(c)

    def density(self, order: int):
        return np.exp

    def mp_density(self, order: int):
        return mpmath.exp

    def closed_moment(self, order: int, j: int, a, b):
        # integral of t^j e^t = e^t sum_i (-1)^i j!/(j-i)! t^(j-i)
        def anti(t):
            t = float(t)
            return math.exp(t) * sum((-1) ** i * math.perm(j, i) * t ** (j - i)
                                     for i in range(j + 1))
        return anti(b) - anti(a)


@dataclass(frozen=True)
class Log(FunctionSpec):
    label = "log"

    def derivative(self, k: int, c):
        if k == 0:
            return Fraction(0) if c == 1 else math.log(c)
        coef = (-1) ** (k - 1) * math.factorial(k - 1)
        if is_exact(c):
            return Fraction(coef) / Fraction(c) ** k
        return coef / float(c) ** k

    def density(self, order: int):
        coef = float((-1) ** (order - 1) * math.factorial(order - 1))
        return lambda t: coef * np.power(t, -float(order))

    def mp_density(self, order: int):
        coef = (-1) ** (order - 1) * math.factorial(order - 1)
        return lambda t: coef * mpmath.power(t, -order)

    def closed_moment(self, order: int, j: int, a, b):
        if order == 0:
            return None
        coef = (-1) ** (order - 1) * math.factorial(order - 1)
        e = j - order + 1
        if e == 0:
            return coef * _log_ratio(b, a)
        return coef * (rational_power(b, e) - rational_power(a, e)) / Fraction(e)


@dataclass(frozen=True)
class CustomOracle(FunctionSpec):
    """Derivatives from a user callback ``fn(k, c)``.

    The callback must be deterministic and safe to call concurrently.
    """

    fn: Callable = field(compare=False)
    label: str = "custom"

    def derivative(self, k: int, c):
        return self.fn(k, c)


def parse_spec(text: str) -> FunctionSpec:
    """Parse ``power:<p>``, ``exp`` or ``log``."""
    text = text.strip()
    if text == "exp":
        return Exp()
    if text == "log":
        return Log()
    if text.startswith("power:"):
        try:
            return Power(Fraction(text[len("power:"):]))
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"bad exponent in {text!r}") from exc
    raise PreconditionError(f"unknown function spec {text!r}; use power:<p>, exp or log")


def kth_derivative(f: FunctionSpec, k: int, c):
    """f^(k)(c); exact for closed-form variants at rational points."""
    if k < 0:
        raise PreconditionError("derivative order must be non-negative")
    if not c > 0:
        raise DomainError(f"evaluation point {c} is not in (0, inf)")
    return f.derivative(k, c)


def check_interval(a, b) -> None:
    if not 0 < a < b:
        raise PreconditionError(f"need 0 < a < b, got a={a}, b={b}")


def check_density(f: FunctionSpec, order: int, a, b, samples: int = 129) -> int:
    """Return the constant sign of f^(order) on [a, b].

    Raises SignChange if the density vanishes identically, or (for sampled
    variants) if any sample is zero or of the wrong sign.
    """
    if f.identically_zero(order):
        if isinstance(f, Power):
            raise ExcludedExponent(
                f"{f.label}: derivative of order {order} vanishes identically")
        raise SignChange(f"{f}: f^({order}) vanishes identically")
    if isinstance(f, (Power, Log)):
        val = f.derivative(order, a)
        return 1 if val > 0 else -1
    if isinstance(f, Exp):
        return 1
    ts = np.linspace(float(a), float(b), samples)
    vals = np.asarray([float(f.derivative(order, t)) for t in ts])
    if np.any(vals == 0) or not (np.all(vals > 0) or np.all(vals < 0)):
        raise SignChange(f"{f}: f^({order}) is not of one sign on [{a}, {b}]")
    return 1 if vals[0] > 0 else -1


@dataclass(frozen=True)
class MomentIntegrals:
    """Moments m_j = integral of t^j f^(r+1)(t) over [a, b], j = 0..r."""

    r: int
    a: object
    b: object
    moments: tuple
    method: str = "closed"

    def m(self, j: int):
        return self.moments[j]

    @property
    def A(self):
        return self.moments[0]

    @property
    def B(self):
        return self.moments[1]

    @property
    def C(self):
        return self.moments[2]

    @property
    def D(self):
        return self.moments[3]

    @property
    def exact(self) -> bool:
        return all(is_exact(m) for m in self.moments)


def _quad_moment(f: FunctionSpec, order: int, j: int, a, b) -> float:
    dens = f.density(order)
    value, _ = integrate(lambda t: t ** j * dens(t), a, b)
    return value


def moment_integrals(f: FunctionSpec, r: int, a, b, method: str = "auto") -> MomentIntegrals:
    """Moments of the density f^(r+1) on [a, b].

    ``method`` is ``"closed"`` (antiderivatives), ``"quadrature"``, or
    ``"auto"`` (closed form where available, quadrature otherwise).
    """
    if r < 0:
        raise PreconditionError("order r must be non-negative")
    check_interval(a, b)
    check_density(f, r + 1, a, b)
    out = []
    used = "closed"
    for j in range(r + 1):
        val = None
        if method in ("auto", "closed"):
            val = f.closed_moment(r + 1, j, a, b)
            if val is None and method == "closed":
                raise PreconditionError(f"{f} has no closed-form moments")
        if val is None:
            val = _quad_moment(f, r + 1, j, a, b)
            used = "quadrature"
        out.append(val)
    return MomentIntegrals(r, a, b, tuple(out), used)


def center_of_mass(f: FunctionSpec, r: int, a, b, method: str = "closed"):
    """Center of mass of [a, b] under the density |f^(r+1)|.

    ``"closed"`` uses the integration-by-parts form built from f^(r-1) and
    f^(r) at the endpoints; ``"moments"`` is m_1/m_0 from
    :func:`moment_integrals`; ``"quadrature"`` computes both integrals
    numerically.
    """
    if r < 1:
        raise PreconditionError("center of mass needs r >= 1")
    check_interval(a, b)
    check_density(f, r + 1, a, b)
    if method == "closed":
        fa1, fa = f.derivative(r - 1, a), f.derivative(r, a)
        fb1, fb = f.derivative(r - 1, b), f.derivative(r, b)
        return -((fb1 - b * fb) - (fa1 - a * fa)) / (fb - fa)
    if method == "moments":
        mom = moment_integrals(f, r, a, b)
        return mom.B / mom.A
    if method == "quadrature":
        return _quad_moment(f, r + 1, 1, a, b) / _quad_moment(f, r + 1, 0, a, b)
    raise PreconditionError(f"unknown method {method!r}")
