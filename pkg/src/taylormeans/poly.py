"""Dense univariate polynomials over exact rationals or float64.

Coefficients are stored lowest power first.  The exact domain holds
``fractions.Fraction`` values; the float domain holds Python floats, or
complex numbers when a complex coefficient is supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Number
from typing import Iterable, Sequence

from .errors import EndpointRoot, NotDivisible, PreconditionError, ZeroPolynomial

EXACT = "exact"
FLOAT = "float"


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _to_float(c):
    if isinstance(c, complex):
        return c if c.imag else c.real
    return float(c)


class Polynomial:
    """Immutable dense polynomial.

    Trailing zero coefficients are stripped on construction, so two exact
    polynomials compare equal iff their coefficient tuples match.  The zero
    polynomial has an empty coefficient tuple and ``degree`` of ``None``.
    """

    __slots__ = ("_coeffs", "_domain")

    def __init__(self, coeffs: Iterable = (), domain: str | None = None):
        coeffs = list(coeffs)
        if domain is None:
            domain = EXACT if all(is_exact(c) for c in coeffs) else FLOAT
        if domain == EXACT:
            coeffs = [Fraction(c) for c in coeffs]
        elif domain == FLOAT:
            coeffs = [_to_float(c) for c in coeffs]
        else:
            raise ValueError(f"unknown domain {domain!r}")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)
        self._domain = domain

    @classmethod
    def x(cls, domain: str = EXACT) -> "Polynomial":
        return cls((0, 1), domain)

    @classmethod
    def constant(cls, c, domain: str | None = None) -> "Polynomial":
        return cls((c,), domain)

    @classmethod
    def from_roots(cls, roots: Sequence, leading=1) -> "Polynomial":
        p = cls.constant(leading)
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @classmethod
    def binomial_power(cls, c, k: int, domain: str | None = None) -> "Polynomial":
        """(x - c)**k expanded by the binomial theorem."""
        return cls([comb(k, i) * (-c) ** (k - i) for i in range(k + 1)], domain)

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def domain(self) -> str:
        return self._domain

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> int | None:
        return len(self._coeffs) - 1 if self._coeffs else None

    @property
    def leading(self):
        if not self._coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __getitem__(self, i: int):
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, Number):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self._coeffs)
        return f"Polynomial([{terms}], {self._domain!r})"

    def _join(self, other: "Polynomial") -> str:
        return EXACT if self._domain == other._domain == EXACT else FLOAT

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, Number):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self), len(other))
        return Polynomial([self[i] + other[i] for i in range(n)], self._join(other))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self._coeffs], self._domain)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number) and not isinstance(other, Polynomial):
            dom = self._domain if is_exact(other) else FLOAT
            return Polynomial([c * other for c in self._coeffs], dom)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Polynomial((), self._join(other))
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return Polynomial(out, self._join(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not isinstance(scalar, Number):
            return NotImplemented
        if is_exact(scalar) and self._domain == EXACT:
            return Polynomial([c / Fraction(scalar) for c in self._coeffs], EXACT)
        return Polynomial([c / scalar for c in self._coeffs], FLOAT)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.constant(1, self._domain)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, z):
        return evaluate(self, z)

    def derivative(self, k: int = 1) -> "Polynomial":
        return differentiate(self, k)

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """Return self(inner(x)) by Horner's scheme."""
        out = Polynomial((), self._join(inner))
        for c in reversed(self._coeffs):
            out = out * inner + c
        return out

    def to_float(self) -> "Polynomial":
        return Polynomial(self._coeffs, FLOAT)

    def to_exact(self) -> "Polynomial":
        """Exact conversion; every float is a dyadic rational."""
        if any(isinstance(c, complex) for c in self._coeffs):
            raise PreconditionError("complex coefficients have no exact form")
        return Polynomial(self._coeffs, EXACT)

    def monic(self) -> "Polynomial":
        return self / self.leading

    def divmod_linear(self, root) -> tuple["Polynomial", object]:
        """Synthetic division by (x - root); returns (quotient, remainder)."""
        if self.is_zero:
            return self, 0
        acc = 0
        out = []
        for c in reversed(self._coeffs):
            acc = acc * root + c
            out.append(acc)
        rem = out.pop()
        dom = self._domain if (is_exact(root) or self._domain == FLOAT) else FLOAT
        return Polynomial(reversed(out), dom), rem


def poly_divmod(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Long division num = q * den + rem with deg rem < deg den."""
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(num.coeffs)
    dom = EXACT if num.domain == den.domain == EXACT else FLOAT
    dd = den.degree
    lead = den.leading
    if dom == EXACT:
        lead = Fraction(lead)
    q = [0] * max(len(rem) - dd, 0)
    for k in range(len(rem) - dd - 1, -1, -1):
        coef = rem[k + dd] / lead
        q[k] = coef
        if coef:
            for i, c in enumerate(den.coeffs):
                rem[k + i] -= coef * c
    return Polynomial(q, dom), Polynomial(rem[:dd], dom)


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd of two exact polynomials (Euclid over the rationals)."""
    if p.domain != EXACT or q.domain != EXACT:
        raise PreconditionError("gcd needs exact polynomials")
    while not q.is_zero:
        p, q = q, poly_divmod(p, q)[1]
    return p if p.is_zero else p.monic()


def evaluate(p: Polynomial, z):
    """Horner evaluation; exact when ``p`` is exact and ``z`` rational."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * z + c
    if isinstance(acc, int) and p.domain == EXACT:
        return Fraction(acc)
    return acc


def differentiate(p: Polynomial, k: int = 1) -> Polynomial:
    if k < 0:
        raise PreconditionError("derivative order must be non-negative")
    coeffs = list(p.coeffs)
    for _ in range(k):
        coeffs = [i * coeffs[i] for i in range(1, len(coeffs))]
    return Polynomial(coeffs, p.domain)


def divide_out_root_power(p: Polynomial, root, m: int) -> Polynomial:
    """Exact quotient Q with p = Q * (x - root)**m.

    Every stage of the deflation must leave a zero remainder; anything else
    raises :class:`NotDivisible`.
    """
    if p.domain != EXACT or not is_exact(root):
        raise PreconditionError("exact deflation needs exact coefficients and root")
    if m < 0:
        raise PreconditionError("multiplicity must be non-negative")
    q = p
    root = Fraction(root)
    for stage in range(1, m + 1):
        q, rem = q.divmod_linear(root)
        if rem != 0:
            raise NotDivisible(f"(x - {root})^{stage} does not divide: remainder {rem}")
    return q


@dataclass(frozen=True)
class SignSequence:
    """Signs of a value sequence and the count of strict alternations."""

    signs: tuple
    changes: int

    @classmethod
    def of(cls, values: Iterable) -> "SignSequence":
        signs = tuple((v > 0) - (v < 0) for v in values)
        nonzero = [s for s in signs if s]
        changes = sum(1 for s, t in zip(nonzero, nonzero[1:]) if s != t)
        return cls(signs, changes)


def descartes_sign_changes(p: Polynomial) -> int:
    if p.is_zero:
        raise ZeroPolynomial("Descartes count of the zero polynomial")
    return SignSequence.of(p.coeffs).changes


def derivative_signs(p: Polynomial, t) -> SignSequence:
    """Signs of (p(t), p'(t), ..., p^(deg)(t))."""
    values = []
    q = p
    while not q.is_zero:
        values.append(evaluate(q, t))
        q = differentiate(q)
    return SignSequence.of(values)


def fourier_budan_bound(p: Polynomial, a, b) -> int:
    """Fourier-Budan count V(a) - V(b).

    The number of roots in (a, b), with multiplicity, equals this value
    minus a non-negative even integer.
    """
    if not a < b:
        raise PreconditionError("need a < b")
    if p.is_zero:
        raise ZeroPolynomial("Fourier-Budan count of the zero polynomial")
    if evaluate(p, a) == 0 or evaluate(p, b) == 0:
        raise EndpointRoot(f"polynomial vanishes at an endpoint of ({a}, {b})")
    return derivative_signs(p, a).changes - derivative_signs(p, b).changes


def cubic_discriminant(a1, a2, a3):
    """Discriminant of the monic cubic x^3 + a1 x^2 + a2 x + a3."""
    return (18 * a1 * a2 * a3 + a1 * a1 * a2 * a2 - 27 * a3 * a3
            - 4 * a2 ** 3 - 4 * a1 ** 3 * a3)
