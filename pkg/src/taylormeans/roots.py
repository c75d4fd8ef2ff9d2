"""Complex roots of low-degree dense polynomials and conjugate pairing."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .config import DEFAULT
from .errors import NoConvergence, PreconditionError, UnpairedRoot
from .poly import EXACT, Polynomial


@dataclass(frozen=True)
class RootSet:
    """Real roots plus conjugate pairs stored as (x, y) with y > 0."""

    reals: tuple
    pairs: tuple
    residual: float = 0.0

    @property
    def degree(self) -> int:
        return len(self.reals) + 2 * len(self.pairs)

    def as_complex(self) -> list[complex]:
        out = [complex(x) for x in self.reals]
        for x, y in self.pairs:
            out += [complex(x, y), complex(x, -y)]
        return out


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    """Points on a circle about the root centroid (c is monic, high first)."""
    n = c.size - 1
    center = -c[1] / n
    shifted = _kernels.horner(c, np.array([center]))[0]
    radius = abs(shifted) ** (1.0 / n) if shifted != 0 else 1.0
    radius = max(radius, 1e-3 * max(1.0, abs(center)))
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return center + radius * np.exp(1j * angles)


def _monic_float(p: Polynomial) -> np.ndarray:
    if p.is_zero or p.degree < 1:
        raise PreconditionError("root finding needs degree >= 1")
    q = p.monic()  # exact division when p is exact
    return np.array([complex(c) for c in reversed(q.coeffs)])


def raw_roots(p: Polynomial, tol: float | None = None) -> np.ndarray:
    """All ``deg p`` complex roots, unpaired.

    Roots are computed for the monic normalization of ``p``; the residual
    |monic(z)| of every root must not exceed ``tol``.
    """
    tol = DEFAULT.root_residual if tol is None else tol
    c = _monic_float(p)
    n = c.size - 1
    if n == 1:
        roots = np.array([-c[1]])
    else:
        roots, _, _ = _kernels.aberth(c, _initial_guesses(c), DEFAULT.root_max_iter)
    res = np.abs(_kernels.horner(c, roots))
    worst = float(res.max())
    if not worst <= tol:
        raise NoConvergence(f"root residual {worst:.3e} exceeds tolerance {tol:.1e}")
    return roots


def _residual(p: Polynomial, zs) -> float:
    c = _monic_float(p)
    return float(np.abs(_kernels.horner(c, np.asarray(zs, dtype=complex))).max())


def pair_conjugates(roots, tol: float | None = None, residual: float = 0.0) -> RootSet:
    """Split roots of a real polynomial into reals and conjugate pairs.

    A root with |Im z| <= tol * max(1, |z|) is snapped to the real axis; every
    other root must have a conjugate partner within the same relative
    distance, otherwise :class:`UnpairedRoot` is raised.
    """
    tol = DEFAULT.pair_rel if tol is None else tol
    reals, upper, lower = [], [], []
    for z in map(complex, roots):
        scale = max(1.0, abs(z))
        if abs(z.imag) <= tol * scale:
            reals.append(z.real)
        elif z.imag > 0:
            upper.append(z)
        else:
            lower.append(z)
    pairs = []
    for z in upper:
        if not lower:
            raise UnpairedRoot(f"root {z} has no conjugate partner")
        k = min(range(len(lower)), key=lambda i: abs(lower[i] - z.conjugate()))
        w = lower[k]
        if abs(w - z.conjugate()) > tol * max(1.0, abs(z)):
            raise UnpairedRoot(f"root {z} has no conjugate partner within {tol:g}")
        lower.pop(k)
        pairs.append((0.5 * (z.real + w.real), 0.5 * (z.imag - w.imag)))
    if lower:
        raise UnpairedRoot(f"root {lower[0]} has no conjugate partner")
    return RootSet(tuple(sorted(reals)), tuple(sorted(pairs)), residual)


def all_roots(p: Polynomial, tol: float | None = None, pair_tol: float | None = None) -> RootSet:
    """Every complex root of a real polynomial, classified into reals and pairs."""
    if any(isinstance(c, complex) for c in p.coeffs):
        raise PreconditionError("all_roots expects real coefficients; use raw_roots")
    roots = raw_roots(p, tol)
    rs = pair_conjugates(roots, pair_tol)
    return RootSet(rs.reals, rs.pairs, _residual(p, rs.as_complex()))


def real_roots_in(p: Polynomial, a, b, tol: float | None = None) -> list[float]:
    if not a < b:
        raise PreconditionError("need a < b")
    return [x for x in all_roots(p, tol).reals if a < x < b]


def newton_polish(p: Polynomial, z: complex, steps: int = 3) -> complex:
    """A few Newton steps on an exact polynomial, evaluated in float."""
    c = _monic_float(p)
    dc = np.polyder(c)
    for _ in range(steps):
        fz = _kernels.horner(c, np.array([z]))[0]
        dz = _kernels.horner(dc, np.array([z]))[0]
        if dz == 0 or fz == 0:
            break
        step = fz / dz
        if not cmath.isfinite(step):
            break
        z = z - step
    return complex(z)


__all__ = ["RootSet", "all_roots", "real_roots_in", "pair_conjugates", "raw_roots",
           "newton_polish", "EXACT"]
