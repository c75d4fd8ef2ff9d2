"""Float kernels for the root engine: Horner evaluation and Aberth iteration.

Each kernel exists twice: a numba ``@njit`` version (Gauss-Seidel Aberth
sweep, scalar loops) and a pure-numpy version (Jacobi sweep, vectorized).
The numba path is used when numba imports and ``TAYLOR_MEAN_NUMBA`` is not
set to ``0``.  Both paths take coefficients highest power first.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

ENV_FLAG = "TAYLOR_MEAN_NUMBA"
_EPS = np.finfo(float).eps


def _env_wants_numba() -> bool:
    return os.environ.get(ENV_FLAG, "1").strip().lower() not in ("0", "false", "no", "off")


_backend = "numba" if (HAVE_NUMBA and _env_wants_numba()) else "numpy"


def backend() -> str:
    return _backend


def set_backend(name: str) -> str:
    """Switch kernels at runtime; returns the previous backend name."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    prev, _backend = _backend, name
    return prev


# -- pure numpy ------------------------------------------------------------

def horner_np(coeffs: np.ndarray, zs: np.ndarray) -> np.ndarray:
    out = np.zeros(zs.shape, dtype=np.result_type(coeffs, zs))
    for c in coeffs:
        out = out * zs + c
    return out


def _horner_with_derivative_np(coeffs, zs):
    p = np.zeros(zs.shape, dtype=complex)
    dp = np.zeros(zs.shape, dtype=complex)
    for c in coeffs:
        dp = dp * zs + p
        p = p * zs + c
    return p, dp


def aberth_np(coeffs: np.ndarray, z0: np.ndarray, max_iter: int):
    z = z0.astype(complex).copy()
    n = z.size
    off = ~np.eye(n, dtype=bool)
    for it in range(1, max_iter + 1):
        p, dp = _horner_with_derivative_np(coeffs, z)
        diff = z[:, None] - z[None, :]
        inv = np.zeros_like(diff)
        inv[off] = 1.0 / diff[off]
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dp != 0, p / dp, 0.0)
            w = np.where(p != 0, ratio / (1.0 - ratio * s), 0.0)
        w[~np.isfinite(w)] = 0.0
        z -= w
        if np.all(np.abs(w) <= 16 * _EPS * np.maximum(np.abs(z), 1.0)):
            return z, it, True
    return z, max_iter, False


# -- numba -----------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def horner_nb(coeffs, zs):
        out = np.empty(zs.size, dtype=np.complex128)
        for k in range(zs.size):
            acc = 0j
            z = zs[k]
            for c in coeffs:
                acc = acc * z + c
            out[k] = acc
        return out

    @njit(cache=True)
    def aberth_nb(coeffs, z0, max_iter):
        z = z0.astype(np.complex128).copy()
        n = z.size
        eps = 2.220446049250313e-16
        for it in range(1, max_iter + 1):
            done = True
            for i in range(n):
                zi = z[i]
                p = 0j
                dp = 0j
                for c in coeffs:
                    dp = dp * zi + p
                    p = p * zi + c
                if p == 0 or dp == 0:
                    continue
                s = 0j
                for j in range(n):
                    if j != i:
                        s += 1.0 / (zi - z[j])
                ratio = p / dp
                w = ratio / (1.0 - ratio * s)
                if not (np.isfinite(w.real) and np.isfinite(w.imag)):
                    continue
                z[i] = zi - w
                if abs(w) > 16 * eps * max(abs(z[i]), 1.0):
                    done = False
            if done:
                return z, it, True
        return z, max_iter, False


def horner(coeffs: np.ndarray, zs: np.ndarray) -> np.ndarray:
    zs = np.asarray(zs, dtype=complex).ravel()
    coeffs = np.asarray(coeffs, dtype=complex)
    if _backend == "numba":
        return horner_nb(coeffs, zs)
    return horner_np(coeffs, zs)


def aberth(coeffs: np.ndarray, z0: np.ndarray, max_iter: int):
    """Simultaneous Aberth-Ehrlich iteration; returns (roots, iterations, converged)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    z0 = np.asarray(z0, dtype=complex)
    if _backend == "numba":
        return aberth_nb(coeffs, z0, max_iter)
    return aberth_np(coeffs, z0, max_iter)
