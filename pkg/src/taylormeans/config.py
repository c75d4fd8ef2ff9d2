"""Numerical tolerances used across the package, kept in one record."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # max |residual| accepted for a reported root
    residual: float = 1e-8
    # relative tolerance for identity checks (center of mass, pair agreement)
    identity_rel: float = 1e-9
    # coefficient-route vs integral-route agreement in the float domain
    dual_route_rel: float = 1e-10
    # |Im z| <= pair_rel * max(1, |z|) snaps a root to the real axis
    pair_rel: float = 1e-9
    quad_abs: float = 1e-12
    quad_rel: float = 1e-13
    quad_max_subdivisions: int = 2000
    # polynomial-level residual accepted by the root solver (monic scaling)
    root_residual: float = 1e-8
    root_max_iter: int = 500


DEFAULT = Tolerances()
