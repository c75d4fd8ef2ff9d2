"""Compare the numba and numpy root-engine kernels.

    python3 benchmarks/bench_kernels.py [--polys 2000] [--degrees 3,5,8] [--repeat 3]

Both backends solve the same seeded batch of monic polynomials; the script
reports the best wall time per backend and the largest root discrepancy.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from taylormeans import _kernels
from taylormeans.roots import _initial_guesses


def make_batch(n_polys: int, degree: int, seed: int) -> list[np.ndarray]:
    rng = np.random.default_rng(seed)
    batch = []
    for _ in range(n_polys):
        roots = rng.normal(size=degree) + 1j * rng.normal(size=degree)
        batch.append(np.poly(roots).astype(complex))
    return batch


def solve_all(batch, max_iter: int = 500):
    out = []
    for c in batch:
        roots, _, _ = _kernels.aberth(c, _initial_guesses(c), max_iter)
        _kernels.horner(c, roots)
        out.append(np.sort_complex(roots))
    return out


def best_time(batch, repeat: int):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = solve_all(batch)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--polys", type=int, default=2000)
    ap.add_argument("--degrees", default="3,5,8")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=12345)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    prev = _kernels.backend()
    print(f"{'degree':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8} {'max |diff|':>12}")
    try:
        for degree in (int(d) for d in args.degrees.split(",")):
            batch = make_batch(args.polys, degree, args.seed + degree)
            _kernels.set_backend("numba")
            solve_all(batch[:2])  # trigger compilation outside the timed region
            t_nb, r_nb = best_time(batch, args.repeat)
            _kernels.set_backend("numpy")
            t_np, r_np = best_time(batch, args.repeat)
            diff = max(float(np.max(np.abs(a - b))) for a, b in zip(r_nb, r_np))
            print(f"{degree:>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f} {diff:>12.2e}")
    finally:
        _kernels.set_backend(prev)


if __name__ == "__main__":
    main()
