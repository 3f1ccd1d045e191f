"""Timing comparison of the cone-membership kernels: numba vs pure numpy.

The Monte Carlo membership count dominates solid-angle estimation, so both
backends are timed on the same pre-generated sample blocks across cone
dimensions.  Run:

    python benchmarks/bench_kernels.py [--samples 2000000] [--repeats 5]

Backend selection elsewhere in the package honors SIMCURV_BACKEND; this
script times both implementations directly.
"""

import argparse
import time

import numpy as np

from simcurv import _kernels
from simcurv.generators import random_simplex
from simcurv.geometry import projected_cone_generators


def make_solver(codim: int, seed: int) -> np.ndarray:
    simplex = random_simplex(codim, seed=seed)
    generators = projected_cone_generators(
        (0,), tuple(range(codim + 1)), simplex
    )
    return np.linalg.inv(generators.T).T


def time_fn(fn, samples, solve_t, repeats):
    best = float("inf")
    hits = None
    for _ in range(repeats):
        start = time.perf_counter()
        hits = fn(samples, solve_t)
        best = min(best, time.perf_counter() - start)
    return best, hits


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=2_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if not _kernels._HAVE_NUMBA:
        print("numba unavailable; timing the numpy path only")

    rng = np.random.Generator(np.random.Philox(args.seed))
    print(f"{'codim':>5}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}  agreement")
    for codim in (3, 4, 5, 6):
        solve_t = make_solver(codim, seed=codim)
        samples = rng.standard_normal((args.samples, codim))
        t_numpy, hits_numpy = time_fn(
            _kernels._count_numpy, samples, solve_t, args.repeats
        )
        if _kernels._HAVE_NUMBA:
            _kernels._count_numba(samples[:1], solve_t)  # compile outside timing
            t_numba, hits_numba = time_fn(
                _kernels._count_numba, samples, solve_t, args.repeats
            )
            agree = abs(hits_numpy - hits_numba) <= 2
            print(
                f"{codim:>5}  {t_numpy:>9.4f}s  {t_numba:>9.4f}s  "
                f"{t_numpy / t_numba:>7.2f}x  {agree}"
            )
        else:
            print(f"{codim:>5}  {t_numpy:>9.4f}s  {'-':>10}  {'-':>8}  -")


if __name__ == "__main__":
    main()
