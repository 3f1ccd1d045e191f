"""Hot inner kernels for the Monte Carlo cone-membership count.

Two interchangeable implementations: a numba ``@njit`` kernel (default when
numba imports cleanly) and a vectorized pure-numpy fallback.  Select with the
environment variable ``SIMCURV_BACKEND`` = ``numba`` | ``numpy`` | ``auto``.

Both consume the same pre-generated sample block, so estimates agree up to
floating-point summation order.  See ``benchmarks/bench_kernels.py`` for a
timing comparison.
"""

from __future__ import annotations

import os

import numpy as np


def _count_numpy(samples: np.ndarray, solve_t: np.ndarray) -> int:
    """Count rows z with all coordinates of (M @ z) >= 0, M = solve_t.T."""
    return int(((samples @ solve_t) >= 0.0).all(axis=1).sum())


_HAVE_NUMBA = False
try:  # pragma: no cover - import success depends on the environment
    if os.environ.get("SIMCURV_BACKEND", "auto").lower() != "numpy":
        from numba import njit

        @njit(cache=True, nogil=True)
        def _count_numba(samples, solve_t):  # pragma: no cover - compiled
            n, c = samples.shape
            hits = 0
            for row in range(n):
                inside = True
                for j in range(c):
                    acc = 0.0
                    for k in range(c):
                        acc += samples[row, k] * solve_t[k, j]
                    if acc < 0.0:
                        inside = False
                        break
                if inside:
                    hits += 1
            return hits

        _HAVE_NUMBA = True
except ImportError:
    pass


def backend_name() -> str:
    """The backend that count_cone_hits will actually use."""
    requested = os.environ.get("SIMCURV_BACKEND", "auto").lower()
    if requested == "numpy":
        return "numpy"
    if requested == "numba":
        if not _HAVE_NUMBA:
            raise RuntimeError("SIMCURV_BACKEND=numba but numba is unavailable")
        return "numba"
    return "numba" if _HAVE_NUMBA else "numpy"


def count_cone_hits(samples: np.ndarray, solve_t: np.ndarray) -> int:
    """Number of sample directions lying inside the simplicial cone.

    ``samples`` is a (block, c) array of isotropic Gaussian directions and
    ``solve_t`` the transposed inverse of the (column-)generator matrix, so a
    row z is inside precisely when every generator coefficient of z is
    non-negative.
    """
    if backend_name() == "numba":
        return int(_count_numba(samples, solve_t))
    return _count_numpy(samples, solve_t)
