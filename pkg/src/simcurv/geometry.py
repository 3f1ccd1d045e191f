"""Embedded complexes, normalized solid angles, Sommerville residuals, hulls.

Angles are normalized so the full unit sphere has measure 1 in every
dimension.  The angle of a top simplex along one of its faces is computed
intrinsically in the affine hull of the simplex:

* codimension 0 -> exactly 1;
* codimension 1 -> exactly 1/2;
* codimension 2 -> planar wedge angle / 2 pi via an inverse cosine
  (noise-free, reported as exact);
* codimension >= 3 -> Monte Carlo: project the opposite vertices onto the
  orthogonal complement of the face, then count isotropic Gaussian
  directions falling inside the resulting simplicial cone.

Monte Carlo streams are counter-based: each (seed, face index, top index,
block index) tuple keys an independent Philox stream, so results are
reproducible bit-for-bit regardless of thread count or evaluation order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from simcurv._kernels import count_cone_hits
from simcurv.complexes import Simplex, SimplicialComplex, as_simplex

DEGENERACY_TOL = 1e-9
_RANK_TOL = 1e-10


class GeometryError(ValueError):
    """Geometric inconsistency: degenerate simplex, bad face pair, etc."""


class DegeneratePositionError(GeometryError):
    """Input points are too close to a degenerate position; perturb them."""


def default_thread_count() -> int:
    env = os.environ.get("ASC_CURV_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class AngleConfig:
    """Monte Carlo settings for solid-angle estimation."""

    samples: int = 1_000_000
    seed: int = 0
    threads: int | None = None
    block_size: int = 1 << 18

    def __post_init__(self):
        if self.samples < 1000:
            raise ValueError("samples must be at least 1000")
        if self.block_size < 1:
            raise ValueError("block_size must be positive")

    @property
    def parallel(self) -> bool:
        return self.resolved_threads() > 1

    def resolved_threads(self) -> int:
        return self.threads if self.threads else default_thread_count()


@dataclass(frozen=True)
class AngleValue:
    """A normalized angle in [0, 1] with its provenance.

    ``rational`` is set when the value is exactly a known fraction
    (codimension 0 and 1); dihedral angles are exact-method but float-valued.
    """

    value: float
    std_error: float
    method: str  # "exact" | "monte_carlo"
    samples: int = 0
    rational: Fraction | None = None

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"angle {self.value} outside [0, 1]")
        if (self.std_error == 0.0) != (self.method == "exact"):
            raise ValueError("std_error must be zero exactly for exact angles")


class EmbeddedComplex:
    """A simplicial complex together with vertex coordinates in R^d."""

    def __init__(
        self,
        complex: SimplicialComplex,
        coordinates: Mapping[int, Sequence[float]],
        ambient_dim: int | None = None,
    ):
        self.complex = complex
        coords = {int(v): np.asarray(p, dtype=float) for v, p in coordinates.items()}
        dims = {p.shape for p in coords.values()}
        if len(dims) > 1:
            raise GeometryError(f"inconsistent coordinate lengths: {dims}")
        d = next(iter(dims))[0] if dims else 0
        self.ambient_dim = ambient_dim if ambient_dim is not None else d
        if dims and self.ambient_dim != d:
            raise GeometryError(
                f"ambient_dim {self.ambient_dim} does not match coordinates of length {d}"
            )
        missing = [v for v in complex.vertices() if v not in coords]
        if missing:
            raise GeometryError(f"missing coordinates for vertices {missing}")
        if self.ambient_dim < complex.dim:
            raise GeometryError(
                f"ambient dimension {self.ambient_dim} below complex dimension {complex.dim}"
            )
        self.coordinates = coords
        for m in complex.maximal:
            if _affine_rank(self.points(m)) != len(m) - 1:
                raise GeometryError(f"simplex {m} is affinely degenerate")

    def points(self, simplex: Iterable[int]) -> np.ndarray:
        return np.array([self.coordinates[v] for v in simplex], dtype=float)

    def barycenter(self, simplex: Iterable[int]) -> np.ndarray:
        return self.points(simplex).mean(axis=0)

    def __repr__(self) -> str:
        return f"EmbeddedComplex(dim={self.complex.dim}, ambient={self.ambient_dim})"


def _affine_rank(points: np.ndarray) -> int:
    if len(points) <= 1:
        return 0
    diffs = points[1:] - points[0]
    scale = max(1.0, float(np.abs(diffs).max()))
    s = np.linalg.svd(diffs, compute_uv=False)
    return int((s > _RANK_TOL * scale).sum())


def _orthonormal_rows(vectors: np.ndarray, expect_rank: int) -> np.ndarray:
    """Orthonormal basis (rows) of the row space; errors if rank is short."""
    if vectors.size == 0 or expect_rank == 0:
        return np.zeros((0, vectors.shape[1] if vectors.ndim == 2 else 0))
    u, s, vt = np.linalg.svd(vectors, full_matrices=False)
    scale = max(1.0, float(s[0]) if len(s) else 1.0)
    rank = int((s > _RANK_TOL * scale).sum())
    if rank != expect_rank:
        raise GeometryError(
            f"degenerate configuration: affine rank {rank}, expected {expect_rank}"
        )
    return vt[:expect_rank]


def _pair_stream(cfg: AngleConfig, eta_index: int, sigma_index: int, block: int):
    seq = np.random.SeedSequence(
        entropy=cfg.seed & (1 << 64) - 1,  # SeedSequence wants non-negative entropy
        spawn_key=(eta_index, sigma_index, block),
    )
    return np.random.Generator(np.random.Philox(seq))


def _estimate_cone_fraction(
    solve_t: np.ndarray, cfg: AngleConfig, eta_index: int, sigma_index: int
) -> tuple[float, float]:
    c = solve_t.shape[0]
    hits = 0
    done = 0
    block = 0
    while done < cfg.samples:
        size = min(cfg.block_size, cfg.samples - done)
        rng = _pair_stream(cfg, eta_index, sigma_index, block)
        z = rng.standard_normal((size, c))
        hits += count_cone_hits(z, solve_t)
        done += size
        block += 1
    p = hits / cfg.samples
    std_error = max(math.sqrt(p * (1.0 - p) / cfg.samples), 1.0 / cfg.samples)
    return p, std_error


def projected_cone_generators(
    eta: Simplex, sigma: Simplex, embedded: EmbeddedComplex
) -> np.ndarray:
    """Generators of the cone of sigma along eta, expressed in an orthonormal
    basis of the orthogonal complement of aff(eta) inside aff(sigma).

    Returns a (c, c) matrix whose rows are the generators, c = codimension.
    """
    eta = as_simplex(eta)
    sigma = as_simplex(sigma)
    if not set(eta) <= set(sigma):
        raise GeometryError(f"{eta} is not a face of {sigma}")
    if sigma not in embedded.complex:
        raise KeyError(f"simplex {sigma} is not in the complex")
    c = len(sigma) - len(eta)
    x = embedded.barycenter(eta)
    if c == 0:
        return np.zeros((0, 0))
    directions = embedded.points([v for v in sigma if v not in eta]) - x
    i = len(eta) - 1
    if i > 0:
        face_basis = _orthonormal_rows(embedded.points(eta) - x, i)
        directions = directions - (directions @ face_basis.T) @ face_basis
    basis = _orthonormal_rows(directions, c)
    return directions @ basis.T


def solid_angle(
    eta: Simplex,
    sigma: Simplex,
    embedded: EmbeddedComplex,
    cfg: AngleConfig | None = None,
) -> AngleValue:
    """Normalized solid angle of ``sigma`` along its face ``eta``.

    The value only depends on the intrinsic geometry of sigma, never on the
    ambient embedding dimension.
    """
    cfg = cfg or AngleConfig()
    eta = as_simplex(eta)
    sigma = as_simplex(sigma)
    c = len(sigma) - len(eta)
    if c == 0:
        generators = projected_cone_generators(eta, sigma, embedded)  # validates
        return AngleValue(1.0, 0.0, "exact", rational=Fraction(1))
    generators = projected_cone_generators(eta, sigma, embedded)
    if c == 1:
        return AngleValue(0.5, 0.0, "exact", rational=Fraction(1, 2))
    if c == 2:
        u, v = generators
        cos_theta = float(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)))
        theta = math.acos(max(-1.0, min(1.0, cos_theta)))
        return AngleValue(theta / (2.0 * math.pi), 0.0, "exact")
    try:
        solve_t = np.linalg.inv(generators.T).T
    except np.linalg.LinAlgError as exc:
        raise GeometryError(f"singular cone generators for ({eta}, {sigma})") from exc
    value, std_error = _estimate_cone_fraction(
        solve_t,
        cfg,
        embedded.complex.index_of(eta),
        embedded.complex.index_of(sigma),
    )
    return AngleValue(value, std_error, "monte_carlo", samples=cfg.samples)


class AngleCache:
    """Memoized solid angles for one embedded complex and one configuration.

    Every curvature formula and theorem check shares the same estimate for a
    given (face, top-simplex) pair, so statistical errors are propagated
    consistently through linear combinations.
    """

    def __init__(self, embedded: EmbeddedComplex, cfg: AngleConfig | None = None):
        self.embedded = embedded
        self.cfg = cfg or AngleConfig()
        self._values: dict[tuple[Simplex, Simplex], AngleValue] = {}

    def angle(self, eta: Simplex, sigma: Simplex) -> AngleValue:
        key = (as_simplex(eta), as_simplex(sigma))
        if key not in self._values:
            self._values[key] = solid_angle(key[0], key[1], self.embedded, self.cfg)
        return self._values[key]

    def fill(self, pairs: Iterable[tuple[Simplex, Simplex]]) -> None:
        """Compute a batch of pairs, in parallel when configured.

        Results are identical to sequential evaluation: each pair draws from
        its own counter-based stream.
        """
        todo = [
            (as_simplex(e), as_simplex(s))
            for e, s in pairs
            if (as_simplex(e), as_simplex(s)) not in self._values
        ]
        todo = sorted(set(todo))
        workers = self.cfg.resolved_threads()
        if workers <= 1 or len(todo) <= 1:
            for eta, sigma in todo:
                self.angle(eta, sigma)
            return
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = pool.map(
                lambda pair: solid_angle(pair[0], pair[1], self.embedded, self.cfg),
                todo,
            )
            for pair, value in zip(todo, results):
                self._values[pair] = value


def top_angle_pairs(complex: SimplicialComplex) -> list[tuple[Simplex, Simplex]]:
    """All (face, top-simplex) incidences, in canonical order."""
    pairs = []
    for sigma in complex.simplices(complex.dim):
        pairs.append((sigma, sigma))
        for k in range(1, len(sigma)):
            pairs.extend((f, sigma) for f in combinations(sigma, k))
    return sorted(pairs)


# -- Sommerville's alternating angle-sum identity ---------------------------


def sommerville_residuals(
    sigma: Simplex,
    tau: Simplex,
    embedded: EmbeddedComplex,
    cfg: AngleConfig | None = None,
    cache: AngleCache | None = None,
) -> dict:
    """Residuals of Sommerville's cone identity for an odd simplex dimension.

    For an n-simplex sigma (n odd >= 3) and an even-dimensional face tau of
    dimension p <= n - 2, both equivalent forms are evaluated:

    * alternating form:  sum_{i=p+1}^{n} (-1)^(i-p+1) sum_eta alpha(eta, sigma)
      minus 2 alpha(tau, sigma);
    * defect form:       alpha(tau, sigma)
      - 1/2 sum_{i=p+1}^{n-2} (-1)^(i+1) sum_eta alpha(eta, sigma)
      minus (1/2 - (n-p)/4).

    Returns a dict with both residuals and their propagated standard errors.
    """
    sigma = as_simplex(sigma)
    tau = as_simplex(tau)
    n = len(sigma) - 1
    p = len(tau) - 1
    if n % 2 == 0 or n < 3:
        raise ValueError(f"simplex dimension must be odd and >= 3, got {n}")
    if p % 2 == 1 or p > n - 2:
        raise ValueError(f"face dimension must be even and <= {n - 2}, got {p}")
    if not set(tau) <= set(sigma):
        raise GeometryError(f"{tau} is not a face of {sigma}")
    book = cache or AngleCache(embedded, cfg)

    def faces_between(i: int) -> list[Simplex]:
        extra = [v for v in sigma if v not in tau]
        return [as_simplex(tau + rest) for rest in combinations(extra, i - p)]

    alpha_tau = book.angle(tau, sigma)
    lhs_alt = -2.0 * alpha_tau.value
    var_alt = (2.0 * alpha_tau.std_error) ** 2
    for i in range(p + 1, n + 1):
        sign = (-1) ** (i - p + 1)
        for eta in faces_between(i):
            a = book.angle(eta, sigma)
            lhs_alt += sign * a.value
            var_alt += a.std_error**2

    lhs_defect = alpha_tau.value
    var_defect = alpha_tau.std_error**2
    for i in range(p + 1, n - 1):
        sign = (-1) ** (i + 1)
        for eta in faces_between(i):
            a = book.angle(eta, sigma)
            lhs_defect -= 0.5 * sign * a.value
            var_defect += (0.5 * a.std_error) ** 2
    rhs_defect = Fraction(1, 2) - Fraction(n - p, 4)

    return {
        "sigma": sigma,
        "tau": tau,
        "alternating_residual": lhs_alt,
        "alternating_std_error": math.sqrt(var_alt),
        "defect_lhs": lhs_defect,
        "defect_rhs": rhs_defect,
        "defect_residual": lhs_defect - float(rhs_defect),
        "defect_std_error": math.sqrt(var_defect),
    }


# -- brute-force convex hull boundary ---------------------------------------


def convex_hull_boundary(points: Sequence[Sequence[float]]) -> EmbeddedComplex:
    """Boundary complex of the convex hull of a small point set in R^d.

    Every d-subset spanning a hyperplane with all remaining points strictly
    on one side becomes a facet.  Points are expected at unit scale; a point
    within 1e-9 of a would-be supporting hyperplane raises
    DegeneratePositionError (perturb the input).  Brute force: intended for
    at most ~15 points.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise GeometryError("points must be a 2-D array-like")
    m, d = pts.shape
    if m < d + 1:
        raise GeometryError(f"need at least {d + 1} points in R^{d}")
    facets: set[Simplex] = set()
    for subset in combinations(range(m), d):
        base = pts[subset[0]]
        span = pts[list(subset[1:])] - base
        u, s, vt = np.linalg.svd(span)
        if s.min() <= _RANK_TOL * max(1.0, s.max()):
            continue  # subset does not span a hyperplane
        normal = vt[-1]
        rest = [j for j in range(m) if j not in subset]
        offsets = (pts[rest] - base) @ normal
        on_plane = np.abs(offsets) <= DEGENERACY_TOL
        positive = offsets > DEGENERACY_TOL
        negative = offsets < -DEGENERACY_TOL
        if not positive.any() or not negative.any():
            if on_plane.any():
                culprit = [rest[j] for j in np.flatnonzero(on_plane)]
                raise DegeneratePositionError(
                    f"points {culprit} lie on the supporting hyperplane of "
                    f"{subset}; perturb the input into general position"
                )
            facets.add(as_simplex(subset))
    if not facets:
        raise GeometryError("no facets found; input is not full-dimensional")
    complex = SimplicialComplex(facets)
    coords = {i: pts[i] for i in range(m)}
    return EmbeddedComplex(complex, coords, ambient_dim=d)
