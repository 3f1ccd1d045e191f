"""Stellar and barycentric subdivision of embedded complexes, with carriers.

The carrier of a refined simplex is the unique base simplex whose relative
interior contains its barycenter; it is found geometrically (barycentric
coordinates, tolerance 1e-9), which also validates that the refinement really
covers the same point set.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

import numpy as np

from simcurv.complexes import Simplex, SimplicialComplex, as_simplex
from simcurv.geometry import DEGENERACY_TOL, EmbeddedComplex, GeometryError


@dataclass
class SubdivisionPair:
    """A base complex, a refinement covering the same point set, and the
    carrier map from refined simplices to base simplices."""

    base: EmbeddedComplex
    refined: EmbeddedComplex
    carrier: dict[Simplex, Simplex]


def _barycentric_coordinates(
    point: np.ndarray, simplex_points: np.ndarray, tol: float = DEGENERACY_TOL
) -> np.ndarray | None:
    """Coefficients of ``point`` over the simplex vertices, or None if the
    point is not in the affine hull (within tol)."""
    k = len(simplex_points)
    system = np.vstack([simplex_points.T, np.ones((1, k))])
    target = np.concatenate([point, [1.0]])
    coeffs, *_ = np.linalg.lstsq(system, target, rcond=None)
    if np.abs(system @ coeffs - target).max() > tol:
        return None
    return coeffs


def locate_point(
    embedded: EmbeddedComplex, point: np.ndarray, tol: float = DEGENERACY_TOL
) -> Simplex | None:
    """The simplex whose relative interior contains ``point`` (closed faces
    shared between simplices resolve to the face itself), or None."""
    for gamma in sorted(embedded.complex.maximal):
        coords = _barycentric_coordinates(point, embedded.points(gamma), tol)
        if coords is None or coords.min() < -tol:
            continue
        support = tuple(v for v, c in zip(gamma, coords) if c > tol)
        if support:
            return as_simplex(support)
    return None


def compute_carriers(base: EmbeddedComplex, refined: EmbeddedComplex) -> dict[Simplex, Simplex]:
    carrier: dict[Simplex, Simplex] = {}
    for tau in refined.complex.simplices():
        found = locate_point(base, refined.barycenter(tau))
        if found is None:
            raise GeometryError(
                f"barycenter of {tau} lies in no base simplex; the refinement "
                f"does not cover the base complex within tolerance"
            )
        carrier[tau] = found
    return carrier


def stellar_subdivide(
    embedded: EmbeddedComplex,
    sigma: Simplex,
    point: Sequence[float] | None = None,
) -> SubdivisionPair:
    """Star a new vertex into ``sigma`` (default position: its barycenter).

    Every simplex having sigma as a face is replaced by the joins of the new
    vertex with its facets missing sigma; everything else is untouched.  The
    point may be anywhere in the relative interior of sigma.
    """
    sigma = as_simplex(sigma)
    complex = embedded.complex
    if sigma not in complex:
        raise KeyError(f"{sigma} is not in the complex")
    if len(sigma) < 2:
        raise ValueError("stellar subdivision needs a simplex of dimension >= 1")
    location = (
        embedded.barycenter(sigma)
        if point is None
        else np.asarray(point, dtype=float)
    )
    coords = _barycentric_coordinates(location, embedded.points(sigma))
    if coords is None or coords.min() <= DEGENERACY_TOL:
        raise GeometryError(
            f"subdivision point must lie in the relative interior of {sigma}"
        )
    new_vertex = max(complex.vertices()) + 1
    maximal = []
    for gamma in complex.maximal:
        if not set(sigma) <= set(gamma):
            maximal.append(gamma)
            continue
        for drop in sigma:
            maximal.append(tuple(v for v in gamma if v != drop) + (new_vertex,))
    refined_complex = SimplicialComplex(maximal)
    new_coords = dict(embedded.coordinates)
    new_coords[new_vertex] = location
    refined = EmbeddedComplex(refined_complex, new_coords, embedded.ambient_dim)
    return SubdivisionPair(embedded, refined, compute_carriers(embedded, refined))


def barycentric_subdivide(embedded: EmbeddedComplex) -> SubdivisionPair:
    """Full barycentric subdivision: one vertex per simplex, one refined
    simplex per chain in the face order."""
    complex = embedded.complex
    order = complex.simplices()
    vertex_of = {simplex: i for i, simplex in enumerate(order)}
    coords = {i: embedded.barycenter(simplex) for i, simplex in enumerate(order)}
    maximal = []
    for gamma in complex.maximal:
        for perm in permutations(gamma):
            chain = [as_simplex(perm[: k + 1]) for k in range(len(perm))]
            maximal.append(tuple(vertex_of[f] for f in chain))
    refined_complex = SimplicialComplex(maximal)
    refined = EmbeddedComplex(refined_complex, coords, embedded.ambient_dim)
    return SubdivisionPair(embedded, refined, compute_carriers(embedded, refined))


def carrier_lookup(tau: Simplex, pair: SubdivisionPair) -> Simplex:
    """The base simplex whose relative interior contains tau's barycenter."""
    tau = as_simplex(tau)
    try:
        return pair.carrier[tau]
    except KeyError as exc:
        raise KeyError(f"{tau} is not a simplex of the refinement") from exc
