"""Finite abstract simplicial complexes.

Simplices are tuples of strictly increasing non-negative vertex ids.  A
complex stores the closure of its maximal simplices, grouped by dimension,
with top-dimensional cofaces precomputed (every curvature formula iterates
them).  Complexes are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Mapping

Simplex = tuple[int, ...]


def as_simplex(vertices: Iterable[int]) -> Simplex:
    """Normalize an iterable of vertex ids into a canonical simplex tuple."""
    vs = tuple(sorted(int(v) for v in vertices))
    if not vs:
        raise ValueError("a simplex needs at least one vertex")
    if len(set(vs)) != len(vs):
        raise ValueError(f"duplicate vertices in simplex {vs}")
    if vs[0] < 0:
        raise ValueError(f"negative vertex id in simplex {vs}")
    return vs


def proper_faces(simplex: Simplex) -> Iterator[Simplex]:
    """All non-empty proper faces of a simplex."""
    for k in range(1, len(simplex)):
        yield from combinations(simplex, k)


class SimplicialComplex:
    """The closure of a set of maximal simplices.

    The empty complex (dimension -1, Euler characteristic 0) is allowed; it
    arises naturally as the link of a facet.
    """

    def __init__(self, maximal: Iterable[Iterable[int]], _allow_empty: bool = False):
        maximal_set = {as_simplex(m) for m in maximal}
        if not maximal_set and not _allow_empty:
            raise ValueError("a complex needs at least one simplex")
        # absorb inputs that are faces of other inputs
        self.maximal: frozenset[Simplex] = frozenset(
            m
            for m in maximal_set
            if not any(m != other and set(m) <= set(other) for other in maximal_set)
        )
        closure: set[Simplex] = set()
        for m in self.maximal:
            closure.add(m)
            closure.update(proper_faces(m))
        self._set: frozenset[Simplex] = frozenset(closure)
        self.dim: int = max((len(s) - 1 for s in closure), default=-1)
        by_dim: list[list[Simplex]] = [[] for _ in range(self.dim + 1)]
        for s in closure:
            by_dim[len(s) - 1].append(s)
        self._by_dim: tuple[tuple[Simplex, ...], ...] = tuple(
            tuple(sorted(group)) for group in by_dim
        )
        order = [s for group in self._by_dim for s in group]
        self._index: dict[Simplex, int] = {s: i for i, s in enumerate(order)}
        self._top_cofaces: dict[Simplex, tuple[Simplex, ...]] = {
            s: () for s in closure
        }
        for top in self.simplices(self.dim):
            self._top_cofaces[top] = (top,)
            for f in proper_faces(top):
                self._top_cofaces[f] = self._top_cofaces[f] + (top,)

    @classmethod
    def from_maximal(cls, maximal: Iterable[Iterable[int]]) -> "SimplicialComplex":
        return cls(maximal)

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls([], _allow_empty=True)

    # -- basic queries -----------------------------------------------------

    def __contains__(self, simplex: Iterable[int]) -> bool:
        return tuple(simplex) in self._set

    def __len__(self) -> int:
        return len(self._set)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, f={self.f_vector()})"

    def simplices(self, dim: int | None = None) -> tuple[Simplex, ...]:
        """Simplices of one dimension, or all of them in canonical order."""
        if dim is None:
            return tuple(s for group in self._by_dim for s in group)
        if dim < 0 or dim > self.dim:
            return ()
        return self._by_dim[dim]

    def index_of(self, simplex: Simplex) -> int:
        """Canonical position of a simplex (sorted by dimension, then lex)."""
        return self._index[simplex]

    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.simplices(0))

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(group) for group in self._by_dim)

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * f for i, f in enumerate(self.f_vector()))

    # -- stars, links, cofaces ---------------------------------------------

    def _require(self, simplex: Simplex) -> None:
        if simplex not in self._set:
            raise KeyError(f"simplex {simplex} is not in the complex")

    def star(self, eta: Simplex) -> tuple[Simplex, ...]:
        """All simplices having eta as a face, eta itself included."""
        self._require(eta)
        es = set(eta)
        out = []
        for dim in range(len(eta) - 1, self.dim + 1):
            out.extend(s for s in self._by_dim[dim] if es <= set(s))
        return tuple(out)

    def link(self, eta: Simplex) -> "SimplicialComplex":
        """The complex { w : w disjoint from eta and w + eta in K }."""
        self._require(eta)
        es = set(eta)
        faces = [
            tuple(v for v in s if v not in es)
            for s in self.star(eta)
            if len(s) > len(eta)
        ]
        return SimplicialComplex(faces, _allow_empty=True)

    def top_cofaces(self, eta: Simplex) -> tuple[Simplex, ...]:
        """Top-dimensional simplices having eta as a face (eta included if top)."""
        self._require(eta)
        return self._top_cofaces[eta]

    def coface_count(self, eta: Simplex) -> int:
        """Number of top-dimensional simplices over a codimension-one simplex."""
        self._require(eta)
        if len(eta) - 1 != self.dim - 1:
            raise ValueError(
                f"coface_count expects a ({self.dim - 1})-simplex, got {eta}"
            )
        return len(self._top_cofaces[eta])

    # -- global predicates ---------------------------------------------------

    def is_two_pseudomanifold(self) -> bool:
        """True iff every codimension-one simplex has exactly two top cofaces."""
        return all(
            len(self._top_cofaces[s]) == 2 for s in self.simplices(self.dim - 1)
        )

    def link_fvector_identity_check(self, p: int) -> bool:
        """Check 2 f_(n-p-2)(link) = (n-p) f_(n-p-1)(link) over all p-simplices.

        Valid on two-pseudomanifolds for 0 <= p <= n-2.
        """
        n = self.dim
        if not self.is_two_pseudomanifold():
            raise ValueError("identity only applies to two-pseudomanifolds")
        if not 0 <= p <= n - 2:
            raise ValueError(f"p must satisfy 0 <= p <= {n - 2}")
        for tau in self.simplices(p):
            lk = self.link(tau)
            f = lk.f_vector()
            f_lower = f[n - p - 2] if n - p - 2 < len(f) else 0
            f_upper = f[n - p - 1] if n - p - 1 < len(f) else 0
            if 2 * f_lower != (n - p) * f_upper:
                return False
        return True

    # -- transformations -----------------------------------------------------

    def relabel(self, mapping: Mapping[int, int]) -> "SimplicialComplex":
        """Apply a vertex-id bijection (ids not mentioned stay fixed)."""
        return SimplicialComplex(
            [tuple(mapping.get(v, v) for v in m) for m in self.maximal]
        )


def join_complexes(
    left: SimplicialComplex, right: SimplicialComplex
) -> tuple[SimplicialComplex, dict[int, int]]:
    """Join of two complexes; right-hand vertex ids are renumbered clear of left.

    Returns the join and the id mapping applied to the right complex, for
    traceability.
    """
    if right.dim == -1:
        return left, {}
    if left.dim == -1:
        return right, {v: v for v in right.vertices()}
    offset = max(left.vertices()) + 1
    mapping = {v: offset + i for i, v in enumerate(right.vertices())}
    shifted = right.relabel(mapping)
    maximal = [m + s for m in left.maximal for s in shifted.maximal]
    return SimplicialComplex(maximal), mapping


def cone_complex(base: SimplicialComplex) -> tuple[SimplicialComplex, int]:
    """Join with one new vertex; returns the cone and the apex id."""
    apex = max(base.vertices()) + 1
    joined, _ = _join_with_points(base, 1, apex)
    return joined, apex


def suspension_complex(base: SimplicialComplex) -> tuple[SimplicialComplex, tuple[int, int]]:
    """Join with two new vertices; returns the suspension and the pole ids."""
    north = max(base.vertices()) + 1
    joined, _ = _join_with_points(base, 2, north)
    return joined, (north, north + 1)


def _join_with_points(
    base: SimplicialComplex, count: int, first_id: int
) -> tuple[SimplicialComplex, tuple[int, ...]]:
    apexes = tuple(range(first_id, first_id + count))
    maximal = [m + (a,) for m in base.maximal for a in apexes]
    return SimplicialComplex(maximal), apexes
