import math
from fractions import Fraction

import numpy as np
import pytest

from simcurv.curvature import (
    HypothesisError,
    ascending_stratified_curvature,
    carrier_alternating_sum,
    carrier_alternating_sum_check,
    carrier_alternating_sums_hold,
    cone_vertex_curvature_factor,
    gauss_bonnet_check,
    generalized_angle_defect,
    stratified_curvature_at_vertex,
    subdivision_relation_check,
    vanishing_check,
    vanishing_hypothesis_check,
)
from simcurv.generators import boundary_of_simplex, solid_simplex
from simcurv.geometry import AngleCache, AngleConfig, sommerville_residuals
from simcurv.stratification import stratify
from simcurv.subdivision import barycentric_subdivide, stellar_subdivide

CFG = AngleConfig(samples=120_000, seed=11)


@pytest.fixture(scope="module")
def sphere3_cache(sphere3):
    return AngleCache(sphere3, CFG)


def test_defect_vanishes_in_low_codimension(sphere3, book):
    for embedded in (sphere3, book):
        assignment = stratify(embedded.complex)
        n = embedded.complex.dim
        for dim in (n - 1, n):
            for eta in embedded.complex.simplices(dim):
                cv = generalized_angle_defect(eta, embedded, assignment, CFG)
                assert cv.exact and cv.value == 0.0


def test_sphere2_vertex_defect_is_half(sphere2):
    assignment = stratify(sphere2.complex)
    for v in sphere2.complex.vertices():
        cv = generalized_angle_defect((v,), sphere2, assignment, CFG)
        assert cv.exact
        assert abs(cv.value - 0.5) < 1e-12


def test_surface_defect_matches_classical(sphere2):
    # independent oracle: 1 minus the planar angles at the vertex, computed
    # straight from coordinates
    assignment = stratify(sphere2.complex)
    for v in sphere2.complex.vertices():
        total = 0.0
        for tri in sphere2.complex.top_cofaces((v,)):
            pts = sphere2.points(tri)
            others = [i for i, u in enumerate(tri) if u != v]
            here = [i for i, u in enumerate(tri) if u == v][0]
            a = pts[others[0]] - pts[here]
            b = pts[others[1]] - pts[here]
            cosang = a @ b / (np.linalg.norm(a) * np.linalg.norm(b))
            total += math.acos(max(-1.0, min(1.0, cosang))) / (2 * math.pi)
        cv = generalized_angle_defect((v,), sphere2, assignment, CFG)
        assert abs(cv.value - (1.0 - total)) < 1e-12


def test_stratified_curvature_on_surface_equals_defect(sphere2):
    assignment = stratify(sphere2.complex)
    for v in sphere2.complex.vertices():
        defect = generalized_angle_defect((v,), sphere2, assignment, CFG)
        concentrated = stratified_curvature_at_vertex(v, sphere2, assignment, CFG)
        assert abs(defect.value - concentrated.value) < 1e-12


def test_sphere3_vertex_defect_positive(sphere3, sphere3_cache):
    assignment = stratify(sphere3.complex)
    for v in sphere3.complex.vertices():
        cv = generalized_angle_defect((v,), sphere3, assignment, cache=sphere3_cache)
        assert cv.value - 4 * cv.std_error > 0


def test_ascending_curvature_exact_zeros(sphere2, sphere3, join_sphere3, book, sphere3_cache):
    targets = [
        (sphere2, None),
        (sphere3, sphere3_cache),
        (join_sphere3, None),
        (book, None),
    ]
    for embedded, cache in targets:
        assignment = stratify(embedded.complex)
        n = embedded.complex.dim
        for tau in embedded.complex.simplices():
            p = len(tau) - 1
            if p % 2 == 1 or p >= n - 1:
                cv = ascending_stratified_curvature(
                    tau, embedded, assignment, CFG, cache=cache
                )
                assert cv.exact and cv.value == 0.0


def test_ascending_curvature_near_zero_on_sphere3(sphere3, sphere3_cache):
    assignment = stratify(sphere3.complex)
    for v in sphere3.complex.vertices():
        cv = ascending_stratified_curvature(
            (v,), sphere3, assignment, cache=sphere3_cache
        )
        assert abs(cv.value) <= 4 * cv.std_error


def test_surface_ascending_equals_classical(sphere2):
    assignment = stratify(sphere2.complex)
    for v in sphere2.complex.vertices():
        defect = generalized_angle_defect((v,), sphere2, assignment, CFG)
        ascending = ascending_stratified_curvature((v,), sphere2, assignment, CFG)
        assert abs(defect.value - ascending.value) < 1e-12


def test_cone_vertex_curvature_factor():
    assert cone_vertex_curvature_factor((7, 20, 29, 22, 8)) == Fraction(-1, 60)
    # a simplicial 4-sphere f-vector gives zero instead
    assert cone_vertex_curvature_factor((7, 20, 30, 25, 10)) == 0
    assert cone_vertex_curvature_factor((6, 15, 20, 15, 6)) == 0


def test_gauss_bonnet_sphere2_exact(sphere2):
    report = gauss_bonnet_check(sphere2, cfg=CFG)
    assert report.summary["rhs"] == 2
    assert report.summary["exact"]
    assert abs(report.summary["lhs"] - 2.0) < 1e-12
    assert report.passed


def test_gauss_bonnet_statistical(sphere3, join_sphere3, book, sphere3_cache):
    report = gauss_bonnet_check(sphere3, cfg=CFG, cache=sphere3_cache)
    assert report.summary["rhs"] == 0 and report.passed
    report = gauss_bonnet_check(join_sphere3, cfg=CFG)
    assert report.summary["rhs"] == 0 and report.passed
    report = gauss_bonnet_check(book, cfg=CFG)
    assert report.summary["rhs"] == 0 and report.passed


def test_gauss_bonnet_negative_control(sphere3, sphere3_cache):
    report = gauss_bonnet_check(
        sphere3, cfg=CFG, cache=sphere3_cache, weights=lambda p: Fraction(1)
    )
    assert not report.passed
    assert abs(report.summary["residual"]) > 100 * report.summary["lhs_std_error"]


def test_vanishing_hypothesis(sphere3, join_sphere3, book):
    assert vanishing_hypothesis_check(sphere3.complex) == (True, [])
    assert vanishing_hypothesis_check(join_sphere3.complex)[0]
    holds, violations = vanishing_hypothesis_check(book.complex)
    assert not holds and violations
    with pytest.raises(ValueError):
        vanishing_hypothesis_check(boundary_of_simplex(3).complex)  # even dim


def test_vanishing_check(sphere3, join_sphere3, book, sphere3_cache):
    report = vanishing_check(sphere3, cfg=CFG, cache=sphere3_cache)
    assert report.passed
    report = vanishing_check(join_sphere3, cfg=CFG)
    assert report.passed
    with pytest.raises(HypothesisError):
        vanishing_check(book, cfg=CFG)


def test_subdivision_relation_surface(sphere2):
    for pair in [
        stellar_subdivide(sphere2, (0, 1, 2)),
        stellar_subdivide(sphere2, (0, 1)),
        barycentric_subdivide(sphere2),
    ]:
        report = subdivision_relation_check(pair, cfg=CFG)
        assert report.passed
        # a surface has exact angle paths everywhere
        assert all(row["exact"] for row in report.rows)


def test_subdivision_relation_sphere3(sphere3):
    cfg = AngleConfig(samples=60_000, seed=21)
    pair = stellar_subdivide(sphere3, (0, 1, 2, 3))
    report = subdivision_relation_check(pair, cfg=cfg)
    assert report.passed
    same_dim_rows = [
        row
        for row in report.rows
        if len(row["simplex"]) == len(row["carrier"]) == 4
    ]
    assert same_dim_rows
    for row in same_dim_rows:
        assert "equal_residual" in row


def test_carrier_alternating_sums(sphere2):
    facet_pair = stellar_subdivide(sphere2, (0, 1, 2))
    new_vertex = (max(facet_pair.refined.complex.vertices()),)
    # refreshed vertex against its own carrier
    assert carrier_alternating_sum(facet_pair, new_vertex, (0, 1, 2)) == 1
    assert carrier_alternating_sum_check(facet_pair, new_vertex, (0, 1, 2))
    # undivided simplex against itself
    assert carrier_alternating_sum(facet_pair, (0, 1, 3), (0, 1, 3)) == 1
    assert carrier_alternating_sums_hold(facet_pair)
    assert carrier_alternating_sums_hold(stellar_subdivide(sphere2, (0, 1)))


def test_carrier_alternating_sums_barycentric():
    triangle = solid_simplex(2)
    pair = barycentric_subdivide(triangle)
    # the barycenter of the whole triangle is the vertex whose carrier is it
    barycenter = [
        tau
        for tau in pair.refined.complex.simplices(0)
        if pair.carrier[tau] == (0, 1, 2)
    ][0]
    assert carrier_alternating_sum(pair, barycenter, (0, 1, 2)) == 1
    # a vertex on an original vertex, summed against an incident edge
    corner = [
        tau for tau in pair.refined.complex.simplices(0) if pair.carrier[tau] == (0,)
    ][0]
    assert carrier_alternating_sum(pair, corner, (0, 1)) == -1
    assert carrier_alternating_sum_check(pair, corner, (0, 1))
    assert carrier_alternating_sums_hold(pair)


def test_carrier_alternating_sum_errors(sphere2):
    pair = stellar_subdivide(sphere2, (0, 1, 2))
    with pytest.raises(KeyError):
        carrier_alternating_sum(pair, (0,), (0, 9))
    with pytest.raises(ValueError):
        carrier_alternating_sum(pair, (4,), (0, 1, 3))  # carrier not a face


def test_cross_polytope_sphere_checks():
    # an odd sphere with different combinatorics than the simplex boundary
    from simcurv.generators import cross_polytope

    sphere = cross_polytope(4)
    assert sphere.complex.f_vector() == (8, 24, 32, 16)
    assert vanishing_hypothesis_check(sphere.complex) == (True, [])
    cfg = AngleConfig(samples=50_000, seed=31)
    cache = AngleCache(sphere, cfg)
    rep = gauss_bonnet_check(sphere, cache=cache)
    assert rep.summary["rhs"] == 0 and rep.passed
    rep = vanishing_check(sphere, cache=cache)
    assert rep.passed


def test_sommerville_negative_control(solid_tet):
    # dropping the facet layer from the alternating identity must break it
    report = sommerville_residuals((0, 1, 2, 3), (0,), solid_tet, CFG)
    broken = report["alternating_residual"] + 3 * 0.5  # drop the facet layer
    assert abs(broken) > 4 * report["alternating_std_error"]
