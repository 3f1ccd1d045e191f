"""Acceptance criteria, one test per criterion, at full sample counts.

Each check prints a single [PASS]/[FAIL] line so a bare `pytest -s
tests/test_acceptance.py` reads as a checklist.  Monte Carlo settings:
10^6 samples per angle, seed 0, fixed; every statistical verdict is
deterministic.

Known red: criterion 8a.  The classical face counts (7, 20, 29, 22, 8) of
the cone-of-cone-of-suspension polytope include two non-simplex facets and
one non-simplex ridge.  A simplicial 4-sphere with f0 = 7 and f1 = 20 must
have f2 = 30 by the Dehn-Sommerville relations, so no point configuration
can make a simplicial hull reproduce those counts; the shipped
general-position configuration yields (7, 20, 30, 25, 10).  The check is
kept faithful to the target values.
"""

import json
import time
from fractions import Fraction

import pytest

from simcurv.cli import main
from simcurv.curvature import (
    ascending_stratified_curvature,
    carrier_alternating_sums_hold,
    cone_vertex_curvature_factor,
    gauss_bonnet_check,
    generalized_angle_defect,
    vanishing_check,
    vanishing_hypothesis_check,
)
from simcurv.generators import (
    boundary_of_simplex,
    random_simplex,
    seven_point_configuration,
    solid_simplex,
    triple_book,
)
from simcurv.geometry import AngleCache, AngleConfig, convex_hull_boundary, sommerville_residuals
from simcurv.io import complex_to_dict
from simcurv.sequences import (
    angle_defect_sequence,
    bernoulli,
    bernoulli_poly,
    binomial,
    verify_recursion,
)
from simcurv.stratification import stratified_euler_characteristic, stratify
from simcurv.subdivision import barycentric_subdivide, stellar_subdivide

FULL = AngleConfig(samples=1_000_000, seed=0)
Z = 4.0

PAPER_SEQUENCE = [
    "1", "0", "-1/2", "0", "1", "0", "-17/4", "0", "31", "0",
    "-691/2", "0", "5461", "0", "-929569/8", "0", "3202291", "0",
]


def report(criterion: str, ok: bool, detail: str = ""):
    tag = "PASS" if ok else "FAIL"
    print(f"[{tag}] {criterion}" + (f": {detail}" if detail else ""))
    assert ok, f"{criterion}: {detail}"


@pytest.fixture(scope="module")
def sphere3_full():
    embedded = boundary_of_simplex(4)
    return embedded, stratify(embedded.complex), AngleCache(embedded, FULL)


@pytest.fixture(scope="module")
def join_full(join_sphere3):
    return join_sphere3, stratify(join_sphere3.complex), AngleCache(join_sphere3, FULL)


def test_criterion_01_sequence(capsys):
    start = time.perf_counter()
    code = main(["sequence", "--up-to", "17"])
    out = capsys.readouterr().out
    values = [line.split(" = ")[1] for line in out.strip().splitlines()]
    ok = code == 0 and values == PAPER_SEQUENCE
    recursion_ok = verify_recursion(50)
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        report(
            "criterion 1 (angle defect sequence, recursion to 50)",
            ok and recursion_ok and elapsed < 1.0,
            f"values match={ok}, recursion={recursion_ok}, {elapsed:.2f}s",
        )


def test_criterion_02_bernoulli_identities():
    start = time.perf_counter()
    ok_sum = all(
        sum(binomial(n, i) * bernoulli(i) for i in range(n + 1)) == bernoulli(n)
        for n in [0, *range(2, 51)]
    )
    ok_half = all(
        bernoulli_poly(n, Fraction(1, 2)) == -(1 - Fraction(2) ** (1 - n)) * bernoulli(n)
        for n in range(51)
    )
    ok_doubled = all(
        sum(binomial(n, i) * bernoulli(i) * 2**i for i in range(n + 1))
        == bernoulli(n) * (2 - 2**n)
        for n in range(51)
    )
    elapsed = time.perf_counter() - start
    report(
        "criterion 2 (Bernoulli identities, exact, n <= 50)",
        ok_sum and ok_half and ok_doubled and elapsed < 1.0,
        f"binomial-sum={ok_sum}, half-argument={ok_half}, doubled={ok_doubled}, {elapsed:.2f}s",
    )


def test_criterion_03_sommerville():
    start = time.perf_counter()
    worst_ratio = 0.0
    max_sigma = 0.0
    checks = 0
    for seed in range(20):
        tet = random_simplex(3, seed=seed)
        cache = AngleCache(tet, FULL)
        for v in range(4):
            res = sommerville_residuals((0, 1, 2, 3), (v,), tet, cache=cache)
            for kind in ("alternating", "defect"):
                ratio = abs(res[f"{kind}_residual"]) / res[f"{kind}_std_error"]
                worst_ratio = max(worst_ratio, ratio)
            max_sigma = max(max_sigma, res["alternating_std_error"])
            checks += 1
    for seed in range(5):
        five = random_simplex(5, seed=100 + seed)
        cache = AngleCache(five, FULL)
        sigma = tuple(range(6))
        from itertools import combinations

        taus = [(v,) for v in sigma] + list(combinations(sigma, 3))
        for tau in taus:
            res = sommerville_residuals(sigma, tau, five, cache=cache)
            for kind in ("alternating", "defect"):
                ratio = abs(res[f"{kind}_residual"]) / res[f"{kind}_std_error"]
                worst_ratio = max(worst_ratio, ratio)
            max_sigma = max(max_sigma, res["alternating_std_error"])
            checks += 1
    elapsed = time.perf_counter() - start
    report(
        "criterion 3 (Sommerville identity, 20 tetrahedra + 5 five-simplices)",
        worst_ratio <= Z and max_sigma < 2e-3 and elapsed < 120,
        f"{checks} checks, worst |residual|/sigma = {worst_ratio:.2f}, "
        f"max sigma = {max_sigma:.1e}, {elapsed:.1f}s",
    )


def test_criterion_04_gauss_bonnet(sphere2, join_full, book, sphere3_full):
    start = time.perf_counter()
    exact = gauss_bonnet_check(sphere2, cfg=FULL)
    ok_exact = (
        exact.summary["rhs"] == 2
        and exact.summary["exact"]
        and abs(exact.summary["lhs"] - 2.0) < 1e-12
    )
    details = [f"sphere2 lhs={exact.summary['lhs']!r}"]
    ok_all = ok_exact
    for label, (embedded, assignment, cache) in {
        "sphere3": sphere3_full,
        "join": join_full,
    }.items():
        rep = gauss_bonnet_check(embedded, assignment, cache=cache, z=Z)
        ok_all &= rep.passed and rep.summary["rhs"] == 0
        details.append(
            f"{label} residual={rep.summary['residual']:+.1e} "
            f"(sigma {rep.summary['lhs_std_error']:.1e})"
        )
    book_assignment = stratify(book.complex)
    chi_s = stratified_euler_characteristic(book.complex, book_assignment)
    rep = gauss_bonnet_check(book, book_assignment, cfg=FULL, z=Z)
    ok_all &= chi_s == 0 and rep.passed
    details.append(
        f"book chi_s={chi_s} residual={rep.summary['residual']:+.1e}"
    )
    elapsed = time.perf_counter() - start
    report(
        "criterion 4 (Gauss-Bonnet on four complexes)",
        ok_all and elapsed < 180,
        "; ".join(details) + f", {elapsed:.1f}s",
    )


def test_criterion_05_vanishing(sphere3_full, join_full, book):
    ok = True
    details = []
    for label, (embedded, assignment, cache) in {
        "sphere3": sphere3_full,
        "join": join_full,
    }.items():
        rep = vanishing_check(embedded, assignment, cache=cache, z=Z)
        ok &= rep.passed and rep.summary["analytic_zero_failures"] == 0
        details.append(f"{label} worst residual {rep.summary['worst_residual']:+.1e}")
    holds, violations = vanishing_hypothesis_check(book.complex)
    ok &= not holds and len(violations) > 0
    details.append(f"book hypothesis violations={len(violations)}")
    report("criterion 5 (vanishing on odd spheres; book negative control)", ok, "; ".join(details))


def test_criterion_06_motivating_contrast(sphere3_full):
    embedded, assignment, cache = sphere3_full
    ok = True
    details = []
    for v in embedded.complex.vertices():
        defect = generalized_angle_defect((v,), embedded, assignment, cache=cache)
        ascend = ascending_stratified_curvature((v,), embedded, assignment, cache=cache)
        positive = defect.value - Z * defect.std_error > 0
        near_zero = abs(ascend.value) <= Z * ascend.std_error
        ok &= positive and near_zero
    details.append(
        f"defect ~ {defect.value:.4f} (+{Z}sigma margin), ascending ~ {ascend.value:+.1e}"
    )
    report("criterion 6 (defect positive while ascending curvature vanishes)", ok, "; ".join(details))


def test_criterion_07_subdivision(sphere2):
    start = time.perf_counter()
    pairs = {
        "stellar-facet": stellar_subdivide(sphere2, (0, 1, 2)),
        "stellar-edge": stellar_subdivide(sphere2, (0, 1)),
        "barycentric": barycentric_subdivide(sphere2),
    }
    ok = True
    details = []
    from simcurv.curvature import subdivision_relation_check

    for label, pair in pairs.items():
        rep = subdivision_relation_check(pair, cfg=FULL, z=Z)
        # surface angle paths are all exact, and the analytically-zero rows
        # (odd dimension, codimension <= 1) must be exact zeros
        all_exact = all(row["exact"] for row in rep.rows)
        zero_rows = [
            row
            for row in rep.rows
            if (len(row["simplex"]) - 1) % 2 == 1
            or len(row["simplex"]) - 1 >= pair.refined.complex.dim - 1
        ]
        zeros_exact = all(
            row["lhs"] == 0.0 and row["rhs"] == 0.0 for row in zero_rows
        )
        sums = carrier_alternating_sums_hold(pair)
        ok &= rep.passed and all_exact and zeros_exact and sums
        details.append(f"{label}: relation={rep.passed}, carrier-sums={sums}")
    elapsed = time.perf_counter() - start
    report("criterion 7 (subdivision relation + carrier sums)", ok, "; ".join(details) + f", {elapsed:.1f}s")


def test_criterion_08a_seven_point_f_vector():
    start = time.perf_counter()
    hull = convex_hull_boundary(seven_point_configuration())
    f = hull.complex.f_vector()
    elapsed = time.perf_counter() - start
    report(
        "criterion 8a (seven-point hull face counts)",
        f == (7, 20, 29, 22, 8) and elapsed < 10,
        f"got {f}; targets (7, 20, 29, 22, 8) count polytopal faces incl. two "
        f"non-simplex facets, unreachable by a simplicial 4-sphere "
        f"(Dehn-Sommerville forces f2 = 30 when f0 = 7, f1 = 20), {elapsed:.1f}s",
    )


def test_criterion_08b_rational_identity():
    value = cone_vertex_curvature_factor((7, 20, 29, 22, 8))
    report(
        "criterion 8b (exact -1/60 coefficient identity)",
        value == Fraction(-1, 60),
        f"1 - 7/2 + 20/3 - 29/4 + 22/5 - 8/6 = {value}",
    )


def test_criterion_09_chi_s_subdivision_invariance(sphere2, sphere3, solid_tet, book):
    ok = True
    details = []
    for label, embedded in {
        "sphere2": sphere2,
        "sphere3": sphere3,
        "solid-tet": solid_tet,
        "book": book,
    }.items():
        before = stratified_euler_characteristic(
            embedded.complex, stratify(embedded.complex)
        )
        refined = barycentric_subdivide(embedded).refined
        after = stratified_euler_characteristic(
            refined.complex, stratify(refined.complex)
        )
        ok &= before == after
        details.append(f"{label}: {before} -> {after}")
    report("criterion 9 (stratified Euler characteristic survives subdivision)", ok, "; ".join(details))


def test_criterion_10_sequence_negative_control(sphere3_full):
    embedded, assignment, cache = sphere3_full
    rep = gauss_bonnet_check(
        embedded, assignment, cache=cache, z=Z, weights=lambda p: Fraction(1)
    )
    ratio = abs(rep.summary["residual"]) / rep.summary["lhs_std_error"]
    report(
        "criterion 10 (constant-one weights break Gauss-Bonnet)",
        not rep.passed and ratio > Z,
        f"|residual|/sigma = {ratio:.0f}",
    )


def test_criterion_11_determinism(tmp_path, capsys):
    path = tmp_path / "dD4.json"
    path.write_text(json.dumps(complex_to_dict(boundary_of_simplex(4))))
    outputs = {}
    for command in ("gauss-bonnet", "sommerville"):
        target = str(path) if command == "gauss-bonnet" else None
        if command == "sommerville":
            spath = tmp_path / "tet.json"
            spath.write_text(json.dumps(complex_to_dict(random_simplex(3, seed=2))))
            target = str(spath)
        runs = []
        for threads in ("1", "4"):
            code = main(
                [
                    "verify",
                    command,
                    target,
                    "--samples",
                    "50000",
                    "--seed",
                    "123",
                    "--threads",
                    threads,
                    "--format",
                    "json",
                ]
            )
            out = capsys.readouterr().out
            assert code == 0
            runs.append(out)
        outputs[command] = runs[0] == runs[1]
    with capsys.disabled():
        report(
            "criterion 11 (byte-identical reports across seeds/threads)",
            all(outputs.values()),
            str(outputs),
        )
