"""The three curvatures and the theorem verifiers.

Every curvature of a simplex is an affine expression

    exact rational constant  +  sum of rational coefficients * solid angles,

so curvatures and theorem residuals are accumulated symbolically as linear
forms over (face, top-simplex) angle pairs and evaluated once against a
shared angle cache.  Identical pairs therefore cancel exactly, and the
reported standard error is the propagated error of the independent Monte
Carlo estimates that actually remain in the combination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from simcurv.complexes import Simplex, SimplicialComplex, as_simplex
from simcurv.geometry import AngleCache, AngleConfig, EmbeddedComplex
from simcurv.sequences import angle_defect_term
from simcurv.stratification import (
    StratumAssignment,
    stratified_euler_characteristic,
    stratify,
)
from simcurv.subdivision import SubdivisionPair

WeightFn = Callable[[int], Fraction]

DEFAULT_Z = 4.0
DEFAULT_ABS_TOL = 1e-9


class HypothesisError(ValueError):
    """A theorem's hypothesis fails on the given complex."""


@dataclass(frozen=True)
class CurvatureValue:
    value: float
    std_error: float
    exact: bool

    def __post_init__(self):
        if self.exact and self.std_error != 0.0:
            raise ValueError("exact values carry no standard error")


@dataclass
class _AngleForm:
    """const + sum(coeffs[pair] * angle(pair)) with exact rational weights."""

    const: Fraction = Fraction(0)
    coeffs: dict[tuple[Simplex, Simplex], Fraction] = field(default_factory=dict)

    def add(self, other: "_AngleForm", scale: Fraction = Fraction(1)) -> None:
        if scale == 0:
            return
        self.const += scale * other.const
        for pair, c in other.coeffs.items():
            new = self.coeffs.get(pair, Fraction(0)) + scale * c
            if new == 0:
                self.coeffs.pop(pair, None)
            else:
                self.coeffs[pair] = new

    def evaluate(self, cache: AngleCache) -> CurvatureValue:
        rational = self.const
        float_part = 0.0
        variance = 0.0
        exact = True
        for pair, coeff in self.coeffs.items():
            angle = cache.angle(*pair)
            if angle.rational is not None:
                rational += coeff * angle.rational
                continue
            float_part += float(coeff) * angle.value
            variance += (float(coeff) * angle.std_error) ** 2
            if angle.method != "exact":
                exact = False
        return CurvatureValue(
            float(rational) + float_part, math.sqrt(variance), exact and variance == 0.0
        )

    def pairs(self) -> list[tuple[Simplex, Simplex]]:
        return sorted(self.coeffs)


def _defect_form(
    eta: Simplex, complex: SimplicialComplex, assignment: StratumAssignment
) -> _AngleForm:
    form = _AngleForm(const=assignment.rank(eta))
    for sigma in complex.top_cofaces(eta):
        form.coeffs[(eta, sigma)] = form.coeffs.get((eta, sigma), Fraction(0)) - 1
    return form


def _ascending_form(
    tau: Simplex,
    complex: SimplicialComplex,
    assignment: StratumAssignment,
    weights: WeightFn,
) -> _AngleForm:
    p = len(tau) - 1
    a_p = weights(p)
    form = _AngleForm()
    if a_p == 0:
        return form
    form.add(_defect_form(tau, complex, assignment), a_p)
    for eta in complex.star(tau):
        i = len(eta) - 1
        if i <= p:
            continue
        sign = Fraction(-1) ** (i - p)
        form.add(_defect_form(eta, complex, assignment), a_p / 2 * sign)
    return form


def _require_assignment(
    embedded: EmbeddedComplex, assignment: StratumAssignment | None
) -> StratumAssignment:
    if assignment is None:
        return stratify(embedded.complex)
    if assignment.complex is not embedded.complex and assignment.complex != embedded.complex:
        raise ValueError("stratum assignment belongs to a different complex")
    return assignment


def _book(
    embedded: EmbeddedComplex, cfg: AngleConfig | None, cache: AngleCache | None
) -> AngleCache:
    if cache is not None:
        return cache
    return AngleCache(embedded, cfg)


# -- the three curvatures ----------------------------------------------------


def generalized_angle_defect(
    eta: Simplex,
    embedded: EmbeddedComplex,
    assignment: StratumAssignment | None = None,
    cfg: AngleConfig | None = None,
    cache: AngleCache | None = None,
) -> CurvatureValue:
    """rank(eta) minus the sum of top-simplex angles along eta.

    Exactly zero in codimensions 0 and 1 (the rank accounts for the halves).
    """
    eta = as_simplex(eta)
    assignment = _require_assignment(embedded, assignment)
    form = _defect_form(eta, embedded.complex, assignment)
    return form.evaluate(_book(embedded, cfg, cache))


def stratified_curvature_at_vertex(
    vertex: int,
    embedded: EmbeddedComplex,
    assignment: StratumAssignment | None = None,
    cfg: AngleConfig | None = None,
    cache: AngleCache | None = None,
) -> CurvatureValue:
    """All angle defects around a vertex, concentrated there with weights
    (-1)^i / (i+1) per dimension i."""
    v = as_simplex([vertex])
    assignment = _require_assignment(embedded, assignment)
    complex = embedded.complex
    form = _AngleForm()
    for eta in complex.star(v):
        i = len(eta) - 1
        if i > complex.dim - 2:
            continue
        form.add(_defect_form(eta, complex, assignment), Fraction((-1) ** i, i + 1))
    return form.evaluate(_book(embedded, cfg, cache))


def ascending_stratified_curvature(
    tau: Simplex,
    embedded: EmbeddedComplex,
    assignment: StratumAssignment | None = None,
    cfg: AngleConfig | None = None,
    cache: AngleCache | None = None,
    weights: WeightFn = angle_defect_term,
) -> CurvatureValue:
    """Angle-defect-sequence weighted combination of defects over cofaces.

    Exactly zero for odd-dimensional simplices (the weight vanishes) and in
    codimensions 0 and 1.  ``weights`` is swappable to demonstrate that the
    recursion satisfied by the default sequence is load-bearing.
    """
    tau = as_simplex(tau)
    assignment = _require_assignment(embedded, assignment)
    form = _ascending_form(tau, embedded.complex, assignment, weights)
    return form.evaluate(_book(embedded, cfg, cache))


def cone_vertex_curvature_factor(link_f_vector: Iterable[int]) -> Fraction:
    """Exact factor picked up by the vertex-concentrated curvature at a cone
    apex whose link has the given f-vector: 1 - f0/2 + f1/3 - f2/4 + ...
    """
    total = Fraction(1)
    for i, f in enumerate(link_f_vector):
        total += Fraction((-1) ** (i + 1), i + 2) * f
    return total


# -- theorem reports ---------------------------------------------------------


@dataclass
class TheoremReport:
    """Outcome of one verification: aggregate verdict plus per-row detail."""

    name: str
    passed: bool
    z_threshold: float
    abs_tol: float
    summary: dict
    rows: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "z_threshold": self.z_threshold,
            "abs_tol": self.abs_tol,
            "summary": self.summary,
            "rows": self.rows,
        }


def _verdict(residual: float, std_error: float, exact: bool, z: float, abs_tol: float) -> bool:
    if exact or std_error == 0.0:
        return abs(residual) <= abs_tol
    return abs(residual) <= z * std_error


def _row(simplex: Simplex, cv: CurvatureValue, z: float, abs_tol: float, target: float = 0.0):
    residual = cv.value - target
    return {
        "simplex": list(simplex),
        "value": cv.value,
        "std_error": cv.std_error,
        "exact": cv.exact,
        "residual": residual,
        "pass": _verdict(residual, cv.std_error, cv.exact, z, abs_tol),
    }


def gauss_bonnet_check(
    embedded: EmbeddedComplex,
    assignment: StratumAssignment | None = None,
    cfg: AngleConfig | None = None,
    cache: AngleCache | None = None,
    z: float = DEFAULT_Z,
    abs_tol: float = DEFAULT_ABS_TOL,
    weights: WeightFn = angle_defect_term,
) -> TheoremReport:
    """Alternating sum of ascending curvatures against the stratified Euler
    characteristic."""
    complex = embedded.complex
    if complex.dim < 2:
        raise ValueError("Gauss-Bonnet check needs dimension >= 2")
    assignment = _require_assignment(embedded, assignment)
    book = _book(embedded, cfg, cache)
    total = _AngleForm()
    forms = []
    pairs: set = set()
    for tau in complex.simplices():
        form = _ascending_form(tau, complex, assignment, weights)
        forms.append((tau, form))
        total.add(form, Fraction(-1) ** (len(tau) - 1))
        pairs.update(form.coeffs)
    book.fill(pairs)
    rows = [_row(tau, form.evaluate(book), z, abs_tol) for tau, form in forms]
    lhs = total.evaluate(book)
    rhs = stratified_euler_characteristic(complex, assignment)
    residual = lhs.value - float(rhs)
    passed = _verdict(residual, lhs.std_error, lhs.exact, z, abs_tol)
    return TheoremReport(
        name="gauss-bonnet",
        passed=passed,
        z_threshold=z,
        abs_tol=abs_tol,
        summary={
            "lhs": lhs.value,
            "lhs_std_error": lhs.std_error,
            "rhs": rhs,
            "residual": residual,
            "exact": lhs.exact,
        },
        rows=rows,
    )


def vanishing_hypothesis_check(complex: SimplicialComplex) -> tuple[bool, list[dict]]:
    """Check chi(link) = 2 over every even-dimensional simplex up to n-1.

    Also records codimension-one simplices without exactly two top cofaces,
    so the implication between the two conditions is checked, not assumed.
    """
    n = complex.dim
    if n % 2 == 0 or n < 3:
        raise ValueError(f"dimension must be odd and >= 3, got {n}")
    violations = []
    for i in range(0, n, 2):
        for eta in complex.simplices(i):
            chi = complex.link(eta).euler_characteristic()
            if chi != 2:
                violations.append(
                    {"simplex": list(eta), "kind": "link_euler", "value": chi}
                )
    for eta in complex.simplices(n - 1):
        count = len(complex.top_cofaces(eta))
        if count != 2:
            violations.append(
                {"simplex": list(eta), "kind": "coface_count", "value": count}
            )
    return (not violations, violations)


def vanishing_check(
    embedded: EmbeddedComplex,
    assignment: StratumAssignment | None = None,
    cfg: AngleConfig | None = None,
    cache: AngleCache | None = None,
    z: float = DEFAULT_Z,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> TheoremReport:
    """Every ascending curvature of a qualifying odd-dimensional complex is
    statistically compatible with zero (and exactly zero where analytic)."""
    complex = embedded.complex
    holds, violations = vanishing_hypothesis_check(complex)
    if not holds:
        raise HypothesisError(
            f"link hypothesis fails on {len(violations)} simplices: {violations[:5]}"
        )
    assignment = _require_assignment(embedded, assignment)
    book = _book(embedded, cfg, cache)
    forms = []
    pairs: set = set()
    for tau in complex.simplices():
        form = _ascending_form(tau, complex, assignment, angle_defect_term)
        forms.append((tau, form))
        pairs.update(form.coeffs)
    book.fill(pairs)
    rows = []
    exact_failures = 0
    for tau, form in forms:
        p = len(tau) - 1
        cv = form.evaluate(book)
        row = _row(tau, cv, z, abs_tol)
        analytic_zero = p % 2 == 1 or p >= complex.dim - 1
        row["analytic_zero"] = analytic_zero
        if analytic_zero and not (cv.exact and cv.value == 0.0):
            exact_failures += 1
            row["pass"] = False
        rows.append(row)
    passed = all(r["pass"] for r in rows)
    worst = max(rows, key=lambda r: abs(r["residual"]))
    return TheoremReport(
        name="vanishing",
        passed=passed,
        z_threshold=z,
        abs_tol=abs_tol,
        summary={
            "simplices": len(rows),
            "worst_residual": worst["residual"],
            "worst_simplex": worst["simplex"],
            "analytic_zero_failures": exact_failures,
        },
        rows=rows,
    )


def subdivision_relation_check(
    pair: SubdivisionPair,
    base_assignment: StratumAssignment | None = None,
    refined_assignment: StratumAssignment | None = None,
    cfg: AngleConfig | None = None,
    base_cache: AngleCache | None = None,
    refined_cache: AngleCache | None = None,
    z: float = DEFAULT_Z,
    abs_tol: float = DEFAULT_ABS_TOL,
    weights: WeightFn = angle_defect_term,
) -> TheoremReport:
    """For every refined simplex tau with carrier zeta:
    a_(dim zeta) * K(tau)  equals  a_(dim tau) * K(zeta),
    where K is the ascending curvature in the respective complex; when the
    dimensions agree the curvatures themselves must agree."""
    base = pair.base
    refined = pair.refined
    base_assignment = _require_assignment(base, base_assignment)
    refined_assignment = _require_assignment(refined, refined_assignment)
    base_book = _book(base, cfg, base_cache)
    refined_book = _book(refined, cfg, refined_cache)

    refined_forms = {
        tau: _ascending_form(tau, refined.complex, refined_assignment, weights)
        for tau in refined.complex.simplices()
    }
    base_forms = {
        zeta: _ascending_form(zeta, base.complex, base_assignment, weights)
        for zeta in set(pair.carrier.values())
    }
    refined_book.fill({p for f in refined_forms.values() for p in f.coeffs})
    base_book.fill({p for f in base_forms.values() for p in f.coeffs})

    base_values: dict[Simplex, CurvatureValue] = {
        zeta: form.evaluate(base_book) for zeta, form in base_forms.items()
    }
    rows = []
    for tau in refined.complex.simplices():
        s = len(tau) - 1
        zeta = pair.carrier[tau]
        p = len(zeta) - 1
        a_p = weights(p)
        a_s = weights(s)
        left = refined_forms[tau].evaluate(refined_book)
        right = base_values[zeta]
        residual = float(a_p) * left.value - float(a_s) * right.value
        std_error = math.hypot(float(a_p) * left.std_error, float(a_s) * right.std_error)
        exact = left.exact and right.exact
        ok = _verdict(residual, std_error, exact, z, abs_tol)
        row = {
            "simplex": list(tau),
            "carrier": list(zeta),
            "lhs": float(a_p) * left.value,
            "rhs": float(a_s) * right.value,
            "residual": residual,
            "std_error": std_error,
            "exact": exact,
            "pass": ok,
        }
        if s == p:
            eq_residual = left.value - right.value
            eq_std = math.hypot(left.std_error, right.std_error)
            row["equal_residual"] = eq_residual
            row["pass"] = ok and _verdict(eq_residual, eq_std, exact, z, abs_tol)
        rows.append(row)
    passed = all(r["pass"] for r in rows)
    worst = max(rows, key=lambda r: abs(r["residual"]))
    return TheoremReport(
        name="subdivision",
        passed=passed,
        z_threshold=z,
        abs_tol=abs_tol,
        summary={
            "simplices": len(rows),
            "worst_residual": worst["residual"],
            "worst_simplex": worst["simplex"],
        },
        rows=rows,
    )


# -- carrier alternating sums ------------------------------------------------


def carrier_alternating_sum(pair: SubdivisionPair, tau: Simplex, alpha: Simplex) -> int:
    """sum over refined simplices eta >= tau with carrier alpha of
    (-1)^(dim eta - dim tau), tau itself included when its carrier is alpha."""
    tau = as_simplex(tau)
    alpha = as_simplex(alpha)
    if alpha not in pair.base.complex:
        raise KeyError(f"{alpha} is not a simplex of the base complex")
    zeta = pair.carrier[tau]
    if not set(zeta) <= set(alpha):
        raise ValueError(f"carrier {zeta} of {tau} is not a face of {alpha}")
    s = len(tau) - 1
    total = 0
    for eta in pair.refined.complex.star(tau):
        if pair.carrier[eta] == alpha:
            total += (-1) ** (len(eta) - 1 - s)
    return total


def carrier_alternating_sum_check(
    pair: SubdivisionPair, tau: Simplex, alpha: Simplex
) -> bool:
    """The alternating sum must equal (-1)^(dim alpha - dim tau), exactly."""
    tau = as_simplex(tau)
    alpha = as_simplex(alpha)
    expected = (-1) ** (len(alpha) - len(tau))
    return carrier_alternating_sum(pair, tau, alpha) == expected


def carrier_alternating_sums_hold(pair: SubdivisionPair) -> bool:
    """Sweep the alternating-sum identity over every valid (tau, alpha)."""
    base = pair.base.complex
    for tau in pair.refined.complex.simplices():
        zeta = pair.carrier[tau]
        for alpha in base.star(zeta):
            if not carrier_alternating_sum_check(pair, tau, alpha):
                return False
    return True
