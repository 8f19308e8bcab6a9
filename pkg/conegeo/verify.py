"""
Property suites run by the `verify` subcommand.

Each suite draws seeded random inputs, measures the worst deviation from a
known identity and compares it with the suite tolerance. Results are
collected into a pandas DataFrame report.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.optimize import linprog

from conegeo.geometry import geodesic_point, geometric_mean, nonunique_midpoint_witness
from conegeo.metrics import distance, hilbert_distance, normalize_ray, scaled_distance, scaled_distance_limit, thompson_distance
from conegeo.morphisms import (
    apply_jordan_iso,
    build_isometry,
    check_jordan_isomorphism,
    compose_isometries,
    factor_thompson_isometry,
    hilbert_factorization,
    matrix_of,
    random_descriptor,
    random_jordan_iso,
)
from conegeo.projections import (
    extreme_point_test,
    orthogonality_chain,
    sample_projection_pairs,
    verify_orthoisomorphism,
)
from jordan.algebra import coordinate_norm, quadratic_rep, unit
from jordan.errors import ConeGeometryError, InvalidInputError, RankError
from jordan.models import (
    Element,
    direct_sum,
    make_element,
    spin_algebra,
    sym_algebra,
    vector_algebra,
)
from jordan.sampling import random_element, random_interior, random_orthogonal, random_projection
from jordan.spectral import inverse, sqrt

logger = logging.getLogger(__name__)

CATALOGUE = (
    vector_algebra(3),
    sym_algebra(3),
    spin_algebra(3),
    direct_sum(sym_algebra(2), sym_algebra(2)),
    direct_sum(vector_algebra(2), spin_algebra(3)),
)

WITNESS_SEPARATION = 1e-3


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    trials: int
    max_error: float
    tolerance: float
    passed: bool
    message: str = ""


def _gap(x: Element, y: Element) -> float:
    return float(np.max(np.abs(x.to_vector() - y.to_vector()))) / max(1.0, float(np.max(np.abs(y.to_vector()))))


def _result(name: str, trials: int, errors: Sequence[float], tolerance: float) -> SuiteResult:
    worst = float(max(errors, default=0.0))
    return SuiteResult(name, trials, worst, tolerance, worst <= tolerance)


def oracle_equivalence(rng: np.random.Generator, trials: int) -> SuiteResult:
    errors = []
    for algebra in CATALOGUE:
        for _ in range(trials):
            a, b = random_interior(algebra, rng), random_interior(algebra, rng)
            for metric in ("T", "H"):
                spectral = distance(a, b, metric, "spectral")
                oracle = distance(a, b, metric, "gauge")
                errors.append(abs(spectral - oracle) / max(1.0, spectral))
    return _result("oracle_equivalence", trials, errors, 1e-8)


def isometry_invariance(rng: np.random.Generator, trials: int) -> SuiteResult:
    errors = []
    for algebra in CATALOGUE:
        for _ in range(trials):
            a, b, c = (random_interior(algebra, rng) for _ in range(3))
            J = random_jordan_iso(algebra, rng)
            for metric in ("T", "H"):
                reference = distance(a, b, metric)
                errors.append(abs(distance(quadratic_rep(c, a), quadratic_rep(c, b), metric) - reference))
                errors.append(abs(distance(inverse(a), inverse(b), metric) - reference))
                errors.append(abs(distance(apply_jordan_iso(J, a), apply_jordan_iso(J, b), metric) - reference))
    return _result("isometry_invariance", trials, errors, 1e-8)


def segment_value(rng: np.random.Generator, trials: int) -> SuiteResult:
    """d_H(tp + (1-t)e, e) = -log(1-t) for a rank-one projection p"""
    algebra = sym_algebra(3)
    e = unit(algebra)
    errors = []
    for _ in range(trials):
        p = random_projection(algebra, rng, rank=1)
        for t in (0.25, 0.5, 0.9):
            errors.append(abs(hilbert_distance(p * t + e * (1.0 - t), e) + np.log(1.0 - t)))
    return _result("segment_value", trials, errors, 1e-10)


def geodesic_law(rng: np.random.Generator, trials: int) -> SuiteResult:
    errors = []
    for algebra in CATALOGUE:
        for _ in range(trials):
            a, b = random_interior(algebra, rng), random_interior(algebra, rng)
            s, t = (float(x) for x in rng.random(2))
            x, y = geodesic_point(a, b, s), geodesic_point(a, b, t)
            for metric in ("T", "H"):
                errors.append(abs(distance(x, y, metric) - abs(s - t) * distance(a, b, metric)))
    return _result("geodesic_law", trials, errors, 1e-8)


def mean_laws(rng: np.random.Generator, trials: int) -> SuiteResult:
    errors = []
    for algebra in CATALOGUE:
        for _ in range(trials):
            a, b = random_interior(algebra, rng), random_interior(algebra, rng)
            mean = geometric_mean(a, b)
            errors.append(_gap(mean, geometric_mean(b, a)))
            errors.append(_gap(quadratic_rep(mean, inverse(a)), b))
            s, t = (float(x) for x in rng.random(2))
            errors.append(_gap(geometric_mean(geodesic_point(a, b, t), geodesic_point(a, b, s)), geodesic_point(a, b, (s + t) / 2.0)))
            f = build_isometry(random_descriptor("T", algebra, rng))
            errors.append(_gap(f(mean), geometric_mean(f(a), f(b))))
    return _result("mean_laws", trials, errors, 1e-7)


def convergence_exactness(rng: np.random.Generator, trials: int) -> SuiteResult:
    """d_n equals the norm limit for every n on an associative algebra"""
    algebra = vector_algebra(4)
    errors = []
    for _ in range(trials):
        a, b = random_element(algebra, rng), random_element(algebra, rng)
        for kind in ("T", "H"):
            limit = scaled_distance_limit(a, b, kind)
            for n in (1, 2, 64):
                errors.append(abs(scaled_distance(a, b, n, kind) - limit))
    return _result("convergence_exactness", trials, errors, 1e-12)


def uniqueness_witness(rng: np.random.Generator, trials: int) -> SuiteResult:
    algebra = sym_algebra(3)
    e = unit(algebra)
    expected = make_element(algebra, np.diag([2.0 ** 1.5, 2.0 ** 1.5, 2.0]))
    pinned = (e, make_element(algebra, np.diag([8.0, 4.0, 2.0])))
    errors = [_gap(nonunique_midpoint_witness(*pinned), expected)]
    pairs, separated = [pinned], [pinned]
    for _ in range(trials):
        pairs.append((random_interior(algebra, rng, 1.0), random_interior(algebra, rng, 1.0)))
        # relative spectrum exp(2), exp(m), exp(-1.5) with |m| < 1 keeps the middle point off both extremes
        a = random_interior(algebra, rng, 0.5)
        u = random_orthogonal(3, rng)
        relative = make_element(algebra, u @ np.diag(np.exp([2.0, rng.uniform(-1.0, 1.0), -1.5])) @ u.T)
        separated.append((a, quadratic_rep(sqrt(a), relative)))
        pairs.append(separated[-1])
    for a, b in pairs:
        w = nonunique_midpoint_witness(a, b)
        half = thompson_distance(a, b) / 2.0
        errors.append(abs(thompson_distance(a, w) - half))
        errors.append(abs(thompson_distance(w, b) - half))
    for a, b in separated:
        if coordinate_norm(nonunique_midpoint_witness(a, b) - geometric_mean(a, b)) < WITNESS_SEPARATION:
            errors.append(np.inf)
    return _result("uniqueness_witness", trials, errors, 1e-9)


def thompson_factorization(rng: np.random.Generator, trials: int, seed: int) -> SuiteResult:
    errors = []
    thompson_algebras = (
        sym_algebra(3),
        spin_algebra(3),
        direct_sum(sym_algebra(2), sym_algebra(2)),
        direct_sum(sym_algebra(3), sym_algebra(3)),
    )
    for algebra in thompson_algebras:
        for _ in range(trials):
            d = random_descriptor("T", algebra, rng)
            recovered = factor_thompson_isometry(build_isometry(d), algebra, seed)
            errors.append(_gap(recovered.b, d.b))
            errors.append(_gap(recovered.p, d.p))
            errors.append(recovered.diagnostics["roundtrip_residual"])
            if not check_jordan_isomorphism(matrix_of(recovered.iso, algebra), algebra, 1e-7):
                errors.append(np.inf)
    return _result("thompson_factorization", trials, errors, 1e-6)


def hilbert_factorization_suite(rng: np.random.Generator, trials: int, seed: int) -> SuiteResult:
    errors = []
    for algebra in (sym_algebra(3), vector_algebra(4)):
        for _ in range(trials):
            d = random_descriptor("H", algebra, rng)
            factorization = hilbert_factorization(build_isometry(d), algebra, seed)
            recovered = factorization.descriptor
            if recovered.epsilon != d.epsilon:
                errors.append(np.inf)
            errors.append(_gap(normalize_ray(recovered.b).representative, normalize_ray(d.b).representative))
            errors.append(recovered.diagnostics["roundtrip_residual"])
            report = verify_orthoisomorphism(factorization.theta, sample_projection_pairs(algebra, 2 * trials, rng))
            if not report.passed:
                errors.append(np.inf)
    return _result("hilbert_factorization", trials, errors, 1e-6)


def variation_ball_vertices(n: int, directions: int = 500, seed: int = 0) -> np.ndarray:
    """
    Vertices of the unit ball of ||.||_v on Vector(n)/span(e), found by
    maximizing random directions over {x : sum x = 0, x_i - x_j <= 1}.
    Rows are returned shifted to min 0, i.e. as 0-1 class representatives.
    """
    rows = []
    for i in range(n):
        for j in range(n):
            if i != j:
                row = np.zeros(n)
                row[i], row[j] = 1.0, -1.0
                rows.append(row)
    a_ub = np.array(rows)
    b_ub = np.ones(len(rows))
    rng = np.random.default_rng(seed)
    found: Dict[bytes, np.ndarray] = {}
    for _ in range(directions):
        c = rng.standard_normal(n)
        solution = linprog(-c, A_ub=a_ub, b_ub=b_ub, A_eq=np.ones((1, n)), b_eq=[0.0], bounds=[(None, None)] * n, method="highs")
        if not solution.success:
            continue
        vertex = solution.x - np.min(solution.x)
        vertex = np.round(vertex, 9) + 0.0
        found.setdefault(vertex.tobytes(), vertex)
    return np.array(sorted(found.values(), key=lambda v: tuple(v)))


def extreme_points(rng: np.random.Generator, trials: int) -> SuiteResult:
    algebra = vector_algebra(3)
    vertices = variation_ball_vertices(3, seed=int(rng.integers(0, 2 ** 31)))
    expected = {tuple(v) for v in np.array([[int(c) for c in f"{k:03b}"] for k in range(1, 7)], dtype=float)}
    errors = [0.0 if {tuple(v) for v in vertices} == expected else np.inf]
    for vertex in vertices:
        if not extreme_point_test(make_element(algebra, vertex)):
            errors.append(np.inf)
    # midpoints of edges are not extreme
    if extreme_point_test(make_element(algebra, [1.0, 0.5, 0.0])):
        errors.append(np.inf)
    return _result("extreme_points", trials, errors, 0.0)


def chains(rng: np.random.Generator, trials: int) -> SuiteResult:
    errors = []
    for n in (3, 4, 5):
        algebra = sym_algebra(n)
        for _ in range(trials):
            p = random_projection(algebra, rng, rank=1)
            q = random_projection(algebra, rng, rank=1)
            chain = orthogonality_chain(p, q)
            errors.append(0.0 if len(chain) <= 3 else np.inf)
    spin = spin_algebra(3)
    try:
        orthogonality_chain(random_projection(spin, rng, rank=1), random_projection(spin, rng, rank=1))
        errors.append(np.inf)
    except RankError:
        errors.append(0.0)
    return _result("chains", trials, errors, 0.0)


def group_relations(rng: np.random.Generator, trials: int, seed: int) -> SuiteResult:
    errors = []
    for algebra in (sym_algebra(3), direct_sum(sym_algebra(2), sym_algebra(2))):
        for _ in range(trials):
            b, a = random_interior(algebra, rng), random_interior(algebra, rng)
            errors.append(_gap(inverse(quadratic_rep(b, inverse(a))), quadratic_rep(inverse(b), a)))
            composed = compose_isometries(
                build_isometry(random_descriptor("T", algebra, rng)),
                build_isometry(random_descriptor("T", algebra, rng)),
            )
            recovered = factor_thompson_isometry(composed, algebra, seed)
            errors.append(recovered.diagnostics["roundtrip_residual"])
    return _result("group_relations", trials, errors, 1e-6)


def _suites(seed: int) -> Dict[str, Callable[[np.random.Generator, int], SuiteResult]]:
    return {
        "oracle_equivalence": oracle_equivalence,
        "isometry_invariance": isometry_invariance,
        "segment_value": segment_value,
        "geodesic_law": geodesic_law,
        "mean_laws": mean_laws,
        "convergence_exactness": convergence_exactness,
        "uniqueness_witness": uniqueness_witness,
        "thompson_factorization": lambda rng, trials: thompson_factorization(rng, trials, seed),
        "hilbert_factorization": lambda rng, trials: hilbert_factorization_suite(rng, trials, seed),
        "extreme_points": extreme_points,
        "chains": chains,
        "group_relations": lambda rng, trials: group_relations(rng, trials, seed),
    }


SUITE_NAMES = tuple(_suites(0))


def run_suites(seed: int, trials: int = 5, names: Optional[List[str]] = None) -> pd.DataFrame:
    """Run the named suites (all by default) and tabulate their results"""
    suites = _suites(seed)
    selected = names or list(suites)
    results = []
    for name in selected:
        if name not in suites:
            raise InvalidInputError(f"unknown suite {name!r}; choose from {', '.join(suites)}")
        rng = np.random.default_rng([seed, SUITE_NAMES.index(name)])
        try:
            result = suites[name](rng, trials)
        except ConeGeometryError as e:
            logger.warning("suite %s raised %s: %s", name, type(e).__name__, str(e))
            result = SuiteResult(name, trials, float("inf"), float("nan"), False, f"{type(e).__name__}: {str(e)}")
        logger.info("suite %s: max error %.3e, passed=%s", name, result.max_error, result.passed)
        results.append(result)
    return pd.DataFrame([r.__dict__ for r in results], columns=["suite", "trials", "max_error", "tolerance", "passed", "message"])
