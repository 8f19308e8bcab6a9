import numpy as np
import pytest

from conegeo.metrics import as_ray, distance, normalize_ray, quotient_class
from conegeo.morphisms import (
    IDENTITY,
    SPIN_ORTHOGONAL,
    IsometryDescriptor,
    apply_jordan_iso,
    build_isometry,
    check_jordan_isomorphism,
    compose,
    compose_isometries,
    coordinate_permutation,
    extend_orthoisomorphism,
    factor_hilbert_isometry,
    factor_order_isomorphism,
    factor_thompson_isometry,
    hilbert_factorization,
    identity_iso,
    linearize_isometry,
    match_jordan_iso,
    matrix_of,
    orthogonal_conjugation,
    random_descriptor,
    random_jordan_iso,
    sum_iso,
)
from conegeo.projections import InducedProjectionMap, sample_projection_pairs, verify_orthoisomorphism
from jordan.algebra import apply_linear_map, jordan_product, linear_map_matrix, quadratic_matrix, quadratic_rep, square, unit
from jordan.errors import (
    InvalidInputError,
    NotAnIsometryError,
    NotJordanIsomorphismError,
    ResidualError,
)
from jordan.models import direct_sum, make_element, spin_algebra, sym_algebra, vector_algebra
from jordan.sampling import random_element, random_interior
from jordan.spectral import complement, exp, inverse, log

SYM2 = sym_algebra(2)
SYM3 = sym_algebra(3)
ROTATION = np.array([[0.0, -1.0], [1.0, 0.0]])
CYCLE = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])

THOMPSON_ALGEBRAS = [SYM3, spin_algebra(3), direct_sum(SYM2, SYM2), direct_sum(SYM3, SYM3), vector_algebra(3)]
HILBERT_ALGEBRAS = [SYM3, vector_algebra(4), direct_sum(SYM2, SYM2)]


def diag(*values):
    return make_element(sym_algebra(len(values)), np.diag(values))


def test_orthogonal_conjugation_rotates_diagonal():
    image = apply_jordan_iso(orthogonal_conjugation(ROTATION), diag(1.0, 2.0))
    np.testing.assert_allclose(image.matrix, np.diag([2.0, 1.0]), atol=1e-15)


def test_sum_iso_swaps_components():
    algebra = direct_sum(SYM2, SYM2)
    a = make_element(algebra, [np.diag([1.0, 2.0]), np.diag([3.0, 4.0])])
    image = apply_jordan_iso(sum_iso([1, 0], [identity_iso(), identity_iso()]), a)
    np.testing.assert_allclose(image.parts[0].matrix, np.diag([3.0, 4.0]))
    np.testing.assert_allclose(image.parts[1].matrix, np.diag([1.0, 2.0]))


def test_non_orthogonal_matrix_rejected():
    with pytest.raises(InvalidInputError):
        orthogonal_conjugation(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_check_jordan_isomorphism(algebra, rng):
    J = random_jordan_iso(algebra, rng)
    assert check_jordan_isomorphism(matrix_of(J, algebra), algebra)


def test_non_orthogonal_conjugation_is_not_jordan():
    g = np.array([[2.0, 1.0], [0.0, 1.0]])
    T = linear_map_matrix(lambda x: make_element(SYM2, g @ x.matrix @ g.T), SYM2)
    assert not check_jordan_isomorphism(T, SYM2)
    with pytest.raises(NotJordanIsomorphismError):
        match_jordan_iso(T, SYM2)


def test_match_recovers_the_family(algebra, rng):
    J = random_jordan_iso(algebra, rng)
    matched = match_jordan_iso(matrix_of(J, algebra), algebra)
    np.testing.assert_allclose(matrix_of(matched, algebra), matrix_of(J, algebra), atol=1e-9)


def test_match_canonicalizes_identity():
    assert match_jordan_iso(np.eye(SYM3.dim), SYM3).kind == IDENTITY
    assert match_jordan_iso(np.eye(6), direct_sum(SYM2, vector_algebra(3))).kind == IDENTITY


def test_compose(rng):
    algebra = direct_sum(SYM2, SYM2)
    outer, inner = random_jordan_iso(algebra, rng), random_jordan_iso(algebra, rng)
    composed = compose(outer, inner, algebra)
    np.testing.assert_allclose(
        matrix_of(composed, algebra), matrix_of(outer, algebra) @ matrix_of(inner, algebra), atol=1e-9
    )


def test_factor_order_isomorphism(rng):
    b = random_interior(SYM3, rng)
    J = orthogonal_conjugation(CYCLE)
    T = quadratic_matrix(b) @ matrix_of(J, SYM3)
    recovered_b, recovered_J = factor_order_isomorphism(T, SYM3)
    np.testing.assert_allclose(recovered_b.to_vector(), b.to_vector(), atol=1e-10)
    np.testing.assert_allclose(matrix_of(recovered_J, SYM3), matrix_of(J, SYM3), atol=1e-9)


@pytest.mark.parametrize("metric", ["T", "H"])
def test_built_isometries_preserve_their_metric(metric, rng):
    for algebra in (SYM3, direct_sum(SYM2, SYM2)):
        f = build_isometry(random_descriptor(metric, algebra, rng))
        for _ in range(10):
            a, b = random_interior(algebra, rng), random_interior(algebra, rng)
            assert distance(f(a), f(b), metric) == pytest.approx(distance(a, b, metric), abs=1e-8)


def test_invalid_descriptors():
    with pytest.raises(InvalidInputError):
        build_isometry(IsometryDescriptor(metric="T", b=unit(SYM2), iso=identity_iso(), p=diag(1.0, 0.0)))
    with pytest.raises(InvalidInputError):
        build_isometry(IsometryDescriptor(metric="T", b=diag(1.0, -1.0), iso=identity_iso(), p=unit(SYM2)))
    with pytest.raises(InvalidInputError):
        build_isometry(IsometryDescriptor(metric="H", b=unit(SYM2), iso=identity_iso(), epsilon=2))


def test_linearize_inversion():
    linearized = linearize_isometry(
        lambda x: make_element(SYM3, np.linalg.inv(x.matrix)), "T", SYM3, seed=3
    )
    np.testing.assert_allclose(linearized.matrix, -np.eye(SYM3.dim), atol=1e-10)
    assert linearized.residual <= 1e-10


def test_linearize_rejects_nonlinear_maps():
    with pytest.raises(ResidualError):
        linearize_isometry(lambda x: exp(square(log(x))), "T", SYM3, seed=3)


def test_linearize_requires_fixed_unit():
    with pytest.raises(InvalidInputError):
        linearize_isometry(lambda x: x * 2.0, "T", SYM3)


def test_squaring_is_not_a_thompson_isometry():
    with pytest.raises(NotAnIsometryError):
        factor_thompson_isometry(lambda x: square(x), SYM3, seed=1)


@pytest.mark.parametrize("algebra", THOMPSON_ALGEBRAS, ids=str)
def test_thompson_factorization_round_trip(algebra, rng):
    for _ in range(4):
        d = random_descriptor("T", algebra, rng)
        recovered = factor_thompson_isometry(build_isometry(d), algebra, seed=11)
        np.testing.assert_allclose(recovered.b.to_vector(), d.b.to_vector(), atol=1e-6)
        np.testing.assert_allclose(recovered.p.to_vector(), d.p.to_vector(), atol=1e-6)
        assert check_jordan_isomorphism(matrix_of(recovered.iso, algebra), algebra, 1e-7)
        assert recovered.diagnostics["roundtrip_residual"] <= 1e-6


def test_thompson_factorization_of_a_composition(rng):
    algebra = direct_sum(SYM2, SYM2)
    first = build_isometry(random_descriptor("T", algebra, rng))
    second = build_isometry(random_descriptor("T", algebra, rng))
    composed = compose_isometries(first, second)
    recovered = build_isometry(factor_thompson_isometry(composed, algebra, seed=5))
    for _ in range(10):
        x = random_interior(algebra, rng)
        np.testing.assert_allclose(recovered(x).to_vector(), composed(x).to_vector(), atol=1e-6)


@pytest.mark.parametrize("algebra", HILBERT_ALGEBRAS, ids=str)
@pytest.mark.parametrize("epsilon", [1, -1])
def test_hilbert_factorization_round_trip(algebra, epsilon, rng):
    d = random_descriptor("H", algebra, rng)
    d = IsometryDescriptor(metric="H", b=d.b, iso=d.iso, epsilon=epsilon)
    factorization = hilbert_factorization(build_isometry(d), algebra, seed=7)
    recovered = factorization.descriptor
    assert recovered.epsilon == epsilon
    assert len(set(factorization.votes)) == 1
    np.testing.assert_allclose(
        normalize_ray(recovered.b).representative.to_vector(), normalize_ray(d.b).representative.to_vector(), atol=1e-6
    )
    report = verify_orthoisomorphism(factorization.theta, sample_projection_pairs(algebra, 30, rng))
    assert report.passed


@pytest.mark.parametrize("algebra", [spin_algebra(3), vector_algebra(2)], ids=str)
def test_hilbert_factorization_on_rank_two(algebra, rng):
    d = random_descriptor("H", algebra, rng)
    d = IsometryDescriptor(metric="H", b=d.b, iso=d.iso, epsilon=-1)
    f = build_isometry(d)
    recovered = build_isometry(factor_hilbert_isometry(f, algebra, seed=2))
    for _ in range(10):
        x = random_interior(algebra, rng)
        assert recovered(x) == as_ray(f(x))


def test_spin_inversion_factors_as_negation():
    recovered = factor_hilbert_isometry(inverse, spin_algebra(3), seed=0)
    assert recovered.epsilon == 1
    assert recovered.iso.kind == SPIN_ORTHOGONAL
    np.testing.assert_allclose(recovered.iso.u, -np.eye(3), atol=1e-8)


@pytest.mark.parametrize("epsilon", [1, -1])
def test_recovered_iso_acts_like_the_linearization(epsilon, rng):
    d = IsometryDescriptor(metric="H", b=diag(1.5, 1.0, 0.5), iso=orthogonal_conjugation(CYCLE), epsilon=epsilon)
    factorization = hilbert_factorization(build_isometry(d), SYM3, seed=3)
    recovered = factorization.descriptor
    S = factorization.linearized.matrix
    for _ in range(5):
        x = quotient_class(random_element(SYM3, rng)).representative
        expected = quotient_class(apply_linear_map(S, x)).representative
        actual = quotient_class(apply_jordan_iso(recovered.iso, x) * float(recovered.epsilon)).representative
        np.testing.assert_allclose(actual.to_vector(), expected.to_vector(), atol=1e-7)


def test_hilbert_factorization_rejects_rank_one():
    with pytest.raises(InvalidInputError):
        factor_hilbert_isometry(lambda x: x, vector_algebra(1))


def test_group_relation_for_inversion(rng):
    b, a = random_interior(SYM3, rng), random_interior(SYM3, rng)
    left = make_element(SYM3, np.linalg.inv(quadratic_rep(b, make_element(SYM3, np.linalg.inv(a.matrix))).matrix))
    right = quadratic_rep(make_element(SYM3, np.linalg.inv(b.matrix)), a)
    np.testing.assert_allclose(left.to_vector(), right.to_vector(), atol=1e-9)


def test_extend_identity_theta():
    iso = extend_orthoisomorphism(lambda p: p, SYM3)
    assert iso.kind == IDENTITY


def test_extend_permutation_conjugation():
    theta = lambda p: make_element(SYM3, CYCLE @ p.matrix @ CYCLE.T)
    iso = extend_orthoisomorphism(theta, SYM3)
    np.testing.assert_allclose(matrix_of(iso, SYM3), matrix_of(orthogonal_conjugation(CYCLE), SYM3), atol=1e-9)


def test_extend_rejects_complement_map():
    with pytest.raises(NotJordanIsomorphismError):
        extend_orthoisomorphism(complement, SYM3)


def test_extend_from_linearized_theta(rng):
    J = coordinate_permutation([2, 0, 1, 3])
    algebra = vector_algebra(4)
    theta = InducedProjectionMap.from_matrix(matrix_of(J, algebra), algebra)
    iso = extend_orthoisomorphism(theta, algebra)
    assert iso.perm == (2, 0, 1, 3)
    p = make_element(algebra, [1.0, 0.0, 0.0, 0.0])
    np.testing.assert_allclose(jordan_product(theta(p), theta(complement(p))).to_vector(), 0.0, atol=1e-10)
