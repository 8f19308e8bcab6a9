import numpy as np
import pytest

from conegeo.metrics import quotient_class
from conegeo.projections import (
    canonical_frame,
    canonical_simplices,
    extreme_point_test,
    induced_projection_map,
    is_maximal,
    lattice_predicates,
    orthogonal_simplex,
    orthogonality_chain,
    sample_projection_pairs,
    simplex_membership,
    simplex_orientation,
    verify_orthoisomorphism,
)
from conegeo.verify import variation_ball_vertices
from jordan.algebra import is_central, trace_inner_product, unit
from jordan.errors import InvalidInputError, NotAnIsometryError, NotInAffineHullError, RankError
from jordan.models import direct_sum, make_element, spin_algebra, sym_algebra, vector_algebra
from jordan.sampling import random_orthogonal, random_projection
from jordan.spectral import complement, inverse, projection_rank

SYM3 = sym_algebra(3)
VEC3 = vector_algebra(3)


def diag(*values):
    return make_element(sym_algebra(len(values)), np.diag(values))


def test_lattice_predicates():
    p = diag(1.0, 0.0, 0.0)
    q = diag(0.0, 1.0, 0.0)
    relation = lattice_predicates(p, q)
    assert relation.orthogonal
    assert not relation.below
    assert not relation.maximal_p
    assert not relation.central_p
    assert lattice_predicates(p, diag(1.0, 1.0, 0.0)).below
    assert is_maximal(diag(1.0, 1.0, 0.0))
    assert lattice_predicates(unit(SYM3), p).central_p


def test_theta_of_identity_and_inversion(rng):
    identity = induced_projection_map(lambda x: x, SYM3)
    inversion = induced_projection_map(inverse, SYM3)
    for _ in range(5):
        p = random_projection(SYM3, rng)
        np.testing.assert_allclose(identity(p).to_vector(), p.to_vector(), atol=1e-9)
        np.testing.assert_allclose(inversion(p).to_vector(), complement(p).to_vector(), atol=1e-9)


def test_theta_of_orthogonal_conjugation(rng):
    u = random_orthogonal(3, rng)
    theta = induced_projection_map(lambda x: make_element(SYM3, u @ x.matrix @ u.T), SYM3)
    for _ in range(5):
        p = random_projection(SYM3, rng)
        np.testing.assert_allclose(theta(p).matrix, u @ p.matrix @ u.T, atol=1e-9)


def test_theta_fixes_trivial_projections():
    theta = induced_projection_map(lambda x: x, SYM3)
    np.testing.assert_allclose(theta(unit(SYM3)).to_vector(), unit(SYM3).to_vector())
    np.testing.assert_allclose(theta(unit(SYM3) * 0.0).to_vector(), 0.0)


def test_theta_rejects_non_isometries():
    shear = make_element(SYM3, [[0.0, 0.0, 0.2], [0.0, 0.0, 0.0], [0.2, 0.0, 0.0]])

    def f(x):
        return x + shear * float(x.matrix[0, 0] - x.matrix[1, 1])

    theta = induced_projection_map(f, SYM3)
    with pytest.raises(NotAnIsometryError):
        theta(diag(1.0, 0.0, 0.0))


def test_theta_requires_fixed_ray():
    with pytest.raises(InvalidInputError):
        induced_projection_map(lambda x: x + diag(1.0, 0.0, 0.0), SYM3)


def test_extreme_points():
    assert extreme_point_test(make_element(VEC3, [1.0, 0.0, 0.0]))
    assert extreme_point_test(quotient_class(make_element(VEC3, [4.0, 4.0, 1.0])))
    assert not extreme_point_test(make_element(VEC3, [1.0, 0.5, 0.0]))
    with pytest.raises(InvalidInputError):
        extreme_point_test(unit(VEC3))


def test_vertex_enumeration_matches_extreme_points():
    vertices = variation_ball_vertices(3)
    expected = {(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (1.0, 1.0, 0.0), (1.0, 0.0, 1.0), (0.0, 1.0, 1.0)}
    assert {tuple(v) for v in vertices} == expected
    for vertex in vertices:
        assert extreme_point_test(make_element(VEC3, vertex))


def test_simplex_membership_regions():
    p1, p2, p3 = diag(1.0, 0.0, 0.0), diag(0.0, 1.0, 0.0), diag(0.0, 0.0, 1.0)
    simplex = orthogonal_simplex(p1, p2, p3)

    inside = simplex_membership(simplex, unit(SYM3) / 3.0)
    assert inside.region == "interior"
    assert inside.cone_position == "interior"
    np.testing.assert_allclose(inside.barycentric, [1 / 3, 1 / 3, 1 / 3])

    face = simplex_membership(simplex, (p1 + p2) / 2.0)
    assert face.region == "boundary-face"
    assert face.cone_position == "boundary"

    outside = simplex_membership(simplex, p1 * 1.5 - p2 * 0.5)
    assert outside.region == "outside"
    assert outside.cone_position == "outside"

    with pytest.raises(NotInAffineHullError):
        simplex_membership(simplex, p1 * 2.0)
    with pytest.raises(NotInAffineHullError):
        simplex_membership(simplex, make_element(SYM3, np.full((3, 3), 1.0 / 3.0)))


def test_orthogonal_simplex_validation():
    with pytest.raises(InvalidInputError):
        orthogonal_simplex(diag(1.0, 0.0, 0.0), diag(1.0, 0.0, 0.0), diag(0.0, 1.0, 1.0))
    with pytest.raises(InvalidInputError):
        orthogonal_simplex(diag(1.0, 0.0, 0.0), diag(0.0, 1.0, 0.0), diag(0.0, 0.0, 0.0))


def test_canonical_simplices(rng):
    algebra = direct_sum(sym_algebra(2), vector_algebra(2))
    assert len(canonical_frame(algebra)) == 4
    simplices = canonical_simplices(algebra, rng)
    assert len(simplices) == 2
    theta = induced_projection_map(lambda x: x, algebra)
    assert [simplex_orientation(theta, s) for s in simplices] == [1, 1]
    flipped = induced_projection_map(inverse, algebra)
    assert [simplex_orientation(flipped, s) for s in simplices] == [-1, -1]
    with pytest.raises(RankError):
        canonical_simplices(spin_algebra(3), rng)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_chains_between_rank_one_projections(n, rng):
    algebra = sym_algebra(n)
    e = unit(algebra)
    for _ in range(15):
        p = random_projection(algebra, rng, rank=1)
        q = random_projection(algebra, rng, rank=1)
        chain = orthogonality_chain(p, q).projections
        assert len(chain) <= 3
        np.testing.assert_allclose(chain[0].to_vector(), p.to_vector())
        np.testing.assert_allclose(chain[-1].to_vector(), q.to_vector())
        for x, y in zip(chain[:-1], chain[1:]):
            assert abs(trace_inner_product(x, y)) <= 1e-9
            assert projection_rank(e - x - y) >= 1


def test_orthogonal_pair_is_a_direct_chain():
    chain = orthogonality_chain(diag(1.0, 0.0, 0.0), diag(0.0, 1.0, 0.0))
    assert len(chain) == 2


def test_comparable_pair_routes_outside_its_join():
    p, q = diag(1.0, 0.0, 0.0, 0.0), diag(1.0, 1.0, 0.0, 0.0)
    chain = orthogonality_chain(p, q)
    assert len(chain) == 3
    first, middle, last = chain.projections
    np.testing.assert_allclose(first.matrix, p.matrix)
    np.testing.assert_allclose(last.matrix, q.matrix)
    assert trace_inner_product(middle, q) == pytest.approx(0.0, abs=1e-12)
    assert projection_rank(middle) == 1


def test_chain_routes_through_central_projection(rng):
    algebra = direct_sum(SYM3, SYM3)
    p = make_element(algebra, [np.diag([1.0, 0.0, 0.0]), np.zeros((3, 3))])
    q = make_element(algebra, [np.full((3, 3), 1.0 / 3.0), np.zeros((3, 3))])
    chain = orthogonality_chain(p, q).projections
    assert len(chain) == 3
    assert is_central(chain[1])


def test_chain_errors(rng):
    spin = spin_algebra(3)
    with pytest.raises(RankError):
        orthogonality_chain(random_projection(spin, rng, rank=1), random_projection(spin, rng, rank=1))
    with pytest.raises(InvalidInputError):
        orthogonality_chain(diag(1.0, 1.0, 0.0), diag(0.0, 0.0, 1.0))
    with pytest.raises(InvalidInputError):
        orthogonality_chain(unit(SYM3), diag(0.0, 0.0, 1.0))


def test_orthoisomorphism_report(rng):
    algebra = sym_algebra(4)
    theta = induced_projection_map(inverse, algebra)
    report = verify_orthoisomorphism(lambda p: complement(theta(p)), sample_projection_pairs(algebra, 12, rng))
    assert report.passed
    frame = report.to_frame()
    assert list(frame.columns) == ["pair", "orthogonality", "complement", "commutation", "passed"]
    assert len(frame) == 12


def test_orthoisomorphism_report_flags_bad_maps(rng):
    pairs = [(diag(1.0, 0.0, 0.0), diag(0.0, 1.0, 0.0))]
    report = verify_orthoisomorphism(complement, pairs)
    assert not report.passed
