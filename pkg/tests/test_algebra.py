import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jordan.algebra import (
    jordan_product,
    operator_commute,
    quadratic_matrix,
    quadratic_rep,
    square,
    trace,
    trace_inner_product,
    triple_product,
    unit,
)
from jordan.errors import AlgebraMismatchError, InvalidInputError
from jordan.models import make_element, spin_algebra, spin_element, sym_algebra, vector_algebra
from jordan.sampling import random_element, random_interior
from jordan.spectral import eigenvalues, inverse
from tests.conftest import CATALOGUE

SYM2 = sym_algebra(2)
SYM3 = sym_algebra(3)
SPIN3 = spin_algebra(3)


def test_unit_law(rng):
    a = random_element(SYM2, rng)
    np.testing.assert_allclose(jordan_product(a, unit(SYM2)).to_vector(), a.to_vector(), atol=1e-14)


def test_product_is_commutative(algebra, rng):
    a, b = random_element(algebra, rng), random_element(algebra, rng)
    np.testing.assert_allclose(jordan_product(a, b).to_vector(), jordan_product(b, a).to_vector(), atol=1e-12)


def test_spin_product():
    a = spin_element(SPIN3, [1.0, 0.0, 2.0], 3.0)
    b = spin_element(SPIN3, [0.0, 1.0, 1.0], -1.0)
    product = jordan_product(a, b)
    np.testing.assert_allclose(product.h, [-1.0, 3.0, 1.0])
    assert product.t == pytest.approx(-1.0)


def test_triple_product_matches_matrix_oracle(rng):
    a, b = random_element(SYM2, rng), random_element(SYM2, rng)
    np.testing.assert_allclose(triple_product(a, b, a).matrix, a.matrix @ b.matrix @ a.matrix, atol=1e-12)


def test_quadratic_rep_of_unit_is_square(rng):
    a = random_element(SYM3, rng)
    np.testing.assert_allclose(quadratic_rep(a, unit(SYM3)).to_vector(), square(a).to_vector(), atol=1e-12)


def test_quadratic_rep_spin_uses_generic_formula(rng):
    a = random_element(SPIN3, rng)
    np.testing.assert_allclose(quadratic_rep(a, unit(SPIN3)).to_vector(), square(a).to_vector(), atol=1e-12)


def test_trace_inner_product_values():
    x = make_element(SYM2, np.diag([1.0, 2.0]))
    y = make_element(SYM2, np.diag([3.0, 4.0]))
    assert trace_inner_product(x, y) == pytest.approx(11.0)
    a = spin_element(SPIN3, [1.0, 2.0, 0.0], 1.0)
    b = spin_element(SPIN3, [3.0, 0.0, 5.0], 2.0)
    assert trace_inner_product(a, b) == pytest.approx(2.0 * (3.0 + 2.0))


def test_trace_of_unit_is_rank(algebra):
    assert trace(unit(algebra)) == pytest.approx(algebra.rank)


def test_operator_commute():
    a = make_element(SYM3, np.diag([1.0, 2.0, 3.0]))
    b = make_element(SYM3, np.diag([-1.0, 0.5, 4.0]))
    assert operator_commute(a, b)

    p = make_element(SYM2, np.diag([1.0, 0.0]))
    q = make_element(SYM2, np.full((2, 2), 0.5))
    assert not operator_commute(p, q)


@settings(deadline=None, max_examples=25)
@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_fundamental_identity(seed):
    rng = np.random.default_rng(seed)
    for algebra in (SYM3, SPIN3):
        a = random_interior(algebra, rng)
        b = random_interior(algebra, rng)
        lhs = quadratic_matrix(quadratic_rep(a, b))
        rhs = quadratic_matrix(a) @ quadratic_matrix(b) @ quadratic_matrix(a)
        np.testing.assert_allclose(lhs, rhs, atol=1e-8 * max(1.0, np.max(np.abs(rhs))))


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatchError):
        jordan_product(unit(SYM2), unit(vector_algebra(2)))


def test_make_element_symmetrizes_and_validates():
    a = make_element(SYM2, [[1.0, 2.0], [0.0, 1.0]])
    np.testing.assert_allclose(a.matrix, [[1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(InvalidInputError):
        make_element(SYM2, [[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(InvalidInputError):
        make_element(vector_algebra(3), [1.0, 2.0])


@settings(deadline=None, max_examples=30)
@given(
    algebra=st.sampled_from(CATALOGUE),
    seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
    s=st.floats(min_value=-3.0, max_value=3.0),
    t=st.floats(min_value=-3.0, max_value=3.0),
)
def test_product_is_bilinear(algebra, seed, s, t):
    rng = np.random.default_rng(seed)
    a, b, c = (random_element(algebra, rng) for _ in range(3))
    lhs = jordan_product(s * a + t * b, c)
    rhs = s * jordan_product(a, c) + t * jordan_product(b, c)
    np.testing.assert_allclose(lhs.to_vector(), rhs.to_vector(), atol=1e-11)


@settings(deadline=None, max_examples=30)
@given(algebra=st.sampled_from(CATALOGUE), seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_power_associativity(algebra, seed):
    a = random_element(algebra, np.random.default_rng(seed))
    a2 = square(a)
    np.testing.assert_allclose(jordan_product(a2, a).to_vector(), jordan_product(a, a2).to_vector(), atol=1e-11)


@settings(deadline=None, max_examples=30)
@given(algebra=st.sampled_from(CATALOGUE), seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_quadratic_rep_preserves_the_cone(algebra, seed):
    rng = np.random.default_rng(seed)
    a, b = random_interior(algebra, rng), random_interior(algebra, rng)
    assert eigenvalues(quadratic_rep(a, b))[-1] >= -1e-10


@settings(deadline=None, max_examples=30)
@given(algebra=st.sampled_from(CATALOGUE), seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_product_with_inverse_is_unit(algebra, seed):
    a = random_interior(algebra, np.random.default_rng(seed))
    np.testing.assert_allclose(jordan_product(a, inverse(a)).to_vector(), unit(algebra).to_vector(), atol=1e-9)
