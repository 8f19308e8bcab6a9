"""
Bilinear and quadratic structure of the supported Euclidean Jordan algebras
"""
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from conegeo.config import KERNEL_TOL
from jordan.errors import AlgebraMismatchError
from jordan.models import (
    SPIN,
    SUM,
    SYM,
    VECTOR,
    AlgebraDescriptor,
    Element,
)


def require_same_algebra(*elements: Element) -> AlgebraDescriptor:
    algebra = elements[0].algebra
    for other in elements[1:]:
        if other.algebra != algebra:
            raise AlgebraMismatchError(f"algebra mismatch: {algebra} vs {other.algebra}")
    return algebra


@lru_cache(maxsize=None)
def unit(algebra: AlgebraDescriptor) -> Element:
    """The unit e"""
    if algebra.kind == VECTOR:
        return Element.from_vector(algebra, np.ones(algebra.n))
    if algebra.kind == SYM:
        vec = np.zeros(algebra.dim)
        vec[:algebra.n] = 1.0
        return Element.from_vector(algebra, vec)
    if algebra.kind == SPIN:
        vec = np.zeros(algebra.dim)
        vec[-1] = 1.0
        return Element.from_vector(algebra, vec)
    return Element(algebra, tuple(unit(part) for part in algebra.parts))


@lru_cache(maxsize=None)
def zero(algebra: AlgebraDescriptor) -> Element:
    return Element.from_vector(algebra, np.zeros(algebra.dim))


@lru_cache(maxsize=None)
def canonical_basis(algebra: AlgebraDescriptor) -> Tuple[Element, ...]:
    """
    Canonical basis matching Element.to_vector coordinates:
    unit vectors for Vector(n), E_ii then E_ij + E_ji (i < j) for Sym(n),
    (e_k, 0) then (0, 1) for Spin(d), concatenated part bases for sums.
    """
    identity = np.eye(algebra.dim)
    return tuple(Element.from_vector(algebra, identity[k]) for k in range(algebra.dim))


def component(a: Element, index: int) -> Element:
    return a.parts[index]


def embed(algebra: AlgebraDescriptor, index: int, part: Element) -> Element:
    """Place a component element into a direct sum, zero elsewhere"""
    if algebra.kind != SUM:
        raise AlgebraMismatchError(f"{algebra} is not a direct sum")
    if algebra.parts[index] != part.algebra:
        raise AlgebraMismatchError(f"part {index} of {algebra} is {algebra.parts[index]}, got {part.algebra}")
    parts = [zero(p) for p in algebra.parts]
    parts[index] = part
    return Element(algebra, tuple(parts))


def jordan_product(a: Element, b: Element) -> Element:
    """a o b: commutative, bilinear"""
    algebra = require_same_algebra(a, b)
    kind = algebra.kind
    if kind == VECTOR:
        return Element.from_vector(algebra, a.data * b.data)
    if kind == SYM:
        product = a.data @ b.data
        return _sym(algebra, (product + product.T) / 2.0)
    if kind == SPIN:
        x, s = a.h, a.t
        y, t = b.h, b.t
        vec = np.concatenate([s * y + t * x, [float(np.dot(x, y)) + s * t]])
        return Element.from_vector(algebra, vec)
    return Element(algebra, tuple(jordan_product(p, q) for p, q in zip(a.parts, b.parts)))


def square(a: Element) -> Element:
    return jordan_product(a, a)


def triple_product(a: Element, b: Element, c: Element) -> Element:
    """{a,b,c} := (a o b) o c + (c o b) o a - (a o c) o b"""
    require_same_algebra(a, b, c)
    return (
        jordan_product(jordan_product(a, b), c)
        + jordan_product(jordan_product(c, b), a)
        - jordan_product(jordan_product(a, c), b)
    )


def quadratic_rep(a: Element, b: Element) -> Element:
    """U_a b = {a,b,a}; for Sym(n) this is the matrix product a b a"""
    algebra = require_same_algebra(a, b)
    kind = algebra.kind
    if kind == SYM:
        product = a.data @ b.data @ a.data
        return _sym(algebra, (product + product.T) / 2.0)
    if kind == SUM:
        return Element(algebra, tuple(quadratic_rep(p, q) for p, q in zip(a.parts, b.parts)))
    return jordan_product(a, jordan_product(a, b)) * 2.0 - jordan_product(square(a), b)


def trace_inner_product(a: Element, b: Element) -> float:
    """Associative trace form; <e,e> equals the rank"""
    algebra = require_same_algebra(a, b)
    kind = algebra.kind
    if kind == VECTOR:
        return float(np.dot(a.data, b.data))
    if kind == SYM:
        return float(np.sum(a.data * b.data))
    if kind == SPIN:
        return 2.0 * (float(np.dot(a.h, b.h)) + a.t * b.t)
    return sum(trace_inner_product(p, q) for p, q in zip(a.parts, b.parts))


def trace(a: Element) -> float:
    return trace_inner_product(a, unit(a.algebra))


def coordinate_norm(a: Element) -> float:
    """Euclidean norm induced by the trace form"""
    return float(np.sqrt(max(trace_inner_product(a, a), 0.0)))


def operator_commute(a: Element, b: Element, tol: Optional[float] = None) -> bool:
    """True iff a o (b o c) = b o (a o c) for every canonical basis vector c"""
    algebra = require_same_algebra(a, b)
    if tol is None:
        tol = KERNEL_TOL * max(1.0, coordinate_norm(a) * coordinate_norm(b))
    for c in canonical_basis(algebra):
        defect = jordan_product(a, jordan_product(b, c)) - jordan_product(b, jordan_product(a, c))
        if coordinate_norm(defect) > tol:
            return False
    return True


def is_central(a: Element, tol: Optional[float] = None) -> bool:
    """True iff a operator-commutes with the whole algebra"""
    return all(operator_commute(a, c, tol) for c in canonical_basis(a.algebra))


def linear_map_matrix(fn: Callable[[Element], Element], algebra: AlgebraDescriptor) -> np.ndarray:
    """Matrix of a linear map in canonical coordinates (columns are images of basis vectors)"""
    columns = [fn(basis).to_vector() for basis in canonical_basis(algebra)]
    return np.column_stack(columns)


def apply_linear_map(matrix: np.ndarray, a: Element) -> Element:
    return Element.from_vector(a.algebra, matrix @ a.to_vector())


def multiplication_matrix(a: Element) -> np.ndarray:
    """Matrix of L_a: x -> a o x"""
    return linear_map_matrix(lambda x: jordan_product(a, x), a.algebra)


def quadratic_matrix(a: Element) -> np.ndarray:
    """Matrix of U_a"""
    return linear_map_matrix(lambda x: quadratic_rep(a, x), a.algebra)


def allclose(a: Element, b: Element, tol: float) -> bool:
    require_same_algebra(a, b)
    return float(np.max(np.abs(a.to_vector() - b.to_vector()), initial=0.0)) <= tol


def _sym(algebra: AlgebraDescriptor, matrix: np.ndarray) -> Element:
    matrix = np.array(matrix, dtype=float)
    matrix.setflags(write=False)
    return Element(algebra, matrix)
