"""
Spectral decomposition, functional calculus, norms and Peirce machinery
"""
import logging
from typing import Callable, Literal, NamedTuple, Optional

import numpy as np
from scipy import linalg

from conegeo.config import INTERIOR_MARGIN, PROJECTION_TOL
from jordan.algebra import (
    apply_linear_map,
    canonical_basis,
    embed,
    quadratic_matrix,
    unit,
)
from jordan.errors import DomainError, EigensolverError, NotProjectionError
from jordan.models import (
    SPIN,
    SYM,
    VECTOR,
    Element,
    JordanFrame,
    SpectralFrame,
    spectral_points,
)

logger = logging.getLogger(__name__)

ScalarFunction = Literal["pow", "exp", "log", "sqrt", "inv"]
NormKind = Literal["order-unit", "variation"]
Position = Literal["interior", "boundary", "outside"]


def _check_finite(a: Element) -> None:
    if not np.all(np.isfinite(a.to_vector())):
        raise EigensolverError(f"non-finite coordinates in element of {a.algebra}")


def _sym_eigh(matrix: np.ndarray):
    try:
        values, vectors = linalg.eigh(matrix)
    except (linalg.LinAlgError, ValueError) as e:
        raise EigensolverError(f"symmetric eigensolver failed: {str(e)}")
    order = np.argsort(values)[::-1]
    return values[order], vectors[:, order]


def eigenvalues(a: Element) -> np.ndarray:
    """Spectrum with multiplicity, descending"""
    _check_finite(a)
    kind = a.algebra.kind
    if kind == VECTOR:
        return np.sort(np.array(a.data, dtype=float))[::-1]
    if kind == SYM:
        try:
            values = linalg.eigh(a.data, eigvals_only=True)
        except (linalg.LinAlgError, ValueError) as e:
            raise EigensolverError(f"symmetric eigensolver failed: {str(e)}")
        return np.sort(values)[::-1]
    if kind == SPIN:
        r = float(np.linalg.norm(a.h))
        return np.array([a.t + r, a.t - r])
    values = np.concatenate([eigenvalues(part) for part in a.parts])
    return np.sort(values)[::-1]


def jordan_frame(a: Element) -> JordanFrame:
    """Primitive orthogonal idempotents c_i with a = sum lambda_i c_i, lambda descending"""
    _check_finite(a)
    algebra = a.algebra
    kind = algebra.kind
    if kind == VECTOR:
        order = np.argsort(-np.asarray(a.data), kind="stable")
        identity = np.eye(algebra.n)
        idempotents = tuple(Element.from_vector(algebra, identity[i]) for i in order)
        return JordanFrame(np.asarray(a.data)[order].astype(float), idempotents)
    if kind == SYM:
        values, vectors = _sym_eigh(a.data)
        idempotents = []
        for i in range(algebra.n):
            v = vectors[:, i]
            matrix = np.outer(v, v)
            matrix.setflags(write=False)
            idempotents.append(Element(algebra, matrix))
        return JordanFrame(values, tuple(idempotents))
    if kind == SPIN:
        h = a.h
        r = float(np.linalg.norm(h))
        if r > 0.0:
            direction = h / r
        else:
            direction = np.zeros(algebra.n)
            direction[0] = 1.0
        upper = Element.from_vector(algebra, np.concatenate([direction / 2.0, [0.5]]))
        lower = Element.from_vector(algebra, np.concatenate([-direction / 2.0, [0.5]]))
        return JordanFrame(np.array([a.t + r, a.t - r]), (upper, lower))

    values = []
    idempotents = []
    for index, part in enumerate(a.parts):
        frame = jordan_frame(part)
        values.extend(frame.eigenvalues)
        idempotents.extend(embed(algebra, index, c) for c in frame.idempotents)
    values = np.asarray(values, dtype=float)
    order = np.argsort(-values, kind="stable")
    return JordanFrame(values[order], tuple(idempotents[i] for i in order))


def spectral_decomposition(a: Element, tol: Optional[float] = None) -> SpectralFrame:
    """
    Clustered spectral decomposition: eigenvalues closer than the clustering
    tolerance share one spectral point and their idempotents are merged.
    """
    frame = jordan_frame(a)
    clusters = spectral_points(frame.eigenvalues, tol)
    values = []
    idempotents = []
    multiplicities = []
    for cluster in clusters:
        values.append(float(np.mean(frame.eigenvalues[cluster])))
        total = frame.idempotents[cluster[0]]
        for i in cluster[1:]:
            total = total + frame.idempotents[i]
        idempotents.append(total)
        multiplicities.append(len(cluster))
    logger.debug("spectral decomposition of %s: %d points", a.algebra, len(values))
    return SpectralFrame(
        element=a,
        eigenvalues=np.asarray(values),
        idempotents=tuple(idempotents),
        multiplicities=tuple(multiplicities),
        primitive_eigenvalues=frame.eigenvalues,
    )


def _scalar_callable(f: ScalarFunction, alpha: Optional[float]) -> Callable[[np.ndarray], np.ndarray]:
    if f == "exp":
        return np.exp
    if f == "log":
        return np.log
    if f == "sqrt":
        return np.sqrt
    if f == "inv":
        return lambda x: 1.0 / x
    if f == "pow":
        if alpha is None:
            raise DomainError("pow needs an exponent alpha")
        return lambda x: np.power(x, float(alpha))
    raise DomainError(f"unknown scalar function {f!r}")


def _needs_positive(f: ScalarFunction, alpha: Optional[float]) -> bool:
    if f in ("log", "sqrt", "inv"):
        return True
    if f == "pow":
        return alpha < 0 or float(alpha) != int(alpha)
    return False


def _apply(a: Element, fn: Callable[[np.ndarray], np.ndarray]) -> Element:
    algebra = a.algebra
    kind = algebra.kind
    if kind == VECTOR:
        return Element.from_vector(algebra, fn(np.asarray(a.data, dtype=float)))
    if kind == SYM:
        values, vectors = _sym_eigh(a.data)
        matrix = (vectors * fn(values)) @ vectors.T
        matrix = (matrix + matrix.T) / 2.0
        matrix.setflags(write=False)
        return Element(algebra, matrix)
    if kind == SPIN:
        frame = jordan_frame(a)
        images = fn(frame.eigenvalues)
        return frame.idempotents[0] * float(images[0]) + frame.idempotents[1] * float(images[1])
    return Element(algebra, tuple(_apply(part, fn) for part in a.parts))


def apply_scalar_function(a: Element, f: ScalarFunction, alpha: Optional[float] = None) -> Element:
    """sum f(lambda_i) q_i over the spectral frame of a"""
    _check_finite(a)
    fn = _scalar_callable(f, alpha)
    if _needs_positive(f, alpha):
        smallest = float(eigenvalues(a)[-1])
        if smallest <= 0.0:
            label = f if f != "pow" else f"pow({alpha})"
            raise DomainError(f"{label} needs a strictly positive spectrum, min eigenvalue is {smallest:.3e}")
    result = _apply(a, fn)
    _check_finite(result)
    return result


def exp(a: Element) -> Element:
    return apply_scalar_function(a, "exp")


def log(a: Element) -> Element:
    return apply_scalar_function(a, "log")


def sqrt(a: Element) -> Element:
    return apply_scalar_function(a, "sqrt")


def inverse(a: Element) -> Element:
    return apply_scalar_function(a, "inv")


def power(a: Element, alpha: float) -> Element:
    return apply_scalar_function(a, "pow", alpha)


def norm(a: Element, kind: NormKind = "order-unit") -> float:
    """Order-unit norm max|sigma(a)| or variation seminorm max sigma(a) - min sigma(a)"""
    values = eigenvalues(a)
    if kind == "order-unit":
        return float(np.max(np.abs(values)))
    if kind == "variation":
        return float(values[0] - values[-1])
    raise DomainError(f"unknown norm kind {kind!r}")


def positivity_classify(a: Element, margin: float = INTERIOR_MARGIN) -> Position:
    values = eigenvalues(a)
    largest, smallest = float(values[0]), float(values[-1])
    if smallest > margin * max(1.0, largest):
        return "interior"
    if smallest < -margin * max(1.0, float(np.max(np.abs(values)))):
        return "outside"
    return "boundary"


def is_interior(a: Element, margin: float = INTERIOR_MARGIN) -> bool:
    return positivity_classify(a, margin) == "interior"


def is_projection(a: Element, tol: float = PROJECTION_TOL) -> bool:
    """True iff every eigenvalue lies within tol of {0, 1}"""
    values = eigenvalues(a)
    return bool(np.all(np.minimum(np.abs(values), np.abs(values - 1.0)) <= tol))


def require_projection(p: Element, tol: float = PROJECTION_TOL) -> None:
    if not is_projection(p, tol):
        raise NotProjectionError(f"element of {p.algebra} is not a projection (spectrum {eigenvalues(p)})")


def projection_rank(p: Element, tol: float = PROJECTION_TOL) -> int:
    """Number of eigenvalues within tol of 1"""
    require_projection(p, tol)
    return int(np.sum(np.abs(eigenvalues(p) - 1.0) <= tol))


def complement(p: Element) -> Element:
    """p^perp = e - p"""
    return unit(p.algebra) - p


def support_projection(a: Element, tol: float = PROJECTION_TOL) -> Element:
    """Sum of the primitive idempotents of a whose eigenvalue exceeds tol"""
    frame = jordan_frame(a)
    total = unit(a.algebra) * 0.0
    for value, idempotent in zip(frame.eigenvalues, frame.idempotents):
        if value > tol:
            total = total + idempotent
    return total


class PeirceMaps(NamedTuple):
    """Peirce projections of a projection p as matrices on canonical coordinates"""
    one: np.ndarray
    half: np.ndarray
    zero: np.ndarray

    def apply(self, which: str, a: Element) -> Element:
        return apply_linear_map(getattr(self, which), a)


def peirce_projections(p: Element) -> PeirceMaps:
    """P1 = U_p, P0 = U_{p^perp}, P_half = I - P1 - P0"""
    require_projection(p)
    one = quadratic_matrix(p)
    zero_map = quadratic_matrix(complement(p))
    half = np.eye(len(canonical_basis(p.algebra))) - one - zero_map
    return PeirceMaps(one=one, half=half, zero=zero_map)
