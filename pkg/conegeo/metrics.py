"""
Gauge, Thompson's and Hilbert's distances, rays, quotient classes and the d_n sequences
"""
import logging
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np
import pandas as pd

from conegeo.config import BISECTION_ITERATIONS, EXP_ARGUMENT_LIMIT, RAY_TOL
from jordan.algebra import allclose, quadratic_rep, require_same_algebra, trace, unit
from jordan.errors import InvalidInputError, NotInteriorError
from jordan.models import Element
from jordan.spectral import eigenvalues, exp, norm, positivity_classify, power

logger = logging.getLogger(__name__)

MetricKind = Literal["T", "H"]
Method = Literal["spectral", "gauge"]


@dataclass(frozen=True, eq=False)
class Ray:
    """Projective class of an interior point, held with <a, e> = rank"""
    representative: Element

    @property
    def algebra(self):
        return self.representative.algebra

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ray) or other.algebra != self.algebra:
            return False
        return allclose(self.representative, other.representative, RAY_TOL)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class QuotientClass:
    """Class [a] = a + span(e), held by its trace-zero representative"""
    representative: Element

    @property
    def algebra(self):
        return self.representative.algebra

    @property
    def variation_norm(self) -> float:
        return norm(self.representative, "variation")


def require_interior(a: Element, name: str = "element") -> None:
    position = positivity_classify(a)
    if position != "interior":
        raise NotInteriorError(f"{name} of {a.algebra} is not in the cone interior ({position})")


def normalize_ray(a: Element) -> Ray:
    """Scale a so that <a, e> equals the rank"""
    require_interior(a)
    rank = a.algebra.rank
    return Ray(a * (rank / trace(a)))


def as_ray(a: Union[Ray, Element]) -> Ray:
    if isinstance(a, Ray):
        return a
    return normalize_ray(a)


def quotient_class(a: Element) -> QuotientClass:
    rank = a.algebra.rank
    return QuotientClass(a - unit(a.algebra) * (trace(a) / rank))


def variation_distance(a: Union[QuotientClass, Element], b: Union[QuotientClass, Element]) -> float:
    """||[a] - [b]||_v"""
    x = a.representative if isinstance(a, QuotientClass) else a
    y = b.representative if isinstance(b, QuotientClass) else b
    return norm(x - y, "variation")


def _relative_spectrum(a: Element, b: Element) -> np.ndarray:
    """sigma(U_{b^{-1/2}} a), descending"""
    return eigenvalues(quadratic_rep(power(b, -0.5), a))


def gauge(a: Element, b: Element) -> float:
    """M(a/b) = inf{beta > 0 : a <= beta b} = max sigma(U_{b^{-1/2}} a)"""
    require_same_algebra(a, b)
    require_interior(b, "b")
    if positivity_classify(a) == "outside":
        raise InvalidInputError(f"a of {a.algebra} lies outside the cone closure")
    return max(float(_relative_spectrum(a, b)[0]), 0.0)


def gauge_by_bisection(a: Element, b: Element, iterations: int = BISECTION_ITERATIONS) -> float:
    """
    Definitional gauge: bisection on beta for the smallest beta with beta*b - a
    in the closed cone, tested with positivity_classify only.
    """
    require_same_algebra(a, b)
    require_interior(b, "b")
    if positivity_classify(a) == "outside":
        raise InvalidInputError(f"a of {a.algebra} lies outside the cone closure")

    def dominated(beta: float) -> bool:
        return positivity_classify(b * beta - a, margin=0.0) != "outside"

    low, high = 0.0, 1.0
    while not dominated(high):
        low = high
        high *= 2.0
        if high > 1e300:
            raise InvalidInputError("gauge bisection failed to bracket the infimum")
    for _ in range(iterations):
        middle = 0.5 * (low + high)
        if dominated(middle):
            high = middle
        else:
            low = middle
    return high


def thompson_distance(a: Element, b: Element, method: Method = "spectral") -> float:
    """d_T(a,b) = log max{M(a/b), M(b/a)} = ||log U_{b^{-1/2}} a||"""
    require_same_algebra(a, b)
    require_interior(a, "a")
    require_interior(b, "b")
    if method == "gauge":
        return float(np.log(max(gauge_by_bisection(a, b), gauge_by_bisection(b, a))))
    values = _relative_spectrum(a, b)
    return float(np.max(np.abs(np.log(values))))


def hilbert_distance(a: Union[Ray, Element], b: Union[Ray, Element], method: Method = "spectral") -> float:
    """d_H(a,b) = log M(a/b) M(b/a) = ||log U_{b^{-1/2}} a||_v"""
    x = as_ray(a).representative
    y = as_ray(b).representative
    require_same_algebra(x, y)
    if method == "gauge":
        return float(np.log(gauge_by_bisection(x, y) * gauge_by_bisection(y, x)))
    values = np.log(_relative_spectrum(x, y))
    return float(values[0] - values[-1])


def distance(a, b, metric: MetricKind, method: Method = "spectral") -> float:
    if metric == "T":
        return thompson_distance(a, b, method)
    if metric == "H":
        return hilbert_distance(a, b, method)
    raise InvalidInputError(f"unknown metric {metric!r}")


def scaled_distance(a: Element, b: Element, n: int, kind: MetricKind) -> float:
    """
    d_n^T(a,b) = n d_T(exp(a/n), exp(b/n)) and, on trace-zero representatives
    of [a], [b], d_n^H = n d_H(exp([a]/n), exp([b]/n)).
    """
    require_same_algebra(a, b)
    if n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n}")
    if kind == "H":
        a = quotient_class(a).representative
        b = quotient_class(b).representative
    largest = max(norm(a), norm(b))
    if largest / n > EXP_ARGUMENT_LIMIT:
        raise InvalidInputError(f"||a||/n = {largest / n:.3e} exceeds the exp guard {EXP_ARGUMENT_LIMIT}")
    x = exp(a / n)
    y = exp(b / n)
    if kind == "T":
        return n * thompson_distance(x, y)
    if kind == "H":
        return n * hilbert_distance(x, y)
    raise InvalidInputError(f"unknown metric {kind!r}")


def scaled_distance_limit(a: Element, b: Element, kind: MetricKind) -> float:
    """||a - b|| for T, ||[a] - [b]||_v for H"""
    require_same_algebra(a, b)
    if kind == "T":
        return norm(a - b, "order-unit")
    if kind == "H":
        return variation_distance(a, b)
    raise InvalidInputError(f"unknown metric {kind!r}")


def convergence_table(a: Element, b: Element, kind: MetricKind, k: int) -> pd.DataFrame:
    """d_n for n = 2^0 .. 2^k against the norm limit"""
    limit = scaled_distance_limit(a, b, kind)
    rows = []
    for exponent in range(k + 1):
        n = 2 ** exponent
        value = scaled_distance(a, b, n, kind)
        rows.append({"n": n, "distance": value, "limit": limit, "error": abs(value - limit)})
    logger.debug("convergence table for %s up to n=%d", a.algebra, 2 ** k)
    return pd.DataFrame(rows, columns=["n", "distance", "limit", "error"])


def gromov_product(a: Union[Ray, Element], b: Union[Ray, Element], base: Union[Ray, Element]) -> float:
    """(a|b)_base = (d_H(a,base) + d_H(b,base) - d_H(a,b)) / 2"""
    return 0.5 * (hilbert_distance(a, base) + hilbert_distance(b, base) - hilbert_distance(a, b))
