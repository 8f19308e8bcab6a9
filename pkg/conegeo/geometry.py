"""
Geodesics, geometric means, point symmetries and geodesic-uniqueness classification
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from conegeo.config import DEPENDENCE_TOL, RECIPROCAL_TOL
from conegeo.metrics import MetricKind, Ray, normalize_ray, require_interior
from jordan.algebra import coordinate_norm, quadratic_rep, require_same_algebra, trace
from jordan.errors import InvalidInputError, LinearlyDependentError, UniqueGeodesicError
from jordan.models import Element, spectral_points
from jordan.spectral import inverse, jordan_frame, power, spectral_decomposition

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GeodesicClassification:
    metric: MetricKind
    unique: bool
    spectrum_points: Tuple[float, ...]
    witness: Optional[Element] = None


def geodesic_point(a: Element, b: Element, t: float) -> Element:
    """gamma_a^b(t) = U_{a^{1/2}} (U_{a^{-1/2}} b)^t"""
    require_same_algebra(a, b)
    require_interior(a, "a")
    require_interior(b, "b")
    if not 0.0 <= t <= 1.0:
        raise InvalidInputError(f"geodesic parameter t must lie in [0, 1], got {t}")
    relative = quadratic_rep(power(a, -0.5), b)
    return quadratic_rep(power(a, 0.5), power(relative, t))


def ray_geodesic_point(a, b, t: float) -> Ray:
    """gamma on rays: the class of gamma_a^b(t), independent of the representatives"""
    x = a.representative if isinstance(a, Ray) else a
    y = b.representative if isinstance(b, Ray) else b
    return normalize_ray(geodesic_point(x, y, t))


def segment_point(a: Element, b: Element, t: float) -> Ray:
    """Ray of (1-t)a + tb; the straight segment is a d_H geodesic"""
    require_same_algebra(a, b)
    require_interior(a, "a")
    require_interior(b, "b")
    return normalize_ray(a * (1.0 - t) + b * t)


def geometric_mean(a: Element, b: Element) -> Element:
    """a # b = U_{a^{1/2}} (U_{a^{-1/2}} b)^{1/2}"""
    return geodesic_point(a, b, 0.5)


def point_symmetry(c: Element, a: Element) -> Element:
    """S_c(a) = U_c a^{-1}"""
    require_same_algebra(c, a)
    require_interior(c, "c")
    require_interior(a, "a")
    return quadratic_rep(c, inverse(a))


def _require_independent(a: Element, b: Element) -> None:
    gap = a / trace(a) - b / trace(b)
    if coordinate_norm(gap) <= DEPENDENCE_TOL:
        raise LinearlyDependentError(f"a and b in {a.algebra} are linearly dependent")


def classify_geodesic(a: Element, b: Element, metric: MetricKind) -> GeodesicClassification:
    """
    T: unique iff sigma(U_{a^{-1/2}} b) = {1/beta, beta}, beta > 1.
    H: unique iff sigma(U_{a^{-1/2}} b) has exactly two points.
    """
    require_same_algebra(a, b)
    require_interior(a, "a")
    require_interior(b, "b")
    _require_independent(a, b)

    frame = spectral_decomposition(quadratic_rep(power(a, -0.5), b))
    points = tuple(float(v) for v in frame.eigenvalues)

    if metric == "T":
        unique = len(points) == 2 and points[0] > 1.0 and abs(points[0] * points[1] - 1.0) <= RECIPROCAL_TOL
        witness = None if unique else nonunique_midpoint_witness(a, b)
    elif metric == "H":
        unique = len(points) == 2
        witness = None if unique else hilbert_midpoint_witness(a, b)
    else:
        raise InvalidInputError(f"unknown metric {metric!r}")

    logger.debug("classified %s geodesic on %s: %d spectral points, unique=%s", metric, a.algebra, len(points), unique)
    return GeodesicClassification(metric=metric, unique=unique, spectrum_points=points, witness=witness)


def _midpoint_log_coordinates(logs: np.ndarray) -> Optional[np.ndarray]:
    """
    Log-coordinates of a sup-norm midpoint of 0 and logs that differs from logs/2.

    First choice is the clamped path (min(m/2, |f|) sgn f); when it coincides
    with logs/2 every non-extreme coordinate is zero and those coordinates are
    saturated to +m/2 instead. Returns None when no coordinate is non-extreme.
    """
    magnitudes = np.abs(logs)
    largest = float(np.max(magnitudes))
    tol = RECIPROCAL_TOL * max(1.0, largest)
    interior = magnitudes < largest - tol
    if not np.any(interior):
        return None

    clamped = np.minimum(largest / 2.0, magnitudes) * np.sign(logs)
    if np.max(np.abs(clamped - logs / 2.0)) > tol:
        return clamped

    logger.warning("clamped midpoint coincides with the geodesic midpoint, saturating zero coordinates")
    saturated = logs / 2.0
    saturated[interior] = np.where(logs[interior] >= 0.0, largest / 2.0, -largest / 2.0)
    return saturated


def nonunique_midpoint_witness(a: Element, b: Element) -> Element:
    """
    A d_T midpoint w of a and b with w != gamma_a^b(1/2), built from the
    clamped-log path at t = 1/2 in the frame of U_{a^{-1/2}} b and mapped
    back through U_{a^{1/2}}.
    """
    require_same_algebra(a, b)
    require_interior(a, "a")
    require_interior(b, "b")
    relative = quadratic_rep(power(a, -0.5), b)
    frame = jordan_frame(relative)
    logs = np.log(frame.eigenvalues)
    coordinates = _midpoint_log_coordinates(logs)
    if coordinates is None:
        clusters = spectral_points(frame.eigenvalues)
        raise UniqueGeodesicError(
            f"spectrum of U_(a^-1/2) b has {len(clusters)} reciprocal point(s); the Thompson geodesic is unique"
        )
    midpoint = frame.idempotents[0] * float(np.exp(coordinates[0]))
    for value, idempotent in zip(coordinates[1:], frame.idempotents[1:]):
        midpoint = midpoint + idempotent * float(np.exp(value))
    return quadratic_rep(power(a, 0.5), midpoint)


def hilbert_midpoint_witness(a: Element, b: Element) -> Element:
    """
    A d_H midpoint of a and b whose ray differs from gamma(1/2): b is rescaled
    so that U_{a^{-1/2}} b has a symmetric log-spectrum, where d_H = 2 d_T, and
    the Thompson witness of the rescaled pair is returned.
    """
    require_same_algebra(a, b)
    require_interior(a, "a")
    require_interior(b, "b")
    frame = spectral_decomposition(quadratic_rep(power(a, -0.5), b))
    if frame.size <= 2:
        raise UniqueGeodesicError(f"spectrum of U_(a^-1/2) b has {frame.size} point(s); the Hilbert geodesic is unique")
    balanced = b * (1.0 / np.sqrt(frame.max * frame.min))
    return nonunique_midpoint_witness(a, balanced)
