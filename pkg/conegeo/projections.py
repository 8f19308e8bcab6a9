"""
Projection lattice utilities: predicates, the induced map theta, extreme points,
orthogonal simplices and orthogonality chains
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from conegeo.config import CHAIN_TOL, MAX_CHAIN_LENGTH, PROJECTION_TOL, RESIDUAL_THRESHOLD, SIMPLEX_TOL
from conegeo.metrics import QuotientClass, as_ray, quotient_class
from jordan.algebra import (
    allclose,
    apply_linear_map,
    coordinate_norm,
    embed,
    is_central,
    jordan_product,
    operator_commute,
    require_same_algebra,
    trace_inner_product,
    unit,
    zero,
)
from jordan.errors import (
    InvalidInputError,
    NotAnIsometryError,
    NotInAffineHullError,
    NumericalFailure,
    RankError,
)
from jordan.models import SPIN, SUM, SYM, VECTOR, AlgebraDescriptor, Element
from jordan.sampling import random_element
from jordan.spectral import (
    complement,
    eigenvalues,
    exp,
    is_projection,
    jordan_frame,
    log,
    norm,
    positivity_classify,
    projection_rank,
    require_projection,
    support_projection,
)

logger = logging.getLogger(__name__)

Region = Literal["interior", "boundary-face", "outside"]


@dataclass(frozen=True)
class LatticeRelation:
    orthogonal: bool
    below: bool
    maximal_p: bool
    central_p: bool


@dataclass(frozen=True, eq=False)
class ProjectionChain:
    """p = p_1, ..., p_n = q with consecutive entries orthogonal and p_i + p_{i+1} < e"""
    projections: Tuple[Element, ...]

    def __len__(self) -> int:
        return len(self.projections)


@dataclass(frozen=True, eq=False)
class OrthogonalSimplex:
    p1: Element
    p2: Element
    p3: Element

    @property
    def vertices(self) -> Tuple[Element, Element, Element]:
        return (self.p1, self.p2, self.p3)


@dataclass(frozen=True, eq=False)
class SimplexMembership:
    region: Region
    barycentric: Tuple[float, float, float]
    cone_position: str


def is_nontrivial(p: Element, tol: float = PROJECTION_TOL) -> bool:
    rank = projection_rank(p, tol)
    return 0 < rank < p.algebra.rank


def is_maximal(p: Element, tol: float = PROJECTION_TOL) -> bool:
    """No projection lies strictly between p and e: rank(p) = rank(A) - 1"""
    return projection_rank(p, tol) == p.algebra.rank - 1


def is_orthogonal(p: Element, q: Element, tol: float = PROJECTION_TOL) -> bool:
    return coordinate_norm(jordan_product(p, q)) <= tol


def lattice_predicates(p: Element, q: Element, tol: float = PROJECTION_TOL) -> LatticeRelation:
    require_same_algebra(p, q)
    require_projection(p, tol)
    require_projection(q, tol)
    product = jordan_product(p, q)
    return LatticeRelation(
        orthogonal=coordinate_norm(product) <= tol,
        below=coordinate_norm(product - p) <= tol,
        maximal_p=is_maximal(p, tol),
        central_p=is_central(p, tol),
    )


class InducedProjectionMap:
    """
    theta: P(A) -> P(A) induced by a linear quotient map S with S[p] = [theta(p)].

    Realized as a memoized sampled map; images are the shifted and rescaled
    representatives of S[p], which must again be projections.
    """

    def __init__(self, algebra: AlgebraDescriptor, class_image: Callable[[Element], Element], tol: float = PROJECTION_TOL):
        self.algebra = algebra
        self._class_image = class_image
        self._tol = tol
        self._cache: Dict[bytes, Element] = {}

    @classmethod
    def from_isometry(cls, f: Callable, algebra: AlgebraDescriptor) -> "InducedProjectionMap":
        """S[x] = log f(exp(x)) on trace-zero representatives"""
        def class_image(x: Element) -> Element:
            return quotient_class(log(as_ray(f(exp(x))).representative)).representative
        return cls(algebra, class_image)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, algebra: AlgebraDescriptor) -> "InducedProjectionMap":
        def class_image(x: Element) -> Element:
            return quotient_class(apply_linear_map(matrix, x)).representative
        return cls(algebra, class_image)

    def negated(self) -> "InducedProjectionMap":
        """theta of iota o f, whose quotient map is -S"""
        image = self._class_image
        return InducedProjectionMap(self.algebra, lambda x: -image(x), self._tol)

    def class_image(self, x: Element) -> Element:
        return self._class_image(quotient_class(x).representative)

    def __call__(self, p: Element) -> Element:
        key = np.round(p.to_vector(), 9).tobytes()
        if key in self._cache:
            return self._cache[key]

        rank = projection_rank(p, self._tol)
        if rank == 0:
            image = zero(self.algebra)
        elif rank == self.algebra.rank:
            image = unit(self.algebra)
        else:
            v = self.class_image(p)
            values = eigenvalues(v)
            spread = float(values[0] - values[-1])
            if spread <= self._tol:
                raise NotAnIsometryError("image of a nontrivial projection class collapsed to [0]")
            image = (v - unit(self.algebra) * float(values[-1])) / spread
            if not is_projection(image, max(self._tol, 10 * RESIDUAL_THRESHOLD)):
                raise NotAnIsometryError(
                    f"shifted image of a projection class is not a projection (spectrum {eigenvalues(image)})"
                )
        self._cache[key] = image
        return image


def induced_projection_map(f: Callable, algebra: AlgebraDescriptor) -> InducedProjectionMap:
    """theta for a ray map f fixing the ray of e"""
    e = unit(algebra)
    fixed = as_ray(f(e)).representative
    if not allclose(fixed, e, 1e-8):
        raise InvalidInputError("the ray map does not fix the ray of e; normalize it first")
    return InducedProjectionMap.from_isometry(f, algebra)


def extreme_point_test(c: Union[QuotientClass, Element], tol: float = PROJECTION_TOL) -> bool:
    """True iff c/||c||_v is an extreme point of the variation unit ball, i.e. the class of a nontrivial projection"""
    representative = c.representative if isinstance(c, QuotientClass) else quotient_class(c).representative
    size = norm(representative, "variation")
    if size <= tol:
        raise InvalidInputError("the zero class has no extreme-point status")
    x = representative / size
    shifted = x - unit(x.algebra) * float(eigenvalues(x)[-1])
    return is_projection(shifted, tol)


def orthogonal_simplex(p1: Element, p2: Element, p3: Element, tol: float = SIMPLEX_TOL) -> OrthogonalSimplex:
    algebra = require_same_algebra(p1, p2, p3)
    vertices = (p1, p2, p3)
    for p in vertices:
        require_projection(p)
        if not is_nontrivial(p):
            raise InvalidInputError("simplex vertices must be nontrivial projections")
    for p, q in combinations(vertices, 2):
        if not is_orthogonal(p, q, max(tol, 1e-12)):
            raise InvalidInputError("simplex vertices must be pairwise orthogonal")
    if not allclose(p1 + p2 + p3, unit(algebra), tol):
        raise InvalidInputError("simplex vertices must sum to e")
    return OrthogonalSimplex(p1, p2, p3)


def simplex_membership(s: OrthogonalSimplex, a: Element, tol: float = SIMPLEX_TOL) -> SimplexMembership:
    """Barycentric position of a in aff(p1, p2, p3) via the trace form"""
    require_same_algebra(s.p1, a)
    coordinates = [trace_inner_product(a, p) / trace_inner_product(p, p) for p in s.vertices]
    rebuilt = s.p1 * coordinates[0] + s.p2 * coordinates[1] + s.p3 * coordinates[2]
    scale = max(1.0, coordinate_norm(a))
    if coordinate_norm(a - rebuilt) > tol * scale or abs(sum(coordinates) - 1.0) > tol * scale:
        raise NotInAffineHullError("element lies outside the affine hull of the simplex")

    if all(c > tol for c in coordinates):
        region = "interior"
    elif all(c >= -tol for c in coordinates):
        region = "boundary-face"
    else:
        region = "outside"
    return SimplexMembership(region=region, barycentric=tuple(coordinates), cone_position=positivity_classify(a))


def canonical_frame(algebra: AlgebraDescriptor) -> Tuple[Element, ...]:
    """Coordinate idempotents, E_ii, (+-e_1/2, 1/2), concatenated over parts"""
    kind = algebra.kind
    if kind in (VECTOR, SYM):
        return tuple(_diagonal_unit(algebra, i) for i in range(algebra.n))
    if kind == SPIN:
        upper = np.zeros(algebra.dim)
        upper[0], upper[-1] = 0.5, 0.5
        lower = np.zeros(algebra.dim)
        lower[0], lower[-1] = -0.5, 0.5
        return (Element.from_vector(algebra, upper), Element.from_vector(algebra, lower))
    frame = []
    for index, part in enumerate(algebra.parts):
        frame.extend(embed(algebra, index, c) for c in canonical_frame(part))
    return tuple(frame)


def _diagonal_unit(algebra: AlgebraDescriptor, i: int) -> Element:
    vec = np.zeros(algebra.dim)
    vec[i] = 1.0
    return Element.from_vector(algebra, vec)


def _group(frame: Sequence[Element], first: int, second: int) -> OrthogonalSimplex:
    rest = [c for k, c in enumerate(frame) if k not in (first, second)]
    total = rest[0]
    for c in rest[1:]:
        total = total + c
    return orthogonal_simplex(frame[first], frame[second], total, tol=1e-9)


def canonical_simplices(algebra: AlgebraDescriptor, rng: np.random.Generator) -> List[OrthogonalSimplex]:
    """Two different orthogonal simplices: one from the canonical frame, one from a random frame"""
    if algebra.rank < 3:
        raise RankError(f"{algebra} has rank {algebra.rank}; orthogonal simplices need rank >= 3")
    first = _group(canonical_frame(algebra), 0, 1)
    frame = jordan_frame(random_element(algebra, rng)).idempotents
    second = _group(frame, len(frame) - 1, len(frame) - 2)
    return [first, second]


def simplex_orientation(theta: Callable[[Element], Element], simplex: OrthogonalSimplex, tol: float = 10 * RESIDUAL_THRESHOLD) -> int:
    """+1 if the theta-images sum to e, -1 if their complements do"""
    images = [theta(p) for p in simplex.vertices]
    e = unit(simplex.p1.algebra)
    total = images[0] + images[1] + images[2]
    if allclose(total, e, tol):
        return 1
    complements = complement(images[0]) + complement(images[1]) + complement(images[2])
    if allclose(complements, e, tol):
        return -1
    raise NotAnIsometryError("neither orientation of the simplex images sums to e")


def _primitive_below(p: Element) -> Element:
    """A rank-one projection r <= p"""
    frame = jordan_frame(p)
    return frame.idempotents[0]


def _validate_chain(chain: Sequence[Element], tol: float) -> None:
    if len(chain) > MAX_CHAIN_LENGTH:
        raise NumericalFailure(f"chain of length {len(chain)} exceeds the cap {MAX_CHAIN_LENGTH}")
    for p in chain:
        if not is_nontrivial(p) or is_maximal(p):
            raise NumericalFailure("chain entries must be nontrivial and nonmaximal")
    e = unit(chain[0].algebra)
    for p, q in zip(chain[:-1], chain[1:]):
        if abs(trace_inner_product(p, q)) > tol or coordinate_norm(jordan_product(p, q)) > tol:
            raise NumericalFailure("consecutive chain entries are not orthogonal")
        rest = e - p - q
        if not is_projection(rest) or projection_rank(rest) < 1:
            raise NumericalFailure("consecutive chain entries sum to e")


def _central_route(p: Element, q: Element) -> Optional[List[Element]]:
    algebra = p.algebra
    if algebra.kind != SUM:
        return None
    e = unit(algebra)
    units = [embed(algebra, i, unit(part)) for i, part in enumerate(algebra.parts)]
    for size in range(1, len(units)):
        for subset in combinations(range(len(units)), size):
            c = units[subset[0]]
            for i in subset[1:]:
                c = c + units[i]
            if is_maximal(c) or not is_nontrivial(c):
                continue
            if not (is_orthogonal(p, c) and is_orthogonal(c, q)):
                continue
            if projection_rank(e - p - c) >= 1 and projection_rank(e - c - q) >= 1:
                return [p, c, q]
    return None


def orthogonality_chain(p: Element, q: Element, tol: float = CHAIN_TOL) -> ProjectionChain:
    """
    Chain of nonmaximal projections from p to q witnessing p ~ q: direct when
    p and q are orthogonal, otherwise through a central projection, a rank-one
    projection orthogonal to both, or two rank-one steps.
    """
    algebra = require_same_algebra(p, q)
    if algebra.rank < 3:
        raise RankError(f"{algebra} has rank {algebra.rank}: all nontrivial projections are maximal")
    for x in (p, q):
        require_projection(x)
        if not is_nontrivial(x):
            raise InvalidInputError("chain endpoints must be nontrivial projections")
        if is_maximal(x):
            raise InvalidInputError("chain endpoints must be nonmaximal projections")

    e = unit(algebra)
    if is_orthogonal(p, q, tol) and projection_rank(e - p - q) >= 1:
        chain = [p, q]
    else:
        chain = _central_route(p, q)
        if chain is None:
            outside = e - support_projection(p + q)
            if projection_rank(outside) >= 1:
                chain = [p, _primitive_below(outside), q]
            else:
                first = _primitive_below(complement(p))
                second = _primitive_below(e - support_projection(q + first))
                chain = [p, first, second, q]

    _validate_chain(chain, tol)
    logger.debug("orthogonality chain of length %d on %s", len(chain), algebra)
    return ProjectionChain(tuple(chain))


@dataclass(frozen=True)
class PairCheck:
    index: int
    orthogonality: bool
    complement: bool
    commutation: bool

    @property
    def passed(self) -> bool:
        return self.orthogonality and self.complement and self.commutation


@dataclass(frozen=True)
class OrthoisomorphismReport:
    checks: Tuple[PairCheck, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "pair": c.index,
                    "orthogonality": c.orthogonality,
                    "complement": c.complement,
                    "commutation": c.commutation,
                    "passed": c.passed,
                }
                for c in self.checks
            ],
            columns=["pair", "orthogonality", "complement", "commutation", "passed"],
        )


def verify_orthoisomorphism(
    theta: Callable[[Element], Element],
    pairs: Sequence[Tuple[Element, Element]],
    tol: float = 10 * RESIDUAL_THRESHOLD,
) -> OrthoisomorphismReport:
    """Per pair: orthogonality preserved both ways, theta(p^perp) = theta(p)^perp, commutation preserved"""
    checks = []
    for index, (p, q) in enumerate(pairs):
        tp, tq = theta(p), theta(q)
        orthogonality = is_orthogonal(p, q, tol) == is_orthogonal(tp, tq, tol)
        complement_ok = allclose(theta(complement(p)), complement(tp), tol) and allclose(
            theta(complement(q)), complement(tq), tol
        )
        commutation = operator_commute(p, q, tol) == operator_commute(tp, tq, tol)
        checks.append(PairCheck(index, orthogonality, complement_ok, commutation))
    report = OrthoisomorphismReport(tuple(checks))
    logger.debug("orthoisomorphism check on %d pairs: passed=%s", len(checks), report.passed)
    return report


def sample_projection_pairs(
    algebra: AlgebraDescriptor, count: int, rng: np.random.Generator
) -> List[Tuple[Element, Element]]:
    """Cycle through orthogonal pairs, commuting overlapping pairs and unrelated pairs"""
    pairs = []
    for k in range(count):
        frame = jordan_frame(random_element(algebra, rng)).idempotents
        r = len(frame)
        order = [int(i) for i in rng.permutation(r)]
        style = k % 3
        if style == 0:
            split = int(rng.integers(1, r))
            left = order[:split]
            right = order[split:split + int(rng.integers(1, r - split + 1))]
            pairs.append((_subset_sum(frame, left), _subset_sum(frame, right)))
        elif style == 1:
            size = int(rng.integers(1, r)) if r > 1 else 1
            left = order[:size]
            right = order[max(0, size - 1):][: max(1, size)]
            pairs.append((_subset_sum(frame, left), _subset_sum(frame, right)))
        else:
            other = jordan_frame(random_element(algebra, rng)).idempotents
            size_p = int(rng.integers(1, r)) if r > 1 else 1
            size_q = int(rng.integers(1, r)) if r > 1 else 1
            pairs.append((_subset_sum(frame, order[:size_p]), _subset_sum(other, list(range(size_q)))))
    return pairs


def _subset_sum(frame: Sequence[Element], indices: Sequence[int]) -> Element:
    total = frame[indices[0]]
    for i in indices[1:]:
        total = total + frame[i]
    return total
