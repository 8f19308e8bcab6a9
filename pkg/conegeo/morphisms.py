"""
Jordan isomorphisms, order isomorphisms and the isometries of d_T and d_H:
construction from canonical parameters and recovery of those parameters
from black-box maps
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np
from scipy import linalg

from conegeo.config import (
    IDEMPOTENT_TOL,
    JORDAN_FIT_TOL,
    KERNEL_TOL,
    PROBE_SPREAD,
    RESIDUAL_THRESHOLD,
    get_default_seed,
    get_probe_count,
)
from conegeo.metrics import MetricKind, Ray, as_ray, normalize_ray, quotient_class, require_interior
from conegeo.projections import InducedProjectionMap, canonical_simplices, is_orthogonal, simplex_orientation
from jordan.algebra import (
    apply_linear_map,
    canonical_basis,
    is_central,
    jordan_product,
    linear_map_matrix,
    multiplication_matrix,
    quadratic_matrix,
    quadratic_rep,
    unit,
)
from jordan.errors import (
    InvalidInputError,
    NotAnIsometryError,
    NotJordanIsomorphismError,
    NumericalFailure,
    RankError,
    ResidualError,
)
from jordan.models import SPIN, SUM, SYM, VECTOR, AlgebraDescriptor, Element, make_element
from jordan.sampling import random_central_projection, random_element, random_interior, random_orthogonal
from jordan.spectral import (
    complement,
    exp,
    inverse,
    is_projection,
    log,
    spectral_decomposition,
    sqrt,
    support_projection,
)

logger = logging.getLogger(__name__)

IDENTITY = "identity"
ORTHOGONAL = "orthogonal"
SPIN_ORTHOGONAL = "spin_orthogonal"
PERMUTATION = "permutation"
SUM_ISO = "sum"

ISO_KINDS = (IDENTITY, ORTHOGONAL, SPIN_ORTHOGONAL, PERMUTATION, SUM_ISO)

ORTHOGONALITY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class JordanIsoRep:
    """
    Closed family of Jordan automorphisms of the supported algebras.

    orthogonal:      a -> u a u^T on Sym(n)
    spin_orthogonal: (h, t) -> (u h, t) on Spin(d)
    permutation:     (Ja)_i = a_{perm[i]} on Vector(n)
    sum:             (Ja)_i = parts[i](a_{perm[i]}) on direct sums
    """
    kind: str
    u: Optional[np.ndarray] = None
    perm: Tuple[int, ...] = ()
    parts: Tuple["JordanIsoRep", ...] = ()


def identity_iso() -> JordanIsoRep:
    return JordanIsoRep(IDENTITY)


def _require_orthogonal(u: np.ndarray) -> np.ndarray:
    try:
        u = np.array(u, dtype=float)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"malformed orthogonal matrix: {str(e)}")
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        raise InvalidInputError("orthogonal matrix has non-finite entries")
    defect = float(np.max(np.abs(u.T @ u - np.eye(u.shape[0]))))
    if defect > ORTHOGONALITY_TOL:
        raise InvalidInputError(f"matrix is not orthogonal (|u^T u - I| = {defect:.3e})")
    u.setflags(write=False)
    return u


def _require_permutation(perm) -> Tuple[int, ...]:
    try:
        perm = tuple(int(i) for i in perm)
    except (TypeError, ValueError, OverflowError) as e:
        raise InvalidInputError(f"malformed permutation {perm!r}: {str(e)}")
    if sorted(perm) != list(range(len(perm))):
        raise InvalidInputError(f"{perm} is not a permutation")
    return perm


def orthogonal_conjugation(u: np.ndarray) -> JordanIsoRep:
    return JordanIsoRep(ORTHOGONAL, u=_require_orthogonal(u))


def spin_orthogonal(u: np.ndarray) -> JordanIsoRep:
    return JordanIsoRep(SPIN_ORTHOGONAL, u=_require_orthogonal(u))


def coordinate_permutation(perm) -> JordanIsoRep:
    return JordanIsoRep(PERMUTATION, perm=_require_permutation(perm))


def sum_iso(perm, parts) -> JordanIsoRep:
    perm = _require_permutation(perm)
    parts = tuple(parts)
    if len(parts) != len(perm):
        raise InvalidInputError(f"sum isomorphism has {len(perm)} slots but {len(parts)} part maps")
    return JordanIsoRep(SUM_ISO, perm=perm, parts=parts)


def apply_jordan_iso(J: JordanIsoRep, a: Element) -> Element:
    algebra = a.algebra
    if J.kind == IDENTITY:
        return a
    if J.kind == ORTHOGONAL:
        if algebra.kind != SYM or J.u.shape != (algebra.n, algebra.n):
            raise InvalidInputError(f"orthogonal conjugation of size {J.u.shape[0]} does not act on {algebra}")
        return make_element(algebra, J.u @ a.matrix @ J.u.T)
    if J.kind == SPIN_ORTHOGONAL:
        if algebra.kind != SPIN or J.u.shape != (algebra.n, algebra.n):
            raise InvalidInputError(f"spin orthogonal map of size {J.u.shape[0]} does not act on {algebra}")
        return Element.from_vector(algebra, np.concatenate([J.u @ a.h, [a.t]]))
    if J.kind == PERMUTATION:
        if algebra.kind != VECTOR or len(J.perm) != algebra.n:
            raise InvalidInputError(f"permutation of length {len(J.perm)} does not act on {algebra}")
        return Element.from_vector(algebra, np.asarray(a.data)[list(J.perm)])
    if J.kind == SUM_ISO:
        if algebra.kind != SUM or len(J.perm) != len(algebra.parts):
            raise InvalidInputError(f"sum isomorphism with {len(J.perm)} slots does not act on {algebra}")
        parts = []
        for i, (source, part_map) in enumerate(zip(J.perm, J.parts)):
            if algebra.parts[source] != algebra.parts[i]:
                raise InvalidInputError(f"cannot move {algebra.parts[source]} into slot {i} ({algebra.parts[i]})")
            parts.append(apply_jordan_iso(part_map, a.parts[source]))
        return Element(algebra, tuple(parts))
    raise InvalidInputError(f"unknown Jordan isomorphism kind {J.kind!r}")


def matrix_of(J: JordanIsoRep, algebra: AlgebraDescriptor) -> np.ndarray:
    return linear_map_matrix(lambda x: apply_jordan_iso(J, x), algebra)


def compose(outer: JordanIsoRep, inner: JordanIsoRep, algebra: AlgebraDescriptor) -> JordanIsoRep:
    """outer o inner, refit to the family"""
    if inner.kind == IDENTITY:
        return outer
    if outer.kind == IDENTITY:
        return inner
    return match_jordan_iso(matrix_of(outer, algebra) @ matrix_of(inner, algebra), algebra)


def check_jordan_isomorphism(T: np.ndarray, algebra: AlgebraDescriptor, tol: float = KERNEL_TOL) -> bool:
    """T(e) = e, T(a o b) = Ta o Tb on basis pairs and T invertible"""
    T = np.asarray(T, dtype=float)
    if T.shape != (algebra.dim, algebra.dim):
        raise InvalidInputError(f"linear map of shape {T.shape} does not act on {algebra}")
    scale = max(1.0, float(np.max(np.abs(T))))
    e = unit(algebra)
    if float(np.max(np.abs(T @ e.to_vector() - e.to_vector()))) > tol * scale:
        return False
    basis = canonical_basis(algebra)
    images = [apply_linear_map(T, b) for b in basis]
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            lhs = apply_linear_map(T, jordan_product(basis[i], basis[j])).to_vector()
            rhs = jordan_product(images[i], images[j]).to_vector()
            if float(np.max(np.abs(lhs - rhs))) > tol * scale * scale:
                return False
    return int(np.linalg.matrix_rank(T)) == algebra.dim


def _polar(u: np.ndarray) -> np.ndarray:
    orthogonal, _ = linalg.polar(u)
    return orthogonal


def _fit_sym(T: np.ndarray, algebra: AlgebraDescriptor, tol: float) -> JordanIsoRep:
    n = algebra.n
    if n == 1:
        return identity_iso()
    basis = canonical_basis(algebra)
    columns = []
    for i in range(n):
        image = apply_linear_map(T, basis[i]).matrix
        _, vectors = linalg.eigh(image)
        columns.append(vectors[:, -1])
    for j in range(1, n):
        # coordinate n + j - 1 is E_0j + E_j0
        image = apply_linear_map(T, basis[n + j - 1]).matrix
        if float(columns[0] @ image @ columns[j]) < 0.0:
            columns[j] = -columns[j]
    u = _polar(np.column_stack(columns))
    if np.max(np.abs(u - np.eye(n))) <= tol or np.max(np.abs(u + np.eye(n))) <= tol:
        return identity_iso()
    return orthogonal_conjugation(u)


def _fit(T: np.ndarray, algebra: AlgebraDescriptor, tol: float) -> JordanIsoRep:
    kind = algebra.kind
    if kind == VECTOR:
        perm = tuple(int(i) for i in np.argmax(np.abs(T), axis=1))
        if sorted(perm) != list(range(algebra.n)):
            raise NotJordanIsomorphismError("linear map does not permute the coordinate idempotents")
        return identity_iso() if perm == tuple(range(algebra.n)) else coordinate_permutation(perm)
    if kind == SYM:
        return _fit_sym(T, algebra, tol)
    if kind == SPIN:
        d = algebra.n
        u = _polar(T[:d, :d])
        return identity_iso() if np.max(np.abs(u - np.eye(d))) <= tol else spin_orthogonal(u)

    offsets = algebra.offsets
    spans = [slice(offset, offset + part.dim) for offset, part in zip(offsets, algebra.parts)]
    perm = []
    for i, part in enumerate(algebra.parts):
        weights = [
            float(np.linalg.norm(T[spans[i], spans[j]])) if algebra.parts[j] == part else -1.0
            for j in range(len(algebra.parts))
        ]
        perm.append(int(np.argmax(weights)))
    if sorted(perm) != list(range(len(perm))):
        raise NotJordanIsomorphismError("linear map does not permute the direct-sum components")
    parts = [_fit(T[spans[i], spans[perm[i]]], algebra.parts[i], tol) for i in range(len(perm))]
    if perm == list(range(len(perm))) and all(p.kind == IDENTITY for p in parts):
        return identity_iso()
    return sum_iso(perm, parts)


def match_jordan_iso(T: np.ndarray, algebra: AlgebraDescriptor, tol: float = JORDAN_FIT_TOL) -> JordanIsoRep:
    """
    Closest member of the JordanIsoRep family to T: eigenvector fit of u with
    re-orthogonalization for Sym, block polar factor for Spin, argmax
    permutations for Vector and direct sums. Accepted when the residual is at most tol.
    """
    T = np.asarray(T, dtype=float)
    try:
        J = _fit(T, algebra, tol)
    except (linalg.LinAlgError, ValueError) as e:
        raise NotJordanIsomorphismError(f"could not fit a Jordan isomorphism: {str(e)}")
    residual = float(np.max(np.abs(matrix_of(J, algebra) - T)))
    if residual > tol:
        raise NotJordanIsomorphismError(f"closest Jordan isomorphism ({J.kind}) leaves residual {residual:.3e}")
    logger.debug("matched %s on %s, residual %.3e", J.kind, algebra, residual)
    return J


def factor_order_isomorphism(T: np.ndarray, algebra: AlgebraDescriptor) -> Tuple[Element, JordanIsoRep]:
    """T = U_b J with b = (Te)^{1/2}"""
    T = np.asarray(T, dtype=float)
    image = apply_linear_map(T, unit(algebra))
    require_interior(image, "T(e)")
    b = sqrt(image)
    remainder = quadratic_matrix(inverse(b)) @ T
    if not check_jordan_isomorphism(remainder, algebra, JORDAN_FIT_TOL):
        raise NotJordanIsomorphismError("U_{b^-1} T is not a Jordan isomorphism; T is not an order isomorphism")
    return b, match_jordan_iso(remainder, algebra)


@dataclass(frozen=True, eq=False)
class IsometryDescriptor:
    metric: MetricKind
    b: Element
    iso: JordanIsoRep
    p: Optional[Element] = None
    epsilon: Optional[int] = None
    diagnostics: Dict[str, float] = field(default_factory=dict)

    @property
    def algebra(self) -> AlgebraDescriptor:
        return self.b.algebra


def validate_descriptor(d: IsometryDescriptor) -> None:
    require_interior(d.b, "b")
    algebra = d.algebra
    if d.metric == "T":
        if d.p is None:
            raise InvalidInputError("a Thompson descriptor needs a central projection p")
        if d.p.algebra != algebra:
            raise InvalidInputError(f"p lives in {d.p.algebra}, b in {algebra}")
        if not is_projection(d.p, IDEMPOTENT_TOL) or not is_central(d.p, IDEMPOTENT_TOL):
            raise InvalidInputError("p must be a central projection")
    elif d.metric == "H":
        if d.epsilon not in (1, -1):
            raise InvalidInputError(f"epsilon must be +1 or -1, got {d.epsilon}")
        if algebra.rank < 2:
            raise RankError(f"{algebra} has rank {algebra.rank}; its projective space is a point")
    else:
        raise InvalidInputError(f"unknown metric {d.metric!r}")
    if not check_jordan_isomorphism(matrix_of(d.iso, algebra), algebra, JORDAN_FIT_TOL):
        raise InvalidInputError(f"{d.iso.kind} map is not a Jordan isomorphism of {algebra}")


class Isometry:
    """
    Callable isometry built from canonical parameters.

    T: a -> U_b (p o Ja + p^perp o J a^{-1})
    H: [a] -> [U_b J(a^epsilon)]
    """

    def __init__(self, descriptor: IsometryDescriptor):
        validate_descriptor(descriptor)
        self.descriptor = descriptor
        self.metric = descriptor.metric
        self.algebra = descriptor.algebra
        if self.metric == "T":
            self._p = descriptor.p
            self._p_perp = complement(descriptor.p)

    def __call__(self, a: Union[Element, Ray]) -> Union[Element, Ray]:
        d = self.descriptor
        if self.metric == "T":
            if isinstance(a, Ray):
                raise InvalidInputError("Thompson isometries act on elements, not rays")
            require_interior(a, "a")
            inner = jordan_product(self._p, apply_jordan_iso(d.iso, a)) + jordan_product(
                self._p_perp, apply_jordan_iso(d.iso, inverse(a))
            )
            return quadratic_rep(d.b, inner)
        x = as_ray(a).representative
        if d.epsilon == -1:
            x = inverse(x)
        return normalize_ray(quadratic_rep(d.b, apply_jordan_iso(d.iso, x)))

    def __repr__(self) -> str:
        return f"Isometry({self.metric}, {self.algebra}, iso={self.descriptor.iso.kind})"


def build_isometry(d: IsometryDescriptor) -> Isometry:
    return Isometry(d)


def compose_isometries(outer: Callable, inner: Callable) -> Callable:
    def composed(a):
        return outer(inner(a))
    return composed


@dataclass(frozen=True, eq=False)
class LinearizedMap:
    """S a = log f(exp a), on the quotient by span(e) for H"""
    metric: MetricKind
    algebra: AlgebraDescriptor
    matrix: np.ndarray
    residual: float

    def __call__(self, a: Element) -> Element:
        if self.metric == "H":
            return quotient_class(apply_linear_map(self.matrix, quotient_class(a).representative)).representative
        return apply_linear_map(self.matrix, a)


def linearize_isometry(
    f: Callable,
    metric: MetricKind,
    algebra: AlgebraDescriptor,
    seed: Optional[int] = None,
    probes: Optional[int] = None,
    threshold: float = RESIDUAL_THRESHOLD,
) -> LinearizedMap:
    """
    Matrix of S = log o f o exp on canonical basis probes; the linearity
    residual is measured on random combinations.
    """
    e = unit(algebra)
    if metric == "T":
        fixed = f(e)
        if isinstance(fixed, Ray):
            raise InvalidInputError("a Thompson map must return elements")

        def image(x: Element) -> Element:
            return log(f(exp(x)))

        def domain(x: Element) -> Element:
            return x
    elif metric == "H":
        fixed = as_ray(f(e)).representative

        def image(x: Element) -> Element:
            return quotient_class(log(as_ray(f(exp(x))).representative)).representative

        def domain(x: Element) -> Element:
            return quotient_class(x).representative
    else:
        raise InvalidInputError(f"unknown metric {metric!r}")

    scale = max(1.0, float(np.max(np.abs(fixed.to_vector()))))
    if float(np.max(np.abs(fixed.to_vector() - e.to_vector()))) > 1e-8 * scale:
        raise InvalidInputError("the map does not fix e; normalize by U_{b^-1} first")

    matrix = np.column_stack([image(domain(basis)).to_vector() for basis in canonical_basis(algebra)])

    rng = np.random.default_rng(get_default_seed() if seed is None else seed)
    residual = 0.0
    for _ in range(probes or get_probe_count()):
        x = domain(random_element(algebra, rng, PROBE_SPREAD))
        actual = image(x).to_vector()
        predicted = matrix @ x.to_vector()
        residual = max(residual, float(np.max(np.abs(predicted - actual))) / max(1.0, float(np.max(np.abs(actual)))))
    logger.debug("linearized %s map on %s, residual %.3e", metric, algebra, residual)
    if residual > threshold:
        raise ResidualError(f"linearization residual {residual:.3e} exceeds {threshold:.1e}; the map is not an isometry fixing e")
    return LinearizedMap(metric=metric, algebra=algebra, matrix=matrix, residual=residual)


def roundtrip_residual(
    f: Callable, g: Callable, metric: MetricKind, algebra: AlgebraDescriptor, rng: np.random.Generator, probes: int
) -> float:
    """Largest relative gap between f and g on random interior probes"""
    residual = 0.0
    for _ in range(probes):
        x = random_interior(algebra, rng, PROBE_SPREAD)
        if metric == "T":
            left, right = f(x).to_vector(), g(x).to_vector()
        else:
            left, right = as_ray(f(x)).representative.to_vector(), as_ray(g(x)).representative.to_vector()
        residual = max(residual, float(np.max(np.abs(left - right))) / max(1.0, float(np.max(np.abs(right)))))
    return residual


def factor_thompson_isometry(
    f: Callable, algebra: AlgebraDescriptor, seed: Optional[int] = None, threshold: float = RESIDUAL_THRESHOLD
) -> IsometryDescriptor:
    """
    Recover (b, p, J) with f(a) = U_b (pJa + p^perp J a^{-1}).

    b = f(e)^{1/2}; S linearizes U_{b^-1} o f; s = Se is a central symmetry
    giving p = (s + e)/2, and J = L_s S.
    """
    e = unit(algebra)
    image = f(e)
    require_interior(image, "f(e)")
    b = sqrt(image)
    b_inv = inverse(b)

    def normalized(x: Element) -> Element:
        return quadratic_rep(b_inv, f(x))

    linearized = linearize_isometry(normalized, "T", algebra, seed, threshold=threshold)
    s = apply_linear_map(linearized.matrix, e)
    candidate = (s + e) / 2.0
    if not is_projection(candidate, 10 * threshold):
        raise NotAnIsometryError("Se is not a symmetry; the map is not a Thompson isometry")
    p = support_projection(candidate, 0.5)
    if not is_central(p, IDEMPOTENT_TOL):
        raise NotAnIsometryError("(Se + e)/2 is not central; the map is not a Thompson isometry")

    symmetry = p * 2.0 - e
    j_matrix = multiplication_matrix(symmetry) @ linearized.matrix
    if not check_jordan_isomorphism(j_matrix, algebra, JORDAN_FIT_TOL):
        raise NotJordanIsomorphismError("L_s S is not a Jordan isomorphism")
    iso = match_jordan_iso(j_matrix, algebra)

    descriptor = IsometryDescriptor(metric="T", b=b, iso=iso, p=p)
    rng = np.random.default_rng((get_default_seed() if seed is None else seed) + 1)
    residual = roundtrip_residual(build_isometry(descriptor), f, "T", algebra, rng, get_probe_count())
    if residual > threshold:
        raise ResidualError(f"rebuilt Thompson isometry differs from the input by {residual:.3e}")
    logger.info("factored Thompson isometry on %s: iso=%s, residual %.3e", algebra, iso.kind, residual)
    return replace(
        descriptor,
        diagnostics={"linearization_residual": linearized.residual, "roundtrip_residual": residual},
    )


@dataclass(frozen=True, eq=False)
class HilbertFactorization:
    descriptor: IsometryDescriptor
    theta: InducedProjectionMap
    linearized: LinearizedMap
    votes: Tuple[int, ...] = ()


def hilbert_factorization(
    f: Callable, algebra: AlgebraDescriptor, seed: Optional[int] = None, threshold: float = RESIDUAL_THRESHOLD
) -> HilbertFactorization:
    """
    Recover (b, epsilon, J) with f([a]) = [U_b J(a^epsilon)], keeping the
    induced projection map theta of the normalized map.
    """
    if algebra.rank < 2:
        raise RankError(f"{algebra} has rank {algebra.rank}; its projective space is a point")
    e = unit(algebra)
    b = normalize_ray(sqrt(as_ray(f(e)).representative)).representative
    b_inv = inverse(b)

    def normalized(x: Element) -> Ray:
        return normalize_ray(quadratic_rep(b_inv, as_ray(f(x)).representative))

    linearized = linearize_isometry(normalized, "H", algebra, seed, threshold=threshold)
    theta = InducedProjectionMap.from_matrix(linearized.matrix, algebra)
    rng = np.random.default_rng((get_default_seed() if seed is None else seed) + 1)

    votes: Tuple[int, ...] = ()
    if algebra.rank >= 3:
        votes = tuple(simplex_orientation(theta, simplex) for simplex in canonical_simplices(algebra, rng))
        if len(set(votes)) != 1:
            raise NotAnIsometryError(f"orthogonal simplices disagree on the orientation: {votes}")
        candidates = [votes[0]]
    else:
        candidates = [1, -1]

    last_error: Optional[NumericalFailure] = None
    for epsilon in candidates:
        oriented = theta if epsilon == 1 else theta.negated()
        try:
            iso = extend_orthoisomorphism(oriented, algebra)
            descriptor = IsometryDescriptor(metric="H", b=b, iso=iso, epsilon=epsilon)
            residual = roundtrip_residual(build_isometry(descriptor), f, "H", algebra, rng, get_probe_count())
            if residual > threshold:
                raise ResidualError(f"rebuilt Hilbert isometry differs from the input by {residual:.3e}")
        except NumericalFailure as e:
            logger.warning("epsilon=%+d factorization failed on %s: %s", epsilon, algebra, str(e))
            last_error = e
            continue
        logger.info("factored Hilbert isometry on %s: epsilon=%+d, iso=%s", algebra, epsilon, iso.kind)
        descriptor = replace(
            descriptor,
            diagnostics={"linearization_residual": linearized.residual, "roundtrip_residual": residual},
        )
        return HilbertFactorization(descriptor=descriptor, theta=oriented, linearized=linearized, votes=votes)
    raise last_error


def factor_hilbert_isometry(
    f: Callable, algebra: AlgebraDescriptor, seed: Optional[int] = None, threshold: float = RESIDUAL_THRESHOLD
) -> IsometryDescriptor:
    return hilbert_factorization(f, algebra, seed, threshold).descriptor


def extend_orthoisomorphism(
    theta: Callable[[Element], Element], algebra: AlgebraDescriptor, tol: float = 10 * RESIDUAL_THRESHOLD
) -> JordanIsoRep:
    """J(a) = sum lambda_i theta(p_i) over the spectral decomposition of each canonical basis element"""
    columns = []
    for basis in canonical_basis(algebra):
        frame = spectral_decomposition(basis)
        images = [theta(p) for p in frame.idempotents]
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                if not is_orthogonal(images[i], images[j], tol):
                    raise NotJordanIsomorphismError("theta does not preserve orthogonality of spectral idempotents")
        image = images[0] * float(frame.eigenvalues[0])
        for value, q in zip(frame.eigenvalues[1:], images[1:]):
            image = image + q * float(value)
        columns.append(image.to_vector())
    matrix = np.column_stack(columns)
    if not check_jordan_isomorphism(matrix, algebra, JORDAN_FIT_TOL):
        raise NotJordanIsomorphismError("spectral extension of theta is not multiplicative")
    return match_jordan_iso(matrix, algebra)


def random_jordan_iso(algebra: AlgebraDescriptor, rng: np.random.Generator) -> JordanIsoRep:
    kind = algebra.kind
    if kind == VECTOR:
        return coordinate_permutation(rng.permutation(algebra.n))
    if kind == SYM:
        return orthogonal_conjugation(random_orthogonal(algebra.n, rng)) if algebra.n > 1 else identity_iso()
    if kind == SPIN:
        return spin_orthogonal(random_orthogonal(algebra.n, rng))
    perm = list(range(len(algebra.parts)))
    groups: Dict[AlgebraDescriptor, List[int]] = {}
    for i, part in enumerate(algebra.parts):
        groups.setdefault(part, []).append(i)
    for slots in groups.values():
        shuffled = [slots[int(k)] for k in rng.permutation(len(slots))]
        for slot, source in zip(slots, shuffled):
            perm[slot] = source
    return sum_iso(perm, [random_jordan_iso(part, rng) for part in algebra.parts])


def random_descriptor(metric: MetricKind, algebra: AlgebraDescriptor, rng: np.random.Generator) -> IsometryDescriptor:
    b = random_interior(algebra, rng)
    iso = random_jordan_iso(algebra, rng)
    if metric == "T":
        return IsometryDescriptor(metric="T", b=b, iso=iso, p=random_central_projection(algebra, rng))
    if metric == "H":
        epsilon = 1 if rng.random() < 0.5 else -1
        return IsometryDescriptor(metric="H", b=normalize_ray(b).representative, iso=iso, epsilon=epsilon)
    raise InvalidInputError(f"unknown metric {metric!r}")
