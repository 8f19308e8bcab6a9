"""
Data models for Euclidean Jordan algebras and their elements
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from conegeo.config import CLUSTER_TOL
from jordan.errors import AlgebraMismatchError, InvalidInputError

VECTOR = "vector"
SYM = "sym"
SPIN = "spin"
SUM = "sum"

ALGEBRA_KINDS = (VECTOR, SYM, SPIN, SUM)


@dataclass(frozen=True)
class AlgebraDescriptor:
    """
    Descriptor of a supported algebra.

    vector: R^n with the coordinatewise product, rank n
    sym:    real symmetric n x n matrices with a o b = (ab + ba)/2, rank n
    spin:   pairs (h, t), h in R^n, rank 2 (n holds the dimension d)
    sum:    ordered direct sum of parts, rank = sum of part ranks
    """
    kind: str
    n: int = 0
    parts: Tuple["AlgebraDescriptor", ...] = ()

    @property
    def rank(self) -> int:
        if self.kind == VECTOR:
            return self.n
        if self.kind == SYM:
            return self.n
        if self.kind == SPIN:
            return 2
        return sum(part.rank for part in self.parts)

    @property
    def dim(self) -> int:
        """Dimension of the coordinate space"""
        if self.kind == VECTOR:
            return self.n
        if self.kind == SYM:
            return self.n * (self.n + 1) // 2
        if self.kind == SPIN:
            return self.n + 1
        return sum(part.dim for part in self.parts)

    @property
    def offsets(self) -> List[int]:
        """Start offset of every direct-sum part inside the coordinate vector"""
        offsets = []
        position = 0
        for part in self.parts:
            offsets.append(position)
            position += part.dim
        return offsets

    def __str__(self) -> str:
        if self.kind == VECTOR:
            return f"Vector({self.n})"
        if self.kind == SYM:
            return f"Sym({self.n})"
        if self.kind == SPIN:
            return f"Spin({self.n})"
        return " + ".join(str(part) for part in self.parts)


def vector_algebra(n: int) -> AlgebraDescriptor:
    if n < 1:
        raise InvalidInputError(f"Vector(n) needs n >= 1, got {n}")
    return AlgebraDescriptor(VECTOR, n)


def sym_algebra(n: int) -> AlgebraDescriptor:
    if n < 1:
        raise InvalidInputError(f"Sym(n) needs n >= 1, got {n}")
    return AlgebraDescriptor(SYM, n)


def spin_algebra(d: int) -> AlgebraDescriptor:
    if d < 1:
        raise InvalidInputError(f"Spin(d) needs d >= 1, got {d}")
    return AlgebraDescriptor(SPIN, d)


def direct_sum(*parts: AlgebraDescriptor) -> AlgebraDescriptor:
    if not parts:
        raise InvalidInputError("A direct sum needs at least one part")
    return AlgebraDescriptor(SUM, 0, tuple(parts))


@dataclass(frozen=True, eq=False)
class Element:
    """
    Point of a Euclidean Jordan algebra.

    data holds a vector for Vector(n), a dense symmetric matrix for Sym(n),
    the concatenation (h, t) for Spin(d) and a tuple of part Elements for sums.
    Values are immutable once built; use make_element to construct.
    """
    algebra: AlgebraDescriptor
    data: Union[np.ndarray, Tuple["Element", ...]]

    # numpy scalars defer to __rmul__ instead of broadcasting
    __array_ufunc__ = None

    @property
    def matrix(self) -> np.ndarray:
        if self.algebra.kind != SYM:
            raise AlgebraMismatchError(f"{self.algebra} has no matrix form")
        return self.data

    @property
    def h(self) -> np.ndarray:
        if self.algebra.kind != SPIN:
            raise AlgebraMismatchError(f"{self.algebra} has no spin vector part")
        return self.data[:-1]

    @property
    def t(self) -> float:
        if self.algebra.kind != SPIN:
            raise AlgebraMismatchError(f"{self.algebra} has no spin scalar part")
        return float(self.data[-1])

    @property
    def parts(self) -> Tuple["Element", ...]:
        if self.algebra.kind != SUM:
            raise AlgebraMismatchError(f"{self.algebra} is not a direct sum")
        return self.data

    def to_vector(self) -> np.ndarray:
        """Coordinates in the canonical basis"""
        kind = self.algebra.kind
        if kind == SYM:
            n = self.algebra.n
            rows, cols = np.triu_indices(n, k=1)
            return np.concatenate([np.diag(self.data), self.data[rows, cols]])
        if kind == SUM:
            return np.concatenate([part.to_vector() for part in self.data])
        return np.array(self.data, dtype=float)

    @classmethod
    def from_vector(cls, algebra: AlgebraDescriptor, vec: Sequence[float]) -> "Element":
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (algebra.dim,):
            raise AlgebraMismatchError(
                f"coordinate vector of shape {vec.shape} does not fit {algebra} (dim {algebra.dim})"
            )
        if algebra.kind == SYM:
            n = algebra.n
            matrix = np.diag(vec[:n])
            rows, cols = np.triu_indices(n, k=1)
            matrix[rows, cols] = vec[n:]
            matrix[cols, rows] = vec[n:]
            return cls._frozen(algebra, matrix)
        if algebra.kind == SUM:
            parts = []
            for part, offset in zip(algebra.parts, algebra.offsets):
                parts.append(cls.from_vector(part, vec[offset:offset + part.dim]))
            return cls(algebra, tuple(parts))
        return cls._frozen(algebra, vec.copy())

    @classmethod
    def _frozen(cls, algebra: AlgebraDescriptor, array: np.ndarray) -> "Element":
        array.setflags(write=False)
        return cls(algebra, array)

    def _check_same(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected an Element, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise AlgebraMismatchError(f"algebra mismatch: {self.algebra} vs {other.algebra}")

    def __add__(self, other: "Element") -> "Element":
        self._check_same(other)
        return Element.from_vector(self.algebra, self.to_vector() + other.to_vector())

    def __sub__(self, other: "Element") -> "Element":
        self._check_same(other)
        return Element.from_vector(self.algebra, self.to_vector() - other.to_vector())

    def __neg__(self) -> "Element":
        return Element.from_vector(self.algebra, -self.to_vector())

    def __mul__(self, scalar: float) -> "Element":
        if isinstance(scalar, Element):
            raise TypeError("use jordan_product for the product of two elements")
        return Element.from_vector(self.algebra, float(scalar) * self.to_vector())

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "Element":
        return self * (1.0 / float(scalar))

    def __repr__(self) -> str:
        return f"Element({self.algebra}, {np.array2string(self.to_vector(), precision=6)})"


def make_element(algebra: AlgebraDescriptor, data) -> Element:
    """
    Build an Element from raw coordinate data, symmetrizing Sym inputs.
    Raises InvalidInputError on shape mismatch or non-finite values.
    """
    kind = algebra.kind
    if kind == SUM:
        if len(data) != len(algebra.parts):
            raise InvalidInputError(
                f"{algebra} has {len(algebra.parts)} parts, got {len(data)} components"
            )
        parts = []
        for part, item in zip(algebra.parts, data):
            if isinstance(item, Element):
                if item.algebra != part:
                    raise AlgebraMismatchError(f"component {item.algebra} does not match {part}")
                parts.append(item)
            else:
                parts.append(make_element(part, item))
        return Element(algebra, tuple(parts))

    try:
        array = np.array(data, dtype=float)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"element data for {algebra} is not numeric: {str(e)}")
    if not np.all(np.isfinite(array)):
        raise InvalidInputError(f"element data for {algebra} contains non-finite values")

    if kind == SYM:
        if array.shape != (algebra.n, algebra.n):
            raise InvalidInputError(f"{algebra} expects a {algebra.n}x{algebra.n} matrix, got shape {array.shape}")
        array = (array + array.T) / 2.0
    elif kind == SPIN:
        if array.shape != (algebra.n + 1,):
            raise InvalidInputError(f"{algebra} expects (h, t) with {algebra.n} + 1 values, got shape {array.shape}")
    elif kind == VECTOR:
        if array.shape != (algebra.n,):
            raise InvalidInputError(f"{algebra} expects {algebra.n} values, got shape {array.shape}")
    else:
        raise InvalidInputError(f"unknown algebra kind {kind!r}")
    return Element._frozen(algebra, array)


def spin_element(algebra: AlgebraDescriptor, h: Sequence[float], t: float) -> Element:
    return make_element(algebra, np.concatenate([np.asarray(h, dtype=float), [float(t)]]))


@dataclass(frozen=True, eq=False)
class SpectralFrame:
    """
    Clustered spectral decomposition a = sum_i eigenvalues[i] * idempotents[i].

    eigenvalues are descending cluster representatives; multiplicities count
    the primitive idempotents merged into each cluster.
    """
    element: Element
    eigenvalues: np.ndarray
    idempotents: Tuple[Element, ...]
    multiplicities: Tuple[int, ...]
    primitive_eigenvalues: np.ndarray = field(default=None)

    def reconstruct(self) -> Element:
        total = self.idempotents[0] * float(self.eigenvalues[0])
        for value, idempotent in zip(self.eigenvalues[1:], self.idempotents[1:]):
            total = total + idempotent * float(value)
        return total

    @property
    def size(self) -> int:
        return len(self.eigenvalues)

    @property
    def max(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def min(self) -> float:
        return float(self.eigenvalues[-1])


@dataclass(frozen=True, eq=False)
class JordanFrame:
    """Complete system of primitive orthogonal idempotents with their eigenvalues (descending)"""
    eigenvalues: np.ndarray
    idempotents: Tuple[Element, ...]


def spectral_points(values: Sequence[float], tol: Optional[float] = None) -> List[List[int]]:
    """
    Group indices of a descending sequence into clusters: consecutive values
    closer than tol * max(1, |max value|) share a spectral point.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return []
    tol = CLUSTER_TOL if tol is None else tol
    threshold = tol * max(1.0, abs(float(values[0])))
    clusters = [[0]]
    for i in range(1, values.size):
        if abs(values[clusters[-1][-1]] - values[i]) <= threshold:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return clusters
