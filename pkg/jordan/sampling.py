"""
Seeded random elements, interior points and projections
"""
from typing import Optional

import numpy as np
from scipy.stats import ortho_group

from jordan.algebra import unit, zero
from jordan.models import SPIN, SUM, SYM, VECTOR, AlgebraDescriptor, Element
from jordan.spectral import exp, jordan_frame


def random_element(algebra: AlgebraDescriptor, rng: np.random.Generator, scale: float = 1.0) -> Element:
    """Gaussian element; Sym parts are (G + G^T)/2"""
    kind = algebra.kind
    if kind == SYM:
        g = rng.standard_normal((algebra.n, algebra.n))
        matrix = scale * (g + g.T) / 2.0
        return Element.from_vector(algebra, _sym_vector(matrix))
    if kind == SUM:
        return Element(algebra, tuple(random_element(part, rng, scale) for part in algebra.parts))
    return Element.from_vector(algebra, scale * rng.standard_normal(algebra.dim))


def random_interior(algebra: AlgebraDescriptor, rng: np.random.Generator, spread: float = 0.5) -> Element:
    """exp of a random element, so the log-spectrum is of order spread"""
    return exp(random_element(algebra, rng, spread))


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    if n == 1:
        return np.array([[1.0 if rng.random() < 0.5 else -1.0]])
    return ortho_group.rvs(dim=n, random_state=rng)


def random_projection(
    algebra: AlgebraDescriptor, rng: np.random.Generator, rank: Optional[int] = None
) -> Element:
    """Sum of `rank` primitive idempotents of a random Jordan frame (nontrivial when rank is None)"""
    frame = jordan_frame(random_element(algebra, rng))
    total_rank = len(frame.idempotents)
    if rank is None:
        rank = int(rng.integers(1, total_rank)) if total_rank > 1 else 1
    chosen = rng.choice(total_rank, size=rank, replace=False)
    total = zero(algebra)
    for i in chosen:
        total = total + frame.idempotents[int(i)]
    return total


def random_central_projection(algebra: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    """0 or e on every factor; an arbitrary 0-1 vector on Vector(n)"""
    kind = algebra.kind
    if kind == VECTOR:
        return Element.from_vector(algebra, rng.integers(0, 2, algebra.n).astype(float))
    if kind in (SYM, SPIN):
        return unit(algebra) if rng.random() < 0.5 else zero(algebra)
    return Element(algebra, tuple(random_central_projection(part, rng) for part in algebra.parts))


def _sym_vector(matrix: np.ndarray) -> np.ndarray:
    n = matrix.shape[0]
    rows, cols = np.triu_indices(n, k=1)
    return np.concatenate([np.diag(matrix), matrix[rows, cols]])
