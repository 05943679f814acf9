"""Closed forms attached to the rectangular grid and the ball.

Everything here is an explicit formula: the Gram matrix of the
rightmost-endpoint grid, its inverse (via a rank-one update of a diagonal
matrix), the dense-sampling limit of the scaled inverse Gram, ball volumes,
the second-moment matrix of a ball, and the gamma-ratio constant used by
the ball error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import gamma_half_integer

__all__ = [
    "GridGram",
    "DenseLimitMatrix",
    "grid_gram",
    "grid_gram_inverse",
    "dense_limit_matrix",
    "normalized_limit_norm",
    "ball_volume",
    "ball_gamma_ratio",
    "ball_second_moment",
]


def _check_counts_sublengths(counts, sublengths) -> tuple[np.ndarray, np.ndarray]:
    counts = np.asarray(counts, dtype=int).reshape(-1)
    sublengths = np.asarray(sublengths, dtype=float).reshape(-1)
    if counts.size != sublengths.size or counts.size < 2:
        raise ValueError("counts and sublengths must have equal length >= 2")
    if np.any(counts < 2):
        raise ValueError("every subdivision count must be >= 2")
    if np.any(sublengths <= 0):
        raise ValueError("every cell side length must be positive")
    return counts, sublengths


@dataclass(frozen=True)
class GridGram:
    """Gram matrix S S^T of the rightmost-endpoint grid, in closed form."""

    counts: tuple[int, ...]
    sublengths: tuple[float, ...]
    matrix: np.ndarray


@dataclass(frozen=True)
class DenseLimitMatrix:
    """Limit of N (S S^T)^{-T} as every subdivision count grows.

    ``matrix`` depends on the box side lengths d; ``normalized`` is the
    side-length-free factor F with matrix = D^{-1} F D^{-1}, D = diag(d).
    """

    sides: tuple[float, ...]
    matrix: np.ndarray
    normalized: np.ndarray


def grid_gram(counts, sublengths) -> GridGram:
    """Closed-form S S^T for the rightmost-endpoint grid.

    Diagonal entries ``N (N_i+1)(2N_i+1)/6 * h_i^2`` and off-diagonal
    entries ``N (N_i+1)(N_j+1)/4 * h_i h_j``, where N is the total column
    count and h the cell side lengths.
    """
    counts, sublengths = _check_counts_sublengths(counts, sublengths)
    n = counts.size
    total = float(np.prod(counts.astype(float)))
    row = (counts + 1.0) / 2.0 * sublengths
    g = total * np.outer(row, row)
    diag = total * (counts + 1.0) * (2.0 * counts + 1.0) / 6.0 * sublengths**2
    g[np.diag_indices(n)] = diag
    return GridGram(tuple(int(c) for c in counts), tuple(map(float, sublengths)), g)


def grid_gram_inverse(counts, sublengths) -> np.ndarray:
    """Closed-form (S S^T)^{-T} for the rightmost-endpoint grid.

    Equals ``(12/N) (E - 3/(1+3s) y y^T)`` with E diagonal with entries
    ``1/((N_i^2-1) h_i^2)``, ``y_i = 1/((N_i-1) h_i)`` and
    ``s = sum (N_i+1)/(N_i-1)``.
    """
    counts, sublengths = _check_counts_sublengths(counts, sublengths)
    total = float(np.prod(counts.astype(float)))
    e = 1.0 / ((counts.astype(float) ** 2 - 1.0) * sublengths**2)
    y = 1.0 / ((counts - 1.0) * sublengths)
    s = float(np.sum((counts + 1.0) / (counts - 1.0)))
    return 12.0 / total * (np.diag(e) - 3.0 / (1.0 + 3.0 * s) * np.outer(y, y))


def _normalized_limit(n: int) -> np.ndarray:
    f = np.full((n, n), -36.0 / (3.0 * n + 1.0))
    f[np.diag_indices(n)] = 12.0 * (3.0 * n - 2.0) / (3.0 * n + 1.0)
    return f


def dense_limit_matrix(d) -> DenseLimitMatrix:
    """Dense-sampling limit of ``N (S S^T)^{-T}`` for a box with sides ``d``.

    Diagonal entries ``12(3n-2) / (d_i^2 (3n+1))``, off-diagonal entries
    ``-36 / (d_i d_j (3n+1))``.
    """
    d = np.asarray(d, dtype=float).reshape(-1)
    if d.size < 2 or np.any(d <= 0):
        raise ValueError("side lengths must be positive and n >= 2")
    normalized = _normalized_limit(d.size)
    inv_d = 1.0 / d
    matrix = normalized * np.outer(inv_d, inv_d)
    return DenseLimitMatrix(tuple(map(float, d)), matrix, normalized)


def normalized_limit_norm(n: int) -> float:
    """Spectral norm of the normalized dense-limit matrix: 12 for every n >= 2.

    The value is analytic; tests cross-check it against an eigenvalue
    computation.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    return 12.0


def ball_volume(dim: int, r: float = 1.0) -> float:
    """Volume pi^{dim/2} r^dim / Gamma(dim/2 + 1) of a ball in ``dim`` dimensions."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if r <= 0:
        raise ValueError("radius must be positive")
    return math.pi ** (dim / 2.0) * r**dim / gamma_half_integer(dim + 2)


def ball_gamma_ratio(n: int) -> float:
    """Gamma((n+4)/2) / (sqrt(pi) Gamma((n+3)/2)); appears in the ball error bound."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return gamma_half_integer(n + 4) / (math.sqrt(math.pi) * gamma_half_integer(n + 3))


def ball_second_moment(n: int, r: float = 1.0) -> np.ndarray:
    """Matrix of integrals of ``x_i x_j`` over the ball of radius ``r``.

    Diagonal with every entry ``V_{n+2}(r) / (2 pi)``; off-diagonals vanish
    by symmetry.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    return ball_volume(n + 2, r) / (2.0 * math.pi) * np.eye(n)
