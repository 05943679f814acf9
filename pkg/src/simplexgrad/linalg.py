"""Dense linear-algebra kernel.

Small, deterministic wrappers used by every other module: Moore-Penrose
pseudoinverse with an explicit rank cutoff, spectral norm, a rank-one
inverse update, and exact gamma values at half-integer arguments.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "SingularUpdateError",
    "pseudoinverse",
    "spectral_norm",
    "rank_one_update_inverse",
    "gamma_half_integer",
]


class SingularUpdateError(ValueError):
    """Rank-one update would make the matrix singular."""


def _as_finite_2d(a, name: str) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"{name} must be a nonempty 2-d array")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def pseudoinverse(a, rcond: float | None = None) -> np.ndarray:
    """Moore-Penrose pseudoinverse via SVD.

    Singular values at or below ``rcond * sigma_max`` are treated as zero.
    The default cutoff is ``max(rows, cols) * machine epsilon``, which keeps
    near-rank-deficient sample grids (small subdivision counts) stable.
    """
    arr = _as_finite_2d(a, "a")
    if rcond is None:
        rcond = max(arr.shape) * np.finfo(float).eps
    u, s, vt = np.linalg.svd(arr, full_matrices=False)
    cutoff = rcond * (s[0] if s.size else 0.0)
    inv_s = np.where(s > cutoff, 1.0 / np.where(s > cutoff, s, 1.0), 0.0)
    return (vt.T * inv_s) @ u.T


def spectral_norm(a) -> float:
    """Largest singular value of ``a``."""
    arr = _as_finite_2d(a, "a")
    return float(np.linalg.norm(arr, ord=2))


def rank_one_update_inverse(d_inv, u, v, tol: float = 1e-12) -> np.ndarray:
    """Inverse of ``D + u v^T`` given ``D^{-1}``.

    Uses the rank-one (Sherman-Morrison) form
    ``(D + u v^T)^{-1} = D^{-1} - D^{-1} u v^T D^{-1} / (1 + v^T D^{-1} u)``.

    Raises
    ------
    SingularUpdateError
        If ``|1 + v^T D^{-1} u|`` falls below ``tol``.
    """
    d_inv = _as_finite_2d(d_inv, "d_inv")
    u = np.asarray(u, dtype=float).reshape(-1)
    v = np.asarray(v, dtype=float).reshape(-1)
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
        raise ValueError("u and v must be finite")
    du = d_inv @ u
    vd = v @ d_inv
    denom = 1.0 + float(v @ du)
    if abs(denom) < tol:
        raise SingularUpdateError(f"update denominator {denom:.3e} below tolerance {tol:.1e}")
    return d_inv - np.outer(du, vd) / denom


def gamma_half_integer(two_k: int) -> float:
    """Exact ``Gamma(two_k / 2)`` for positive integer ``two_k``.

    Built from Gamma(1) = 1, Gamma(1/2) = sqrt(pi) and the recurrence
    Gamma(x + 1) = x Gamma(x); no series approximation is involved.
    """
    two_k = int(two_k)
    if two_k <= 0:
        raise ValueError("two_k must be a positive integer")
    if two_k % 2 == 0:
        return float(math.factorial(two_k // 2 - 1))
    value = math.sqrt(math.pi)
    # climb from Gamma(1/2) up to Gamma(two_k/2) in unit steps
    x = 0.5
    while x < two_k / 2 - 0.25:
        value *= x
        x += 1.0
    return value
