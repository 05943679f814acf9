"""Deterministic integration over boxes and balls.

Tensor-product Gauss-Legendre rules (no randomness), plus exact
gamma-function oracles for monomial integrals over balls. The monomial
oracles are the independent reference values the quadrature is tested
against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import gamma_half_integer

__all__ = [
    "QuadratureSpec",
    "box_nodes",
    "ball_nodes",
    "integrate_box",
    "integrate_ball",
    "monomial_ball_integral",
    "abs_monomial_ball_integral",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor Gauss-Legendre rule: ``nodes_per_axis`` points on every axis."""

    nodes_per_axis: int = 32
    scheme: str = "gauss-legendre"

    def __post_init__(self):
        if self.nodes_per_axis < 2:
            raise ValueError("nodes_per_axis must be at least 2")
        if self.scheme != "gauss-legendre":
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}")


def _gl_axis(lo: float, hi: float, m: int) -> tuple[np.ndarray, np.ndarray]:
    q, w = np.polynomial.legendre.leggauss(m)
    half = 0.5 * (hi - lo)
    return lo + half * (q + 1.0), half * w


def _tensor(axes: list[tuple[np.ndarray, np.ndarray]]) -> tuple[np.ndarray, np.ndarray]:
    pts = np.meshgrid(*[a[0] for a in axes], indexing="ij")
    wts = np.meshgrid(*[a[1] for a in axes], indexing="ij")
    points = np.stack([p.ravel() for p in pts], axis=-1)
    weights = np.ones(points.shape[0])
    for w in wts:
        weights *= w.ravel()
    return points, weights


def box_nodes(d, spec: QuadratureSpec = QuadratureSpec()) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (m, n) and weights (m,) for the box ``[0, d_1] x ... x [0, d_n]``."""
    d = np.asarray(d, dtype=float).reshape(-1)
    if d.size < 1 or np.any(d <= 0):
        raise ValueError("side lengths must all be positive")
    return _tensor([_gl_axis(0.0, di, spec.nodes_per_axis) for di in d])


def ball_nodes(n: int, r: float, spec: QuadratureSpec = QuadratureSpec()) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (m, n) and weights (m,) for the ball of radius ``r`` about the origin.

    Built on the spherical parameter box (radius, azimuth, polar angles);
    the returned weights already include the spherical volume element, so
    ``sum(w * g(points))`` approximates the Cartesian integral of ``g``.
    """
    if n < 2:
        raise ValueError("ball quadrature requires dimension >= 2")
    if r <= 0:
        raise ValueError("radius must be positive")
    m = spec.nodes_per_axis
    axes = [_gl_axis(0.0, r, m), _gl_axis(0.0, 2.0 * math.pi, m)]
    axes += [_gl_axis(0.0, math.pi, m) for _ in range(n - 2)]
    params, weights = _tensor(axes)
    rho = params[:, 0]
    theta = params[:, 1]
    phis = params[:, 2:]
    points = spherical_points(rho, theta, phis)
    jac = rho ** (n - 1)
    for i in range(n - 2):
        jac = jac * np.sin(phis[:, i]) ** (n - 2 - i)
    return points, weights * jac


def spherical_points(rho: np.ndarray, theta: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Vectorized spherical-to-Cartesian map; see ``regions.spherical_to_cartesian``."""
    n = 2 + phis.shape[1]
    out = np.empty(rho.shape + (n,), dtype=float)
    running = np.asarray(rho, dtype=float).copy()
    for i in range(n - 2):
        out[..., i] = running * np.cos(phis[:, i])
        running = running * np.sin(phis[:, i])
    out[..., n - 2] = running * np.cos(theta)
    out[..., n - 1] = running * np.sin(theta)
    return out


def _evaluate(g, points: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(g(points), dtype=float)
        if vals.shape != points.shape[:1]:
            raise TypeError("non-vectorized integrand")
    except Exception:
        # scalar-only callable: evaluate point by point
        vals = np.array([float(g(p)) for p in points])
    if not np.all(np.isfinite(vals)):
        bad = int(np.flatnonzero(~np.isfinite(vals))[0])
        raise ValueError(f"integrand returned a non-finite value at node {bad}: {points[bad]}")
    return vals


def integrate_box(g, d, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Integral of ``g`` over ``[0, d_1] x ... x [0, d_n]``.

    ``g`` may be vectorized (accepting an (m, n) array) or scalar-valued on
    single points. Exact for polynomials of per-axis degree up to
    ``2 * nodes_per_axis - 1``.
    """
    points, weights = box_nodes(d, spec)
    return float(weights @ _evaluate(g, points))


def integrate_ball(g, n: int, r: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Integral of ``g`` over the ball of radius ``r`` centered at the origin."""
    points, weights = ball_nodes(n, r, spec)
    return float(weights @ _evaluate(g, points))


def _even_surface_factor(alpha: np.ndarray) -> float:
    beta = 0.5 * (alpha + 1.0)
    num = 2.0
    for b in beta:
        num *= gamma_half_integer(int(round(2 * b)))
    return num / gamma_half_integer(int(round(2 * beta.sum())))


def monomial_ball_integral(alpha, n: int, r: float = 1.0) -> float:
    """Exact integral of ``x^alpha`` over the ball of radius ``r`` in n dims.

    Zero when any exponent is odd; otherwise a closed form in gamma values
    at half-integers.
    """
    alpha = np.asarray(alpha, dtype=int).reshape(-1)
    if alpha.size != n:
        raise ValueError("alpha must have one exponent per dimension")
    if np.any(alpha < 0):
        raise ValueError("exponents must be nonnegative")
    if np.any(alpha % 2 == 1):
        return 0.0
    total = int(alpha.sum())
    return r ** (total + n) / (total + n) * _even_surface_factor(alpha)


def abs_monomial_ball_integral(alpha, n: int, r: float = 1.0) -> float:
    """Exact integral of ``|x_1|^a1 ... |x_n|^an`` over the ball of radius ``r``."""
    alpha = np.asarray(alpha, dtype=int).reshape(-1)
    if alpha.size != n:
        raise ValueError("alpha must have one exponent per dimension")
    if np.any(alpha < 0):
        raise ValueError("exponents must be nonnegative")
    total = int(alpha.sum())
    return r ** (total + n) / (total + n) * _even_surface_factor(alpha)
