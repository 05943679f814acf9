"""Error bounds for the simplex gradient.

Two families:

* classical bounds for a finite sample matrix, growing with sqrt(N) and
  the conditioning of the normalized sample;
* bounds on the dense-sampling limit ("limit bounds"), which do not
  depend on the number of samples at all -- only on the region shape
  and a Lipschitz constant supplied by the caller.

Lipschitz constants are never estimated here; callers pass analytic
values valid on the relevant region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .closed_forms import ball_gamma_ratio
from .regions import SampleMatrix, sample_radius

__all__ = [
    "RankDeficiencyError",
    "BoundReport",
    "classical_bound",
    "centered_bound",
    "limit_bound_box",
    "limit_bound_ball",
]


class RankDeficiencyError(ValueError):
    """The sample matrix does not have full row rank."""


@dataclass(frozen=True)
class BoundReport:
    """A bound value plus the constants that produced it."""

    value: float
    kind: str  # classical | classical-centered | limit-box | limit-hypercube | limit-ball
    constants: dict = field(default_factory=dict)
    region: str = ""

    CSV_HEADER = "kind,value,region"

    def to_csv_row(self) -> str:
        return f"{self.kind},{repr(float(self.value))},{self.region}"


def _directions(sample) -> np.ndarray:
    if isinstance(sample, SampleMatrix):
        return sample.directions
    arr = np.asarray(sample, dtype=float)
    if arr.ndim != 2:
        raise ValueError("sample must be a SampleMatrix or an n x N array")
    return arr


def _min_max_singular(a: np.ndarray) -> tuple[float, float]:
    s = np.linalg.svd(a, compute_uv=False)
    return float(s[-1]), float(s[0])


def classical_bound(sample, grad_lipschitz: float) -> BoundReport:
    """Finite-sample bound ``(sqrt(N)/2) L |pinv(Shat^T)| Delta``.

    ``Shat`` is the sample scaled by its radius Delta (largest column
    norm); ``|pinv(Shat^T)|`` equals ``1 / sigma_min(Shat)`` for a
    full-row-rank sample. ``grad_lipschitz`` must be valid on the ball of
    radius Delta about the reference point.
    """
    if grad_lipschitz < 0:
        raise ValueError("grad_lipschitz must be nonnegative")
    s = _directions(sample)
    n, cols = s.shape
    radius = sample_radius(s)
    smin, smax = _min_max_singular(s / radius)
    if smin <= 1e-12 * smax:
        raise RankDeficiencyError("sample matrix must have full row rank")
    value = math.sqrt(cols) / 2.0 * grad_lipschitz * (1.0 / smin) * radius
    return BoundReport(
        value=value,
        kind="classical",
        constants={"L_grad": grad_lipschitz, "radius": radius, "n_samples": cols, "pinv_norm": 1.0 / smin},
    )


def centered_bound(half_sample, hess_lipschitz: float, radius: float | None = None) -> BoundReport:
    """Bound for samples with the mirrored structure ``[A, -A]``.

    ``half_sample`` is A (n x N/2); the full sample has N = 2 cols(A)
    columns and the bound is ``(sqrt(N)/6) L_H |pinv(Ahat^T)| Delta^2``
    with ``Ahat = A / Delta``. ``hess_lipschitz`` must be valid on the
    ball of radius Delta about the reference point.
    """
    if hess_lipschitz < 0:
        raise ValueError("hess_lipschitz must be nonnegative")
    a = _directions(half_sample)
    n, half_cols = a.shape
    delta = sample_radius(a) if radius is None else float(radius)
    if delta <= 0:
        raise ValueError("radius must be positive")
    smin, smax = _min_max_singular(a / delta)
    if smin <= 1e-12 * smax:
        raise RankDeficiencyError("half sample must have full row rank")
    cols = 2 * half_cols
    value = math.sqrt(cols) / 6.0 * hess_lipschitz * (1.0 / smin) * delta**2
    return BoundReport(
        value=value,
        kind="classical-centered",
        constants={"L_hess": hess_lipschitz, "radius": delta, "n_samples": cols, "pinv_norm": 1.0 / smin},
    )


def limit_bound_box(d, grad_lipschitz: float) -> BoundReport:
    """N-independent bound for the dense-grid limit over a box.

    General form ``(3/2) sqrt(n) L Delta^2 / d_min`` with Delta = |d| (the
    radius of the densified grid, attained at the far corner) and d_min the
    shortest side. When all sides are exactly equal the tighter hypercube
    form ``(1/2)(2n+1) L Delta`` applies and becomes the report value; the
    general value is kept in the constants either way.
    """
    if grad_lipschitz < 0:
        raise ValueError("grad_lipschitz must be nonnegative")
    d = np.asarray(d, dtype=float).reshape(-1)
    if d.size < 2 or np.any(d <= 0):
        raise ValueError("side lengths must be positive and n >= 2")
    n = d.size
    radius = float(np.linalg.norm(d))
    d_min = float(np.min(d))
    general = 1.5 * math.sqrt(n) * grad_lipschitz * radius**2 / d_min
    constants = {"L_grad": grad_lipschitz, "radius": radius, "d_min": d_min, "general_value": general}
    # hypercube detection is exact equality by design: no tolerance
    if np.all(d == d[0]):
        value = 0.5 * (2 * n + 1) * grad_lipschitz * radius
        return BoundReport(value=value, kind="limit-hypercube", constants=constants, region=f"box{tuple(d)}")
    return BoundReport(value=general, kind="limit-box", constants=constants, region=f"box{tuple(d)}")


def limit_bound_ball(n: int, r: float, hess_lipschitz: float) -> BoundReport:
    """N-independent bound for the dense-sampling limit over a ball.

    ``(sqrt(n) / (3 sqrt(pi))) L_H eta(n) r^2`` with eta the gamma-ratio
    constant. Zero for any field with constant Hessian, matching the exact
    recovery of gradients of quadratics.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if r <= 0:
        raise ValueError("radius must be positive")
    if hess_lipschitz < 0:
        raise ValueError("hess_lipschitz must be nonnegative")
    eta = ball_gamma_ratio(n)
    value = math.sqrt(n) / (3.0 * math.sqrt(math.pi)) * hess_lipschitz * eta * r**2
    return BoundReport(
        value=value,
        kind="limit-ball",
        constants={"L_hess": hess_lipschitz, "radius": r, "eta": eta},
        region=f"ball(r={r})",
    )
