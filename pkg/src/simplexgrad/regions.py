"""Structured sample sets on boxes and balls.

A sample set is an n x N matrix of directions: column j is the offset from
the reference point to the j-th sample point. Three builders are provided:

* ``rect_grid_sample`` -- one point per cell of a subdivided box, at the
  cell corner farthest from the reference point;
* ``rect_arbitrary_sample`` -- one point per cell at an arbitrary (seeded
  or caller-supplied) position inside the closed cell;
* ``ball_grid_sample`` -- one point per cell of a polar grid on a ball,
  at the cell corner with the largest radius and angles.

Column order is deterministic: cells are enumerated lexicographically by
multi-index, which makes block-structure assertions and CSV output
reproducible.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BudgetExceededError",
    "HyperrectRegion",
    "BallRegion",
    "SampleMatrix",
    "rect_grid_sample",
    "rect_arbitrary_sample",
    "ball_grid_sample",
    "spherical_to_cartesian",
    "grid_jacobian",
    "sample_radius",
]

DEFAULT_COLUMN_BUDGET = 10_000_000


class BudgetExceededError(ValueError):
    """Requested grid would exceed the configured column budget."""


@dataclass(frozen=True)
class HyperrectRegion:
    """Axis-aligned box ``[x0, x0 + d]`` subdivided into a grid of cells.

    ``x0`` sits at the minimal corner. ``counts[i]`` is the number of equal
    subdivisions of side i, so the grid has ``prod(counts)`` cells of side
    lengths ``d[i] / counts[i]``.
    """

    x0: tuple[float, ...]
    d: tuple[float, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x0", tuple(float(v) for v in self.x0))
        object.__setattr__(self, "d", tuple(float(v) for v in self.d))
        object.__setattr__(self, "counts", tuple(int(v) for v in self.counts))
        n = len(self.x0)
        if n < 2:
            raise ValueError("dimension must be >= 2")
        if len(self.d) != n or len(self.counts) != n:
            raise ValueError("x0, d and counts must have matching lengths")
        if any(not math.isfinite(v) for v in self.x0):
            raise ValueError("x0 must be finite")
        if any(v <= 0 for v in self.d):
            raise ValueError("side lengths must be positive")
        if any(c < 2 for c in self.counts):
            raise ValueError("subdivision counts must be >= 2")

    @property
    def dim(self) -> int:
        return len(self.x0)

    @property
    def sublengths(self) -> tuple[float, ...]:
        return tuple(di / ci for di, ci in zip(self.d, self.counts))

    @property
    def n_cells(self) -> int:
        return int(np.prod([float(c) for c in self.counts]))


@dataclass(frozen=True)
class BallRegion:
    """Ball of radius ``r`` about ``x0`` with a polar grid of cells.

    ``counts[0]`` subdivides the radius, ``counts[1]`` the full turn of the
    azimuthal angle, and ``counts[2:]`` the half-turn ranges of the polar
    angles. All counts must be >= 3 so the sample matrix has full row rank.
    """

    x0: tuple[float, ...]
    r: float
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x0", tuple(float(v) for v in self.x0))
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "counts", tuple(int(v) for v in self.counts))
        n = len(self.x0)
        if n < 2:
            raise ValueError("dimension must be >= 2")
        if len(self.counts) != n:
            raise ValueError("counts must have one entry per dimension")
        if any(not math.isfinite(v) for v in self.x0):
            raise ValueError("x0 must be finite")
        if self.r <= 0:
            raise ValueError("radius must be positive")
        if any(c < 3 for c in self.counts):
            raise ValueError("subdivision counts must be >= 3")

    @property
    def dim(self) -> int:
        return len(self.x0)

    @property
    def n_cells(self) -> int:
        return int(np.prod([float(c) for c in self.counts]))


@dataclass(frozen=True)
class SampleMatrix:
    """Direction matrix with per-column partition indices.

    ``directions`` is n x N; ``indices`` is N x n and holds the 1-based
    multi-index of the cell each column samples.
    """

    directions: np.ndarray
    tag: str
    indices: np.ndarray
    region: HyperrectRegion | BallRegion | None = field(repr=False, compare=False, default=None)

    @property
    def dim(self) -> int:
        return self.directions.shape[0]

    @property
    def n_columns(self) -> int:
        return self.directions.shape[1]

    def to_csv(self, out=None) -> str:
        """Serialize as CSV: n/N/tag header, then one row per column.

        Each row is ``col, i1..in, s1..sn`` (cell multi-index, then
        direction components). Floats are written with round-trip
        precision; line endings are LF.
        """
        buf = io.StringIO()
        n, cols = self.directions.shape
        buf.write("n,N,tag\n")
        buf.write(f"{n},{cols},{self.tag}\n")
        head = ",".join([f"i{k + 1}" for k in range(n)] + [f"s{k + 1}" for k in range(n)])
        buf.write(f"col,{head}\n")
        for j in range(cols):
            idx = ",".join(str(int(v)) for v in self.indices[j])
            comps = ",".join(repr(float(v)) for v in self.directions[:, j])
            buf.write(f"{j + 1},{idx},{comps}\n")
        text = buf.getvalue()
        if out is not None:
            out.write(text)
        return text


def _check_budget(n_cells: int, budget: int) -> None:
    if n_cells > budget:
        raise BudgetExceededError(f"grid would need {n_cells} columns; budget is {budget}")


def _rect_multi_indices(counts: tuple[int, ...]) -> np.ndarray:
    """All cell multi-indices (j, z_2..z_n), 1-based.

    Cells are ordered with the trailing index z_n fastest among the block
    indices and j (axis 1) fastest overall, matching the block layout
    B^{1,..,1}, B^{1,..,2}, ... with N_1 columns per block.
    """
    blocks = np.meshgrid(*[np.arange(1, c + 1) for c in counts[1:]], indexing="ij")
    z = np.stack([b.ravel() for b in blocks], axis=-1)
    n_blocks = z.shape[0]
    j = np.tile(np.arange(1, counts[0] + 1), n_blocks)
    zz = np.repeat(z, counts[0], axis=0)
    return np.column_stack([j, zz])


def rect_grid_sample(region: HyperrectRegion, budget: int = DEFAULT_COLUMN_BUDGET) -> SampleMatrix:
    """Directions to the far corner of every cell of the box grid.

    The column for multi-index (j, z_2..z_n) is
    ``(j h_1, z_2 h_2, ..., z_n h_n)`` with h the cell side lengths; the
    matrix has full row rank for all counts >= 2.
    """
    _check_budget(region.n_cells, budget)
    idx = _rect_multi_indices(region.counts)
    h = np.asarray(region.sublengths)
    directions = (idx * h).T.astype(float)
    return SampleMatrix(directions, "rect-grid", idx, region)


def rect_arbitrary_sample(
    region: HyperrectRegion,
    offsets=None,
    seed=None,
    budget: int = DEFAULT_COLUMN_BUDGET,
) -> SampleMatrix:
    """One direction per cell, at an arbitrary point of the closed cell.

    The sampled point for a cell is its far corner minus ``offsets * h``
    componentwise, with every offset in [0, 1] (0 keeps the far corner,
    1 reaches the near corner; cell boundaries are allowed). Offsets come
    either from ``offsets`` (an (n, N) array) or from a seeded generator.
    """
    _check_budget(region.n_cells, budget)
    grid = rect_grid_sample(region, budget)
    n, cols = grid.directions.shape
    if offsets is None:
        rng = np.random.default_rng(seed)
        off = rng.random((n, cols))
    else:
        off = np.asarray(offsets, dtype=float)
        if off.shape != (n, cols):
            raise ValueError(f"offsets must have shape {(n, cols)}, got {off.shape}")
        if np.any(off < 0.0) or np.any(off > 1.0) or not np.all(np.isfinite(off)):
            raise ValueError("offsets must lie in [0, 1]")
    h = np.asarray(region.sublengths)[:, None]
    directions = grid.directions - h * off
    return SampleMatrix(directions, "rect-arbitrary", grid.indices, region)


def _ball_multi_indices(counts: tuple[int, ...]) -> np.ndarray:
    grids = np.meshgrid(*[np.arange(1, c + 1) for c in counts], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def ball_grid_sample(region: BallRegion, budget: int = DEFAULT_COLUMN_BUDGET) -> SampleMatrix:
    """Directions to the outer corner of every cell of the polar grid.

    For multi-index y = (y_1..y_n) the column has radius ``r y_1 / N_1``;
    its direction is built from the polar angles ``pi y_k / N_k``
    (k = 3..n) and the azimuth ``2 pi y_2 / N_2``, with the azimuthal
    components placed last. Every column norm is at most r, with equality
    exactly on the outermost shell y_1 = N_1.
    """
    _check_budget(region.n_cells, budget)
    n = region.dim
    counts = np.asarray(region.counts)
    idx = _ball_multi_indices(region.counts)
    rho = region.r * idx[:, 0] / counts[0]
    theta = 2.0 * math.pi * idx[:, 1] / counts[1]
    directions = np.empty((n, idx.shape[0]), dtype=float)
    running = rho.astype(float).copy()
    for k in range(n - 2):
        phi = math.pi * idx[:, k + 2] / counts[k + 2]
        directions[k] = running * np.cos(phi)
        running = running * np.sin(phi)
    directions[n - 2] = running * np.cos(theta)
    directions[n - 1] = running * np.sin(theta)
    return SampleMatrix(directions, "ball-grid", idx, region)


def spherical_to_cartesian(rho: float, angles) -> np.ndarray:
    """Point with norm ``rho`` from spherical coordinates.

    ``angles[0]`` is the azimuth (full turn) and ``angles[1:]`` the polar
    angles (half turn each); the result has dimension ``len(angles) + 1``.
    Uses the standard map: x_1 = rho cos(phi_1), then successive
    sin-products, with the azimuthal cos/sin pair in the last two
    coordinates. Note the grid builder orders its azimuthal components the
    same way, so the two agree up to the ordering of the polar angles.
    """
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    angles = np.asarray(angles, dtype=float).reshape(-1)
    if angles.size < 1:
        raise ValueError("at least the azimuthal angle is required")
    theta = angles[0]
    phis = angles[1:]
    n = angles.size + 1
    out = np.empty(n, dtype=float)
    running = float(rho)
    for i, phi in enumerate(phis):
        out[i] = running * math.cos(phi)
        running *= math.sin(phi)
    out[n - 2] = running * math.cos(theta)
    out[n - 1] = running * math.sin(theta)
    return out


def grid_jacobian(region: BallRegion, y) -> float:
    """Spherical volume element at the grid node with multi-index ``y``.

    Equals ``(r y_1/N_1)^{n-1} sin^{n-2}(pi y_3/N_3) ... sin(pi y_n/N_n)``;
    for n = 2 the sine product is empty.
    """
    y = np.asarray(y, dtype=int).reshape(-1)
    counts = np.asarray(region.counts)
    n = region.dim
    if y.size != n:
        raise ValueError("multi-index must have one entry per dimension")
    if np.any(y < 1) or np.any(y > counts):
        raise ValueError("multi-index entries must satisfy 1 <= y_i <= N_i")
    value = (region.r * y[0] / counts[0]) ** (n - 1)
    for k in range(n - 2):
        value *= math.sin(math.pi * y[k + 2] / counts[k + 2]) ** (n - 2 - k)
    return float(value)


def sample_radius(sample) -> float:
    """Largest column norm of a sample matrix (or plain direction array)."""
    directions = sample.directions if isinstance(sample, SampleMatrix) else np.asarray(sample, dtype=float)
    if directions.size == 0:
        raise ValueError("sample matrix is empty")
    return float(np.max(np.linalg.norm(directions, axis=0)))
