"""Experiment harness: worked-example reproduction and convergence tables.

``reproduce`` recomputes a small set of known-answer cases and reports
computed-versus-expected at fixed tolerances. ``convergence`` runs a
schedule of sample densities for one field on one region and emits a
versioned CSV with, per row, the finite-sample gradient error, the
classical bound, the mirrored-structure bound where the sample has one
(ball grids with an even azimuthal count), the N-independent limit bound,
and the limit-estimate error. Rows are deterministic for a fixed seed.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .bounds import centered_bound, classical_bound, limit_bound_ball, limit_bound_box
from .fields import FieldEntry, get_field
from .gsg import simplex_gradient
from .limits import limit_gradient_ball, limit_gradient_box
from .quadrature import QuadratureSpec
from .regions import (
    BallRegion,
    HyperrectRegion,
    SampleMatrix,
    ball_grid_sample,
    rect_arbitrary_sample,
    rect_grid_sample,
    sample_radius,
)

__all__ = [
    "Check",
    "ReproduceReport",
    "ExperimentConfig",
    "ConvergenceRow",
    "ConvergenceResult",
    "REPRODUCE_IDS",
    "reproduce",
    "convergence",
    "antipodal_half",
]

CSV_SCHEMA = "convergence-v1"

# slack for comparisons between a floating-point error and a zero bound
DOMINATION_SLACK = 1e-9


@dataclass(frozen=True)
class Check:
    name: str
    computed: np.ndarray
    expected: np.ndarray
    tol: float
    deviation: float
    passed: bool


@dataclass(frozen=True)
class ReproduceReport:
    example_id: str
    checks: list[Check]
    artifacts: dict = dataclass_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            out.append(
                f"{self.example_id} :: {c.name}: computed={np.array2string(np.atleast_1d(c.computed), precision=10)} "
                f"expected={np.array2string(np.atleast_1d(c.expected), precision=10)} "
                f"max_dev={c.deviation:.3e} tol={c.tol:.1e} {status}"
            )
        return out


def _check(name: str, computed, expected, tol: float) -> Check:
    computed = np.asarray(computed, dtype=float)
    expected = np.asarray(expected, dtype=float)
    dev = float(np.max(np.abs(computed - expected)))
    return Check(name, computed, expected, tol, dev, dev <= tol)


def _reproduce_rect_grid_matrix() -> ReproduceReport:
    region = HyperrectRegion(x0=(0.0, 0.0), d=(12.0, 6.0), counts=(3, 2))
    sample = rect_grid_sample(region)
    expected = np.array([[4, 8, 12, 4, 8, 12], [3, 3, 3, 6, 6, 6]], dtype=float)
    return ReproduceReport(
        "rect-grid-matrix",
        [_check("direction matrix", sample.directions, expected, 1e-12)],
        artifacts={"rect-grid-matrix.csv": sample.to_csv()},
    )


def _reproduce_rect_arbitrary_matrix() -> ReproduceReport:
    region = HyperrectRegion(x0=(0.0, 0.0), d=(12.0, 6.0), counts=(3, 2))
    offsets = np.array(
        [
            [0.5, 0.75, 1.0, 1.0, 0.5, 0.0],
            [1.0 / 3.0, 2.0 / 3.0, 0.0, 1.0, 0.5, 0.0],
        ]
    )
    sample = rect_arbitrary_sample(region, offsets=offsets)
    expected = np.array([[2, 5, 8, 0, 6, 12], [2, 1, 3, 3, 4.5, 6]], dtype=float)
    return ReproduceReport(
        "rect-arbitrary-matrix",
        [_check("direction matrix", sample.directions, expected, 1e-12)],
        artifacts={"rect-arbitrary-matrix.csv": sample.to_csv()},
    )


def _reproduce_ball_grid_matrix() -> ReproduceReport:
    region = BallRegion(x0=(0.0, 0.0), r=30.0, counts=(3, 4))
    sample = ball_grid_sample(region)
    expected = np.array(
        [
            [0, -10, 0, 10, 0, -20, 0, 20, 0, -30, 0, 30],
            [10, 0, -10, 0, 20, 0, -20, 0, 30, 0, -30, 0],
        ],
        dtype=float,
    )
    return ReproduceReport(
        "ball-grid-matrix",
        [_check("direction matrix", sample.directions, expected, 1e-9)],
        artifacts={"ball-grid-matrix.csv": sample.to_csv()},
    )


def _reproduce_rect_limit_quadratic() -> ReproduceReport:
    entry = get_field("quad2")
    x0 = np.array(entry.anchor)
    result = limit_gradient_box(entry.field, x0, (1.0, 1.0), QuadratureSpec(64))
    expected = np.array([47.0 / 7.0, 19.0 / 7.0])
    err = float(np.linalg.norm(result.estimate - entry.field.gradient(x0)))
    return ReproduceReport(
        "rect-limit-quadratic",
        [
            _check("limit estimate", result.estimate, expected, 1e-6),
            _check("limit error", err, 5.0 * math.sqrt(2.0) / 7.0, 1e-6),
        ],
    )


def _reproduce_ball_limit_quadratic() -> ReproduceReport:
    entry = get_field("quad2")
    x0 = np.array(entry.anchor)
    result = limit_gradient_ball(entry.field, x0, 1.0, QuadratureSpec(64))
    return ReproduceReport(
        "ball-limit-quadratic",
        [_check("limit estimate", result.estimate, np.array([6.0, 2.0]), 1e-8)],
    )


_REPRODUCERS = {
    "rect-grid-matrix": _reproduce_rect_grid_matrix,
    "rect-arbitrary-matrix": _reproduce_rect_arbitrary_matrix,
    "ball-grid-matrix": _reproduce_ball_grid_matrix,
    "rect-limit-quadratic": _reproduce_rect_limit_quadratic,
    "ball-limit-quadratic": _reproduce_ball_limit_quadratic,
}

REPRODUCE_IDS = tuple(sorted(_REPRODUCERS))


def reproduce(example_id: str) -> ReproduceReport:
    """Recompute one known-answer example and compare against its expected value."""
    try:
        maker = _REPRODUCERS[example_id]
    except KeyError:
        raise KeyError(f"unknown example id {example_id!r}; known ids: {list(REPRODUCE_IDS)}") from None
    return maker()


@dataclass(frozen=True)
class ExperimentConfig:
    """One convergence run: a field, a region, and a schedule of densities."""

    field_id: str
    region: str  # "rect" | "ball"
    schedule: tuple[tuple[int, ...], ...]
    x0: tuple[float, ...] | None = None
    sides: tuple[float, ...] = (1.0, 1.0)
    radius: float = 1.0
    sample: str = "grid"  # rect only: "grid" | "arbitrary"
    nodes: int = 64
    seed: int = 0

    def __post_init__(self):
        if self.region not in ("rect", "ball"):
            raise ValueError("region must be 'rect' or 'ball'")
        if self.sample not in ("grid", "arbitrary"):
            raise ValueError("sample must be 'grid' or 'arbitrary'")
        if self.region == "ball" and self.sample != "grid":
            raise ValueError("ball runs support only grid sampling")
        if not self.schedule:
            raise ValueError("schedule must be nonempty")
        get_field(self.field_id)  # raises for unknown ids


@dataclass(frozen=True)
class ConvergenceRow:
    index: int
    counts: tuple[int, ...]
    n_samples: int
    radius: float
    gsg_error: float
    classical_bound: float
    centered_bound: float | None
    limit_bound: float
    limit_error: float


@dataclass(frozen=True)
class ConvergenceResult:
    config: ExperimentConfig
    rows: list[ConvergenceRow]

    def dominated(self, slack: float = DOMINATION_SLACK) -> bool:
        """True when every row's error sits at or below its bounds."""
        for row in self.rows:
            if row.gsg_error > row.classical_bound + slack:
                return False
            if row.centered_bound is not None and row.gsg_error > row.centered_bound + slack:
                return False
            if row.limit_error > row.limit_bound + slack:
                return False
        return True

    def to_csv(self) -> str:
        cfg = self.config
        buf = io.StringIO()
        buf.write(f"schema,{CSV_SCHEMA}\n")
        buf.write(f"field,{cfg.field_id}\n")
        buf.write(f"region,{cfg.region}\n")
        x0 = cfg.x0 if cfg.x0 is not None else get_field(cfg.field_id).anchor
        buf.write("x0," + ";".join(repr(float(v)) for v in x0) + "\n")
        if cfg.region == "rect":
            buf.write("sides," + ";".join(repr(float(v)) for v in cfg.sides) + "\n")
        else:
            buf.write(f"radius,{repr(float(cfg.radius))}\n")
        buf.write(f"sample,{cfg.sample}\n")
        buf.write(f"nodes,{cfg.nodes}\n")
        buf.write(f"seed,{cfg.seed}\n")
        buf.write("row,counts,n_samples,radius,gsg_error,classical_bound,centered_bound,limit_bound,limit_error\n")
        for row in self.rows:
            counts = "x".join(str(c) for c in row.counts)
            centered = "" if row.centered_bound is None else repr(float(row.centered_bound))
            buf.write(
                f"{row.index},{counts},{row.n_samples},{repr(float(row.radius))},"
                f"{repr(float(row.gsg_error))},{repr(float(row.classical_bound))},"
                f"{centered},{repr(float(row.limit_bound))},{repr(float(row.limit_error))}\n"
            )
        return buf.getvalue()


def antipodal_half(sample: SampleMatrix) -> np.ndarray:
    """Half matrix A with the full planar ball grid equal to [A, -A] up to order.

    Requires a 2-d ball grid with an even azimuthal count: the column at
    azimuthal index y2 + N2/2 is the negation of the one at y2.
    """
    if sample.tag != "ball-grid" or sample.dim != 2:
        raise ValueError("mirrored structure is only extracted from 2-d ball grids")
    n2 = sample.region.counts[1]
    if n2 % 2 != 0:
        raise ValueError("azimuthal count must be even for the mirrored split")
    keep = sample.indices[:, 1] <= n2 // 2
    return sample.directions[:, keep]


def _resolve(config: ExperimentConfig) -> tuple[FieldEntry, np.ndarray]:
    entry = get_field(config.field_id)
    x0 = np.array(config.x0 if config.x0 is not None else entry.anchor, dtype=float)
    if x0.size != entry.field.dim:
        raise ValueError("x0 dimension does not match the field")
    return entry, x0


def convergence(config: ExperimentConfig) -> ConvergenceResult:
    """Run the schedule and collect one row per sample density."""
    entry, x0 = _resolve(config)
    field = entry.field
    spec = QuadratureSpec(config.nodes)
    true_grad = field.gradient(x0)

    if config.region == "rect":
        d = np.asarray(config.sides, dtype=float)
        limit = limit_gradient_box(field, x0, d, spec)
        grid_radius = float(np.linalg.norm(d))
        grad_lip = entry.grad_lipschitz_on(x0, grid_radius)
        limit_bound = limit_bound_box(d, grad_lip)
    else:
        limit = limit_gradient_ball(field, x0, config.radius, spec)
        grad_lip = entry.grad_lipschitz_on(x0, config.radius)
        hess_lip = entry.hess_lipschitz_on(x0, config.radius)
        limit_bound = limit_bound_ball(field.dim, config.radius, hess_lip)
    limit_error = float(np.linalg.norm(limit.estimate - true_grad))

    rows: list[ConvergenceRow] = []
    for i, counts in enumerate(config.schedule):
        if config.region == "rect":
            region = HyperrectRegion(x0=tuple(x0), d=tuple(config.sides), counts=counts)
            if config.sample == "grid":
                sample = rect_grid_sample(region)
            else:
                # one deterministic offset stream per schedule row
                sample = rect_arbitrary_sample(region, seed=[config.seed, i])
            centered = None
        else:
            region = BallRegion(x0=tuple(x0), r=config.radius, counts=counts)
            sample = ball_grid_sample(region)
            if counts[1] % 2 == 0:
                half = antipodal_half(sample)
                centered = centered_bound(half, hess_lip, radius=sample_radius(sample)).value
            else:
                centered = None
        est = simplex_gradient(field, x0, sample)
        classical = classical_bound(sample, grad_lip)
        rows.append(
            ConvergenceRow(
                index=i,
                counts=tuple(counts),
                n_samples=sample.n_columns,
                radius=est.radius,
                gsg_error=float(est.error),
                classical_bound=classical.value,
                centered_bound=centered,
                limit_bound=limit_bound.value,
                limit_error=limit_error,
            )
        )
    return ConvergenceResult(config=config, rows=rows)
