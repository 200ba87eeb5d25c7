"""Single points, parameter grids, thresholds and contours as CSV rows."""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, field

import numpy as np
from scipy.optimize import bisect

from .channel import channel_density
from .measures import (
    CLASSICAL_BOUND,
    average_fidelity,
    channel_concurrence_margin,
    measure_set,
    output_concurrence_margin,
)
from .model import DomainError, ModelParams
from .teleport import InputState

AXIS_NAMES = ("T", "h", "J1", "Delta", "theta", "phi")
PARAM_NAMES = ("J1", "Delta", "h", "T", "theta", "phi")
ANGLE_DEFAULTS = {"theta": math.pi / 2, "phi": 0.0}

CSV_COLUMNS = ("J1", "Delta", "h", "T", "theta", "phi", "C_in", "C_ch", "C_out", "F", "F_A", "quantum")

THRESHOLD_QUANTITIES = ("c_out_zero", "c_ch_zero", "f_avg_two_thirds")
THRESHOLD_SCANS = ("T", "h")
THRESHOLD_XTOL = 1e-6


class SpecError(ValueError):
    """A sweep, threshold or contour request is malformed."""


class NoSignChangeError(ValueError):
    """The defining function has the same sign at both bracket ends."""


def format_value(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class ResultRow:
    J1: float
    Delta: float
    h: float
    T: float
    theta: float
    phi: float
    C_in: float
    C_ch: float
    C_out: float
    F: float
    F_A: float
    quantum: bool

    def csv_fields(self) -> list[str]:
        values = astuple(self)
        return [format_value(v) for v in values[:-1]] + [str(int(self.quantum))]


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise SpecError(f"unknown axis {self.name!r}; choose from {', '.join(AXIS_NAMES)}")
        if self.count == 1 and self.start == self.stop:
            return
        if self.count < 2:
            raise SpecError(f"axis {self.name}: count must be >= 2, got {self.count}")
        if not self.start < self.stop:
            raise SpecError(f"axis {self.name}: start must be below stop")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """Grid over one or two parameters; every other parameter is fixed.

    Missing angles default to a maximally entangled input (theta = pi/2,
    phi = 0).
    """

    axis1: Axis
    axis2: Axis | None = None
    fixed: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        axes = [self.axis1.name] + ([self.axis2.name] if self.axis2 else [])
        if len(set(axes)) != len(axes):
            raise SpecError("axis1 and axis2 must differ")
        fixed = {**ANGLE_DEFAULTS, **{k: float(v) for k, v in self.fixed.items()}}
        for k in fixed:
            if k not in PARAM_NAMES:
                raise SpecError(f"unknown fixed parameter {k!r}")
        clash = set(axes) & {k for k in self.fixed}
        if clash:
            raise SpecError(f"parameters {sorted(clash)} are both swept and fixed")
        for name in axes:
            fixed.pop(name, None)
        missing = [k for k in PARAM_NAMES if k not in fixed and k not in axes]
        if missing:
            raise SpecError(f"missing values for {', '.join(missing)}")
        object.__setattr__(self, "fixed", fixed)

    def grid(self) -> list[dict[str, float]]:
        """Parameter dictionaries in row-major order (axis1 outer)."""
        points = []
        for v1 in self.axis1.values():
            if self.axis2 is None:
                points.append({**self.fixed, self.axis1.name: float(v1)})
                continue
            for v2 in self.axis2.values():
                points.append({**self.fixed, self.axis1.name: float(v1), self.axis2.name: float(v2)})
        return points


def _params_of(values: Mapping[str, float]) -> tuple[ModelParams, float, InputState]:
    params = ModelParams(J1=values["J1"], Delta=values["Delta"], h=values["h"])
    state = InputState(theta=values.get("theta", ANGLE_DEFAULTS["theta"]), phi=values.get("phi", 0.0))
    return params, values["T"], state


def point(params: ModelParams, T: float, theta: float = math.pi / 2, phi: float = 0.0) -> ResultRow:
    state = InputState(theta, phi)
    rho = channel_density(params, T)
    m = measure_set(rho, state)
    return ResultRow(
        J1=params.J1,
        Delta=params.Delta,
        h=params.h,
        T=float(T),
        theta=state.theta,
        phi=state.phi,
        C_in=m.c_in,
        C_ch=m.c_ch,
        C_out=m.c_out,
        F=m.fidelity,
        F_A=m.f_avg,
        quantum=m.quantum,
    )


def _point_from_values(values: Mapping[str, float]) -> ResultRow:
    params, T, state = _params_of(values)
    return point(params, T, state.theta, state.phi)


def sweep(spec: SweepSpec, jobs: int = 1) -> list[ResultRow]:
    """Evaluate every grid point; row order never depends on ``jobs``."""
    grid = spec.grid()
    if jobs <= 1 or len(grid) < 2:
        return [_point_from_values(v) for v in grid]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_point_from_values, grid, chunksize=max(1, len(grid) // (4 * jobs))))


def write_csv(rows: Iterable[ResultRow], stream) -> None:
    stream.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        stream.write(",".join(row.csv_fields()) + "\n")


def read_csv(stream) -> list[dict[str, float]]:
    header = stream.readline().strip().split(",")
    rows = []
    for line in stream:
        line = line.strip()
        if line and not line.startswith("#"):
            rows.append({k: float(v) for k, v in zip(header, line.split(","))})
    return rows


def defining_function(quantity: str, values: Mapping[str, float]) -> float:
    """Signed function whose zero marks the requested threshold."""
    params, T, state = _params_of(values)
    rho = channel_density(params, T)
    if quantity == "c_out_zero":
        return output_concurrence_margin(rho, state.concurrence)
    if quantity == "c_ch_zero":
        return channel_concurrence_margin(rho)
    if quantity == "f_avg_two_thirds":
        return average_fidelity(rho) - CLASSICAL_BOUND
    raise SpecError(f"unknown quantity {quantity!r}; choose from {', '.join(THRESHOLD_QUANTITIES)}")


def _bisect_on(fn, lo: float, hi: float, xtol: float) -> float:
    f_lo, f_hi = fn(lo), fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise NoSignChangeError(
            f"no sign change on bracket [{lo:g}, {hi:g}] (values {f_lo:.3g}, {f_hi:.3g})"
        )
    return float(bisect(fn, lo, hi, xtol=xtol))


def threshold(
    quantity: str,
    scan: str,
    fixed: Mapping[str, float],
    bracket: tuple[float, float],
    xtol: float = THRESHOLD_XTOL,
) -> float:
    """Locate where ``quantity`` reaches its threshold as ``scan`` varies.

    For a T scan the lower bracket end must be positive.  Steep features
    (such as the low-temperature collapse of the average fidelity with
    field) are still continuous, so a bracket that straddles them converges.
    """
    if quantity not in THRESHOLD_QUANTITIES:
        raise SpecError(f"unknown quantity {quantity!r}; choose from {', '.join(THRESHOLD_QUANTITIES)}")
    if scan not in THRESHOLD_SCANS:
        raise SpecError(f"threshold scan parameter must be T or h, got {scan!r}")
    lo, hi = (float(b) for b in bracket)
    if not lo < hi:
        raise SpecError("bracket must satisfy lo < hi")
    if scan == "T" and lo <= 0:
        raise DomainError("T bracket must be positive")
    values = {**ANGLE_DEFAULTS, **fixed}
    values.pop(scan, None)
    missing = [k for k in PARAM_NAMES if k not in values and k != scan]
    if missing:
        raise SpecError(f"missing values for {', '.join(missing)}")

    def fn(x: float) -> float:
        return defining_function(quantity, {**values, scan: x})

    return _bisect_on(fn, lo, hi, xtol)


@dataclass(frozen=True)
class ContourResult:
    axis1: str
    axis2: str
    points: list[tuple[float, float]]
    empty_columns: int
    columns: int


def contour(
    axis1: Axis,
    axis2: Axis,
    fixed: Mapping[str, float],
    level: float = CLASSICAL_BOUND,
    xtol: float = THRESHOLD_XTOL,
) -> ContourResult:
    """Level set of the average fidelity in a two-parameter plane.

    Each axis1 grid value is a column; the axis2 grid brackets every sign
    change of F_A - level, which is then refined by bisection.  Columns
    without a crossing are counted, not emitted.
    """
    spec = SweepSpec(axis1, axis2, fixed)
    base = dict(spec.fixed)
    points = []
    empty = 0

    for v1 in axis1.values():
        def fn(x: float, v1=float(v1)) -> float:
            params, T, _ = _params_of({**base, axis1.name: v1, axis2.name: x})
            return average_fidelity(channel_density(params, T)) - level

        grid = axis2.values()
        vals = np.array([fn(x) for x in grid])
        found = False
        for k in range(len(grid) - 1):
            a, b = vals[k], vals[k + 1]
            if a == 0.0:
                points.append((float(v1), float(grid[k])))
                found = True
            elif (a > 0) != (b > 0) and b != 0.0:
                points.append((float(v1), float(bisect(fn, grid[k], grid[k + 1], xtol=xtol))))
                found = True
        if vals[-1] == 0.0:
            points.append((float(v1), float(grid[-1])))
            found = True
        if not found:
            empty += 1
    return ContourResult(axis1.name, axis2.name, points, empty, axis1.count)


def write_contour_csv(result: ContourResult, stream) -> None:
    stream.write(f"{result.axis1},{result.axis2}\n")
    for x, y in result.points:
        stream.write(f"{format_value(x)},{format_value(y)}\n")

