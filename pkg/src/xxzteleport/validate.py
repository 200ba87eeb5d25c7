"""Seeded cross-checks of every closed form against its brute-force oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import XStateDensity, channel_density
from .measures import (
    average_fidelity,
    channel_concurrence,
    concurrence_from_eigenvalues,
    output_concurrence,
    wootters_eigenvalues,
)
from .model import ModelParams
from .oracle import (
    RingSpec,
    average_fidelity_quadrature,
    finite_ring_channel_density,
    wootters_concurrence_general,
)
from .teleport import InputState, input_density, teleport_closed_form, teleport_depolarizing_sum

# Broad ranges for the closed-form suites.
T_RANGE = (0.01, 100.0)
J1_RANGE = (-5.0, 5.0)
DELTA_RANGE = (-3.0, 5.0)
H_RANGE = (-10.0, 10.0)

# The finite ring converges like (lambda_-/lambda_+)^N, which stalls when the
# Ising spins order; the ring suite is therefore run on the contour window.
RING_T_RANGE = (0.2, 2.0)
RING_J1_RANGE = (-1.0, 1.0)
RING_DELTA_RANGE = (0.0, 3.0)
RING_H_RANGE = (-3.0, 3.0)

TOL_DEPOLARIZING = 1e-12
TOL_CONCURRENCE = 1e-10
TOL_AVERAGE_FIDELITY = 1e-8
TOL_RING = 1e-4
# Deviations at this level are roundoff; "improving with N" is not testable below it.
RING_ROUNDOFF_FLOOR = 1e-13


@dataclass(frozen=True)
class Sample:
    params: ModelParams
    T: float
    state: InputState


def draw_samples(rng: np.random.Generator, n: int) -> list[Sample]:
    """Random channel + input draws; T is log-uniform over its range."""
    out = []
    for _ in range(n):
        T = float(math.exp(rng.uniform(math.log(T_RANGE[0]), math.log(T_RANGE[1]))))
        params = ModelParams(
            J1=float(rng.uniform(*J1_RANGE)),
            Delta=float(rng.uniform(*DELTA_RANGE)),
            h=float(rng.uniform(*H_RANGE)),
        )
        state = InputState(float(rng.uniform(0.0, math.pi)), float(rng.uniform(0.0, 2 * math.pi)))
        out.append(Sample(params, T, state))
    return out


def draw_ring_samples(rng: np.random.Generator, n: int) -> list[tuple[ModelParams, float]]:
    out = []
    for _ in range(n):
        params = ModelParams(
            J1=float(rng.uniform(*RING_J1_RANGE)),
            Delta=float(rng.uniform(*RING_DELTA_RANGE)),
            h=float(rng.uniform(*RING_H_RANGE)),
        )
        out.append((params, float(rng.uniform(*RING_T_RANGE))))
    return out


def random_x_state(rng: np.random.Generator):
    """PSD, trace-one X state with equal inner diagonal and real coherence."""
    w = rng.dirichlet(np.ones(3))
    r11, r44, inner = w
    r22 = inner / 2
    r23 = float(rng.uniform(-r22, r22))
    return XStateDensity(float(r11), float(r22), r23, float(r44))


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_deviation: float
    tolerance: float
    extra: str = ""

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" {self.extra}" if self.extra else ""
        return f"{status} {self.name}: max deviation {self.max_deviation:.3e} (tol {self.tolerance:.0e}){tail}"


def depolarizing_suite(samples) -> SuiteResult:
    worst = 0.0
    for s in samples:
        rho = channel_density(s.params, s.T)
        rho_in, _ = input_density(s.state)
        closed = teleport_closed_form(rho, s.state).matrix()
        brute = teleport_depolarizing_sum(rho, rho_in)
        worst = max(worst, float(np.max(np.abs(closed - brute))))
    return SuiteResult("depolarizing sum vs closed-form output", worst, TOL_DEPOLARIZING)


def concurrence_suite(samples, x_states) -> SuiteResult:
    worst = 0.0
    for s in samples:
        rho = channel_density(s.params, s.T)
        out = teleport_closed_form(rho, s.state)
        via_eigs = concurrence_from_eigenvalues(wootters_eigenvalues(out))
        worst = max(worst, abs(via_eigs - output_concurrence(rho, s.state.concurrence)))
    for x in x_states:
        worst = max(worst, abs(channel_concurrence(x) - wootters_concurrence_general(x.matrix())))
    return SuiteResult("output concurrence vs Wootters eigenvalues; X-state vs generic", worst, TOL_CONCURRENCE)


def average_fidelity_suite(samples) -> SuiteResult:
    worst = 0.0
    for s in samples:
        rho = channel_density(s.params, s.T)
        worst = max(worst, abs(average_fidelity(rho) - average_fidelity_quadrature(rho)))
    return SuiteResult("average fidelity vs Gauss-Legendre quadrature", worst, TOL_AVERAGE_FIDELITY)


def ring_deviation(params: ModelParams, T: float, n_cells: int) -> float:
    exact = channel_density(params, T).as_array()
    ring = finite_ring_channel_density(params, T, RingSpec(n_cells)).as_array()
    return float(np.max(np.abs(ring - exact)))


def ring_improves(d_small: float, d_large: float) -> bool:
    return d_large < d_small or max(d_small, d_large) <= RING_ROUNDOFF_FLOOR


def ring_suite(points) -> SuiteResult:
    worst = 0.0
    not_improving = 0
    for params, T in points:
        d6 = ring_deviation(params, T, 6)
        d12 = ring_deviation(params, T, 12)
        worst = max(worst, d12)
        if not ring_improves(d6, d12):
            not_improving += 1
    result = SuiteResult(
        "finite ring N=12 vs thermodynamic limit",
        worst,
        TOL_RING,
        extra=f"[{not_improving} points not improving from N=6]",
    )
    if not_improving:
        return SuiteResult(result.name, math.inf, TOL_RING, result.extra)
    return result


@dataclass(frozen=True)
class ValidationReport:
    seed: int
    n_samples: int
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def text(self) -> str:
        lines = [f"validate seed={self.seed} samples={self.n_samples}"]
        lines += [s.line() for s in self.suites]
        lines.append("ALL PASS" if self.passed else "FAILURES PRESENT")
        return "\n".join(lines) + "\n"


def run_validation(seed: int, n_samples: int, ring_points: int = 20) -> ValidationReport:
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    rng = np.random.default_rng(seed)
    samples = draw_samples(rng, n_samples)
    x_states = [random_x_state(rng) for _ in range(n_samples)]
    ring_pts = draw_ring_samples(rng, ring_points)
    suites = [
        depolarizing_suite(samples),
        concurrence_suite(samples, x_states),
        average_fidelity_suite(samples),
        ring_suite(ring_pts),
    ]
    return ValidationReport(seed, n_samples, suites)
