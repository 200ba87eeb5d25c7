"""Entanglement and fidelity figures of merit for the teleportation channel."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .channel import XStateDensity
from .teleport import InputState, OutputState

CLASSICAL_BOUND = 2.0 / 3.0


@dataclass(frozen=True)
class MeasureSet:
    c_in: float
    c_ch: float
    c_out: float
    fidelity: float
    f_avg: float

    @property
    def quantum(self) -> bool:
        return classical_bound_exceeded(self.f_avg)

    def as_dict(self) -> dict:
        return asdict(self)


def output_concurrence_margin(rho_ch: XStateDensity, c_in: float) -> float:
    """Signed quantity whose positive part, doubled, is the output concurrence."""
    return 2.0 * rho_ch.r23 ** 2 * c_in - 2.0 * rho_ch.r22 * rho_ch.outer


def output_concurrence(rho_ch: XStateDensity, c_in: float) -> float:
    rho_ch.require_normalized()
    return 2.0 * max(output_concurrence_margin(rho_ch, c_in), 0.0)


def channel_concurrence_margin(rho_ch: XStateDensity) -> float:
    return abs(rho_ch.r23) - math.sqrt(max(rho_ch.r11 * rho_ch.r44, 0.0))


def channel_concurrence(rho_ch: XStateDensity) -> float:
    """Wootters concurrence of the X-form channel: 2 max(|r23| - sqrt(r11 r44), 0)."""
    rho_ch.require_normalized()
    return 2.0 * max(channel_concurrence_margin(rho_ch), 0.0)


def wootters_eigenvalues(out: OutputState) -> tuple[float, float, float, float]:
    """Eigenvalues of rho (sy x sy) rho* (sy x sy) for the output X state."""
    root_ad = math.sqrt(max(out.a * out.d, 0.0))
    mod_b = abs(out.b)
    return ((root_ad + mod_b) ** 2, (root_ad - mod_b) ** 2, out.alpha ** 2, out.alpha ** 2)


def concurrence_from_eigenvalues(lams) -> float:
    roots = np.sqrt(np.clip(np.sort(np.asarray(lams, dtype=float))[::-1], 0.0, None))
    return float(max(roots[0] - roots[1] - roots[2] - roots[3], 0.0))


def fidelity(rho_ch: XStateDensity, theta: float) -> float:
    rho_ch.require_normalized()
    bracket = rho_ch.outer ** 2 + 4.0 * rho_ch.r23 ** 2 - 4.0 * rho_ch.r22 ** 2
    return 0.5 * math.sin(theta) ** 2 * bracket + 4.0 * rho_ch.r22 ** 2


def average_fidelity(rho_ch: XStateDensity) -> float:
    rho_ch.require_normalized()
    bracket = rho_ch.outer ** 2 + 4.0 * rho_ch.r23 ** 2 - 4.0 * rho_ch.r22 ** 2
    return bracket / 3.0 + 4.0 * rho_ch.r22 ** 2


def classical_bound_exceeded(f_avg: float) -> bool:
    return f_avg > CLASSICAL_BOUND


def measure_set(rho_ch: XStateDensity, state: InputState) -> MeasureSet:
    c_in = state.concurrence
    return MeasureSet(
        c_in=c_in,
        c_ch=channel_concurrence(rho_ch),
        c_out=output_concurrence(rho_ch, c_in),
        fidelity=fidelity(rho_ch, state.theta),
        f_avg=average_fidelity(rho_ch),
    )
