"""Thermal dimer density operator of the infinite diamond chain.

The nodal Ising spins are traced out with a 2x2 transfer matrix whose
entries are the dimer Boltzmann weights.  Every weight and local-operator
element is formed relative to one reference energy (the lowest dimer level
over all Ising sectors) so the ratios that build the channel state stay
finite down to very low temperature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    DOWN_DOWN,
    UP_DOWN,
    UP_UP,
    IsingPair,
    ModelParams,
    check_beta,
    check_temperature,
    dimer_energies,
    global_min_energy,
)

_DEGENERATE_ROOT = 1e-300


@dataclass(frozen=True)
class XStateDensity:
    """Two-qubit X state with rho33 = rho22 and real rho23 = rho32.

    Only the diagonal and the inner anti-diagonal pair are nonzero.  The
    ``normalized`` flag separates unnormalized local dimer operators from
    trace-one channel states.
    """

    r11: float
    r22: float
    r23: float
    r44: float
    normalized: bool = True

    @property
    def trace(self) -> float:
        return self.r11 + 2.0 * self.r22 + self.r44

    @property
    def outer(self) -> float:
        """r11 + r44, the weight of the aligned configurations."""
        return self.r11 + self.r44

    def eigenvalues(self) -> np.ndarray:
        return np.array(
            [self.r11, self.r44, self.r22 + self.r23, self.r22 - self.r23]
        )

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.r11, 0.0, 0.0, 0.0],
                [0.0, self.r22, self.r23, 0.0],
                [0.0, self.r23, self.r22, 0.0],
                [0.0, 0.0, 0.0, self.r44],
            ]
        )

    def as_array(self) -> np.ndarray:
        return np.array([self.r11, self.r22, self.r23, self.r44])

    @classmethod
    def from_array(cls, values, normalized: bool = True) -> "XStateDensity":
        r11, r22, r23, r44 = (float(v) for v in values)
        return cls(r11, r22, r23, r44, normalized)

    def normalize(self) -> "XStateDensity":
        if self.normalized:
            raise ValueError("density is already normalized")
        t = self.trace
        return XStateDensity(self.r11 / t, self.r22 / t, self.r23 / t, self.r44 / t)

    def require_normalized(self) -> None:
        if not self.normalized:
            raise ValueError("expected a normalized (trace one) channel state")


@dataclass(frozen=True)
class TransferData:
    """Transfer-matrix weights on a shared scale.

    True weights are ``w * exp(-beta * reference)``.
    """

    w_pp: float
    w_mm: float
    w_pm: float
    lambda_plus: float
    lambda_minus: float
    root: float
    reference: float = 0.0

    def matrix(self) -> np.ndarray:
        return np.array([[self.w_pp, self.w_pm], [self.w_pm, self.w_mm]])


def _local_elements(params: ModelParams, beta: float, m: float, reference: float) -> np.ndarray:
    e = np.array(dimer_energies(params, m))
    x = np.exp(-beta * (e - reference))
    return np.array([x[0], 0.5 * (x[1] + x[2]), 0.5 * (x[1] - x[2]), x[3]])


def local_dimer_operator(
    params: ModelParams,
    beta: float,
    pair: IsingPair,
    reference: float | None = None,
) -> XStateDensity:
    """Unnormalized Boltzmann operator of one dimer with fixed Ising neighbours.

    ``reference`` is the energy given unit weight; it defaults to the lowest
    dimer level over all Ising sectors.  The trace equals the Boltzmann
    weight on the same scale.
    """
    beta = check_beta(beta)
    if reference is None:
        reference = global_min_energy(params)
    return XStateDensity.from_array(
        _local_elements(params, beta, pair.total, reference), normalized=False
    )


def transfer_data(params: ModelParams, beta: float, reference: float | None = None) -> TransferData:
    beta = check_beta(beta)
    if reference is None:
        reference = global_min_energy(params)
    w_pp = float(np.exp(-beta * (np.array(dimer_energies(params, 1.0)) - reference)).sum())
    w_mm = float(np.exp(-beta * (np.array(dimer_energies(params, -1.0)) - reference)).sum())
    w_pm = float(np.exp(-beta * (np.array(dimer_energies(params, 0.0)) - reference)).sum())
    root = math.hypot(w_pp - w_mm, 2.0 * w_pm)
    return TransferData(
        w_pp=w_pp,
        w_mm=w_mm,
        w_pm=w_pm,
        lambda_plus=0.5 * (w_pp + w_mm + root),
        lambda_minus=0.5 * (w_pp + w_mm - root),
        root=root,
        reference=reference,
    )


def channel_density(params: ModelParams, T: float) -> XStateDensity:
    """Thermodynamic-limit density operator of one dimer at temperature T."""
    T = check_temperature(T)
    beta = 1.0 / T
    reference = global_min_energy(params)
    td = transfer_data(params, beta, reference)
    rho_pp = _local_elements(params, beta, UP_UP.total, reference)
    rho_mm = _local_elements(params, beta, DOWN_DOWN.total, reference)
    rho_pm = _local_elements(params, beta, UP_DOWN.total, reference)

    avg = 0.5 * (rho_pp + rho_mm)
    if td.root < _DEGENERATE_ROOT:
        elements = avg
    else:
        elements = (
            avg
            + 2.0 * rho_pm * td.w_pm / td.root
            + (rho_pp - rho_mm) * (td.w_pp - td.w_mm) / (2.0 * td.root)
        )
    return XStateDensity.from_array(elements / td.lambda_plus)
