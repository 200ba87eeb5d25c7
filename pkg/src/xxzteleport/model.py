"""Heisenberg XXZ dimer of the Ising-XXZ diamond chain and its exact spectrum.

The dimer block is diagonalized for fixed values of the two neighbouring
Ising spins.  Energies are in units of the Heisenberg exchange J and
k_B = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# |uu>, |ud>, |du>, |dd>
BASIS_LABELS = ("uu", "ud", "du", "dd")

_S = 1.0 / math.sqrt(2.0)
DIMER_STATES = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, _S, _S, 0.0],
        [0.0, _S, -_S, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
)

SZ_TOTAL = np.diag([1.0, 0.0, 0.0, -1.0])


class DomainError(ValueError):
    """An input lies outside the domain where the model is defined."""


def _check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def check_beta(beta: float) -> float:
    beta = _check_finite("beta", beta)
    if beta <= 0.0:
        raise DomainError(f"beta must be positive, got {beta!r}")
    return beta


def check_temperature(T: float) -> float:
    T = _check_finite("T", T)
    if T <= 0.0:
        raise DomainError(f"T must be positive, got {T!r}")
    return T


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the diamond chain, as ratios to the Heisenberg exchange.

    ``J`` defaults to 1 and every other field is measured in units of it.
    """

    J1: float
    Delta: float
    h: float
    J: float = 1.0

    def __post_init__(self):
        for name in ("J1", "Delta", "h", "J"):
            object.__setattr__(self, name, _check_finite(name, getattr(self, name)))


@dataclass(frozen=True)
class IsingPair:
    """The two nodal Ising spins bonding one dimer; each is +1/2 or -1/2."""

    mu: float
    mu_prime: float

    def __post_init__(self):
        for name in ("mu", "mu_prime"):
            value = float(getattr(self, name))
            if value not in (0.5, -0.5):
                raise DomainError(f"{name} must be +1/2 or -1/2, got {value!r}")
            object.__setattr__(self, name, value)

    @property
    def total(self) -> float:
        return self.mu + self.mu_prime


UP_UP = IsingPair(0.5, 0.5)
DOWN_DOWN = IsingPair(-0.5, -0.5)
UP_DOWN = IsingPair(0.5, -0.5)
DOWN_UP = IsingPair(-0.5, 0.5)
ISING_PAIRS = (UP_UP, UP_DOWN, DOWN_UP, DOWN_DOWN)


@dataclass(frozen=True)
class DimerSpectrum:
    energies: tuple[float, float, float, float]
    states: np.ndarray = DIMER_STATES

    @property
    def min_energy(self) -> float:
        return min(self.energies)


def heisenberg_block(params: ModelParams) -> np.ndarray:
    """XXZ exchange J (S_a . S_b)_Delta in the |uu>,|ud>,|du>,|dd> basis."""
    J, D = params.J, params.Delta
    return np.array(
        [
            [J * D / 4, 0.0, 0.0, 0.0],
            [0.0, -J * D / 4, J / 2, 0.0],
            [0.0, J / 2, -J * D / 4, 0.0],
            [0.0, 0.0, 0.0, J * D / 4],
        ]
    )


def dimer_hamiltonian(params: ModelParams, pair: IsingPair) -> np.ndarray:
    """Full 4x4 dimer Hamiltonian for fixed neighbouring Ising spins.

    The field enters as -h on the dimer magnetization and -h/2 on the
    Ising pair, which is the sign convention the closed-form energies use.
    """
    m = pair.total
    ident = np.eye(4)
    return (
        heisenberg_block(params)
        + (params.J1 * m - params.h) * SZ_TOTAL
        - 0.5 * params.h * m * ident
    )


def dimer_energies(params: ModelParams, m: float) -> tuple[float, float, float, float]:
    """Closed-form dimer energies for Ising-pair sum ``m = mu + mu'``."""
    J, J1, D, h = params.J, params.J1, params.Delta, params.h
    e1 = J * D / 4 + (J1 - h / 2) * m - h
    e2 = J / 2 - J * D / 4 - (h / 2) * m
    e3 = -J / 2 - J * D / 4 - (h / 2) * m
    e4 = J * D / 4 - (J1 + h / 2) * m + h
    return (e1, e2, e3, e4)


def dimer_spectrum(params: ModelParams, pair: IsingPair) -> DimerSpectrum:
    return DimerSpectrum(dimer_energies(params, pair.total))


def global_min_energy(params: ModelParams) -> float:
    """Lowest dimer energy over all Ising-pair sectors."""
    return min(min(dimer_energies(params, m)) for m in (1.0, 0.0, -1.0))


def boltzmann_weight(
    params: ModelParams,
    beta: float,
    pair: IsingPair,
    reference: float | None = None,
) -> float:
    """Sum of exp(-beta * e_i) over the four dimer levels.

    With ``reference`` given, the weight is returned on the scale where an
    energy equal to ``reference`` has weight one, i.e. the true weight times
    exp(beta * reference).  Ratios of weights sharing one reference are exact
    and never overflow as long as ``reference`` is at most the lowest energy
    involved.
    """
    beta = check_beta(beta)
    energies = np.array(dimer_energies(params, pair.total))
    e_min = energies.min()
    shifted = np.exp(-beta * (energies - e_min)).sum()
    if reference is None:
        return float(shifted * math.exp(-beta * e_min))
    return float(shifted * math.exp(-beta * (e_min - reference)))


def log_boltzmann_weight(params: ModelParams, beta: float, pair: IsingPair) -> float:
    beta = check_beta(beta)
    energies = np.array(dimer_energies(params, pair.total))
    e_min = energies.min()
    return float(-beta * e_min + math.log(np.exp(-beta * (energies - e_min)).sum()))
