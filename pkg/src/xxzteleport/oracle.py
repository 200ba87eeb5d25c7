"""Brute-force cross-checks for the closed forms.

These routines deliberately take the long way round: finite periodic rings
instead of the infinite-chain limit, full 4x4 eigen-decompositions instead
of X-state shortcuts, and numerical quadrature over the input sphere.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .channel import XStateDensity, local_dimer_operator
from .measures import fidelity
from .model import (
    IsingPair,
    ModelParams,
    boltzmann_weight,
    check_temperature,
    global_min_energy,
)
from .teleport import SIGMA_Y

MAX_RING_CELLS = 24
MAX_ENUMERATION_CELLS = 10
NEGATIVE_EIGENVALUE_SLACK = 1e-10

_SPINS = (0.5, -0.5)
_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class RingSpec:
    n_cells: int

    def __post_init__(self):
        n = self.n_cells
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise TypeError("n_cells must be an integer")
        if not 2 <= n <= MAX_RING_CELLS:
            raise ValueError(f"n_cells must lie in [2, {MAX_RING_CELLS}], got {n}")


def _ring_ingredients(params: ModelParams, T: float):
    beta = 1.0 / check_temperature(T)
    ref = global_min_energy(params)
    W = np.empty((2, 2))
    local = {}
    for i, mu in enumerate(_SPINS):
        for j, nu in enumerate(_SPINS):
            pair = IsingPair(mu, nu)
            W[i, j] = boltzmann_weight(params, beta, pair, reference=ref)
            local[i, j] = local_dimer_operator(params, beta, pair, reference=ref).as_array()
    return W, local


def finite_ring_channel_density(params: ModelParams, T: float, ring: RingSpec) -> XStateDensity:
    """Reduced density operator of one dimer on a periodic ring of N cells.

    rho(N) = sum_{mu1, mu2} rho_loc(mu1, mu2) [W^(N-1)]_{mu2, mu1} / tr W^N.
    """
    W, local = _ring_ingredients(params, T)
    n = ring.n_cells
    rest = np.linalg.matrix_power(W, n - 1)
    Z = np.trace(rest @ W)
    acc = np.zeros(4)
    for (i, j), elems in local.items():
        acc += elems * rest[j, i]
    return XStateDensity.from_array(acc / Z)


def finite_ring_enumeration(params: ModelParams, T: float, ring: RingSpec) -> XStateDensity:
    """Same reduced state by explicit sum over all 2^N Ising configurations."""
    n = ring.n_cells
    if n > MAX_ENUMERATION_CELLS:
        raise ValueError(f"enumeration is capped at {MAX_ENUMERATION_CELLS} cells")
    W, local = _ring_ingredients(params, T)
    Z = 0.0
    acc = np.zeros(4)
    for config in itertools.product((0, 1), repeat=n):
        rest = 1.0
        for k in range(1, n):
            rest *= W[config[k], config[(k + 1) % n]]
        Z += rest * W[config[0], config[1]]
        acc += rest * local[config[0], config[1]]
    return XStateDensity.from_array(acc / Z)


def wootters_concurrence_general(rho: np.ndarray) -> float:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise ValueError("density matrix is not Hermitian")
    R = rho @ _YY @ rho.conj() @ _YY
    lams = np.linalg.eigvals(R).real
    if lams.min() < -NEGATIVE_EIGENVALUE_SLACK:
        raise ValueError(f"R has a negative eigenvalue {lams.min():.3e}; rho is not PSD")
    lams = np.sort(np.clip(lams, 0.0, None))[::-1]
    roots = np.sqrt(lams)
    return float(max(roots[0] - roots[1] - roots[2] - roots[3], 0.0))


def average_fidelity_quadrature(rho_ch: XStateDensity, nodes: int = 64) -> float:
    """Average of the fidelity over the input sphere by Gauss-Legendre in theta.

    The fidelity does not depend on phi, so the phi integral contributes 2 pi
    and the average reduces to (1/2) int_0^pi F(theta) sin(theta) dtheta.
    """
    x, w = np.polynomial.legendre.leggauss(nodes)
    theta = 0.5 * math.pi * (x + 1.0)
    f = np.array([fidelity(rho_ch, t) for t in theta])
    return float(0.5 * 0.5 * math.pi * np.sum(w * f * np.sin(theta)))
