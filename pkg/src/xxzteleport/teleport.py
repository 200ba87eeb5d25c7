"""Standard two-qubit teleportation through two copies of the dimer channel.

Qubit basis is |00>, |01>, |10>, |11> with |0> identified with spin up, so
the channel X state is used in the same basis as the dimer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import XStateDensity

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)

_R = 1.0 / math.sqrt(2.0)
PHI_PLUS = np.array([_R, 0, 0, _R], dtype=complex)
PHI_MINUS = np.array([_R, 0, 0, -_R], dtype=complex)
PSI_PLUS = np.array([0, _R, _R, 0], dtype=complex)
PSI_MINUS = np.array([0, _R, -_R, 0], dtype=complex)

# Bell projector E^k pairs with Pauli sigma_k: (sigma_k x 1)|Psi-> ~ k-th state.
BELL_STATES = (PSI_MINUS, PHI_MINUS, PHI_PLUS, PSI_PLUS)


@dataclass(frozen=True)
class InputState:
    """Pure input cos(theta/2)|10> + exp(i phi) sin(theta/2)|01>."""

    theta: float = math.pi / 2
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise ValueError("theta and phi must be finite")
        if not 0.0 <= theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi % (2 * math.pi))

    @property
    def concurrence(self) -> float:
        return abs(math.sin(self.theta))

    def ket(self) -> np.ndarray:
        psi = np.zeros(4, dtype=complex)
        psi[2] = math.cos(self.theta / 2)
        psi[1] = np.exp(1j * self.phi) * math.sin(self.theta / 2)
        return psi


@dataclass(frozen=True)
class OutputState:
    """Teleported state: alpha on |00>,|11>; block [[a, b], [b*, d]] inside."""

    alpha: float
    a: float
    b: complex
    d: float

    @property
    def trace(self) -> float:
        return 2.0 * self.alpha + self.a + self.d

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.alpha, 0, 0, 0],
                [0, self.a, self.b, 0],
                [0, np.conj(self.b), self.d, 0],
                [0, 0, 0, self.alpha],
            ],
            dtype=complex,
        )

    def eigenvalues(self) -> np.ndarray:
        mean = 0.5 * (self.a + self.d)
        r = math.sqrt(0.25 * (self.a - self.d) ** 2 + abs(self.b) ** 2)
        return np.array([self.alpha, self.alpha, mean + r, mean - r])


@dataclass(frozen=True)
class BellProbabilities:
    """Bell populations of the channel, ordered Psi-, Phi-, Phi+, Psi+."""

    p0: float
    p1: float
    p2: float
    p3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.p0, self.p1, self.p2, self.p3])


def input_density(state: InputState) -> tuple[np.ndarray, float]:
    psi = state.ket()
    return np.outer(psi, psi.conj()), state.concurrence


def bell_probabilities(rho: XStateDensity) -> BellProbabilities:
    rho.require_normalized()
    aligned = 0.5 * rho.outer
    return BellProbabilities(rho.r22 - rho.r23, aligned, aligned, rho.r22 + rho.r23)


def bell_probabilities_trace(rho_ch: np.ndarray) -> BellProbabilities:
    """Bell populations tr[E^k rho] from an arbitrary 4x4 density matrix."""
    p = [float(np.real(np.vdot(v, rho_ch @ v))) for v in BELL_STATES]
    return BellProbabilities(*p)


def teleport_closed_form(rho_ch: XStateDensity, state: InputState) -> OutputState:
    rho_ch.require_normalized()
    s2 = rho_ch.outer ** 2
    q2 = 4.0 * rho_ch.r22 ** 2
    c2 = math.cos(state.theta / 2) ** 2
    sn2 = math.sin(state.theta / 2) ** 2
    return OutputState(
        alpha=2.0 * rho_ch.r22 * rho_ch.outer,
        a=s2 * c2 + q2 * sn2,
        b=2.0 * np.exp(1j * state.phi) * rho_ch.r23 ** 2 * math.sin(state.theta),
        d=q2 * c2 + s2 * sn2,
    )


def teleport_depolarizing_sum(rho_ch: XStateDensity, rho_in: np.ndarray) -> np.ndarray:
    """Output state as the 16-term Pauli mixture weighted by p_i p_j.

    Bell populations come from tr[E^k rho_ch] on the full matrix rather than
    the X-form shortcut, keeping this path independent of the closed form.
    """
    rho_ch.require_normalized()
    p = bell_probabilities_trace(rho_ch.matrix()).as_array()
    rho_in = np.asarray(rho_in, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for i, si in enumerate(PAULIS):
        for j, sj in enumerate(PAULIS):
            if p[i] == 0.0 or p[j] == 0.0:
                continue
            u = np.kron(si, sj)
            out += p[i] * p[j] * (u @ rho_in @ u.conj().T)
    return out
