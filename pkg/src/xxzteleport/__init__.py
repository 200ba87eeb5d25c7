"""Two-qubit teleportation through thermal XXZ dimers of an Ising-XXZ diamond chain."""

from .channel import TransferData, XStateDensity, channel_density, local_dimer_operator, transfer_data
from .measures import (
    CLASSICAL_BOUND,
    MeasureSet,
    average_fidelity,
    channel_concurrence,
    classical_bound_exceeded,
    fidelity,
    measure_set,
    output_concurrence,
    wootters_eigenvalues,
)
from .model import (
    DimerSpectrum,
    DomainError,
    IsingPair,
    ModelParams,
    boltzmann_weight,
    dimer_spectrum,
    heisenberg_block,
)
from .teleport import (
    BellProbabilities,
    InputState,
    OutputState,
    bell_probabilities,
    input_density,
    teleport_closed_form,
    teleport_depolarizing_sum,
)

__version__ = "0.1.0"
