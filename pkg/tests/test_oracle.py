import numpy as np
import pytest
from scipy.stats import unitary_group

from xxzteleport.channel import XStateDensity, channel_density, transfer_data
from xxzteleport.measures import channel_concurrence
from xxzteleport.model import ModelParams
from xxzteleport.oracle import (
    RingSpec,
    average_fidelity_quadrature,
    finite_ring_channel_density,
    finite_ring_enumeration,
    wootters_concurrence_general,
)
from xxzteleport.teleport import PHI_PLUS
from xxzteleport.validate import random_x_state, ring_deviation, ring_improves


def test_ring_spec_bounds():
    RingSpec(2)
    RingSpec(24)
    for bad in (1, 25):
        with pytest.raises(ValueError):
            RingSpec(bad)
    with pytest.raises(TypeError):
        RingSpec(3.0)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 10])
def test_matrix_power_matches_enumeration(n):
    params = ModelParams(0.8, 1.3, 0.6)
    a = finite_ring_channel_density(params, 0.4, RingSpec(n)).as_array()
    b = finite_ring_enumeration(params, 0.4, RingSpec(n)).as_array()
    np.testing.assert_allclose(a, b, atol=1e-14)


def test_enumeration_capped():
    with pytest.raises(ValueError):
        finite_ring_enumeration(ModelParams(1, 1, 0), 1.0, RingSpec(11))


@pytest.mark.parametrize("n", [2, 7, 16])
def test_ring_infinite_temperature(n):
    rho = finite_ring_channel_density(ModelParams(1, 1.5, 1), 1e12, RingSpec(n))
    np.testing.assert_allclose(rho.as_array(), [0.25, 0.25, 0, 0.25], atol=1e-10)


def test_ring_n12_beats_n2():
    rng = np.random.default_rng(21)
    checked = 0
    for _ in range(200):
        params = ModelParams(rng.uniform(-2, 2), rng.uniform(-1, 3), rng.uniform(-3, 3))
        T = float(rng.uniform(0.1, 3))
        d2, d12 = ring_deviation(params, T, 2), ring_deviation(params, T, 12)
        assert ring_improves(d2, d12)
        checked += d2 > 1e-13
    assert checked > 150


def test_ring_geometric_rate():
    # deviation ~ (lambda_-/lambda_+)^N: doubling N squares the ratio to the limit
    params, T = ModelParams(1, 1.5, 1), 0.5
    d4, d8, d16 = (ring_deviation(params, T, n) for n in (4, 8, 16))
    td = transfer_data(params, 1 / T)
    r = td.lambda_minus / td.lambda_plus
    assert d16 < d8 < d4
    assert d8 / d4 == pytest.approx(r ** 4, rel=0.05)
    assert d16 / d8 == pytest.approx(r ** 8, rel=0.05)
    # squared order: d16 ~ d8^2 up to the O(1) prefactor
    assert d16 < 5 * d8 ** 2


def test_wootters_bell_and_mixed():
    assert wootters_concurrence_general(np.outer(PHI_PLUS, PHI_PLUS.conj())) == pytest.approx(1.0)
    assert wootters_concurrence_general(np.eye(4) / 4) == 0.0


def test_wootters_rejects_non_hermitian():
    m = np.eye(4) / 4
    m[0, 1] = 0.1
    with pytest.raises(ValueError):
        wootters_concurrence_general(m)


def test_wootters_x_state_shortcut():
    rng = np.random.default_rng(31)
    for _ in range(1000):
        x = random_x_state(rng)
        assert channel_concurrence(x) == pytest.approx(wootters_concurrence_general(x.matrix()), abs=1e-10)


def test_wootters_local_unitary_invariance():
    rng = np.random.default_rng(41)
    for _ in range(200):
        x = random_x_state(rng)
        u = np.kron(unitary_group.rvs(2, random_state=rng), unitary_group.rvs(2, random_state=rng))
        rotated = u @ x.matrix() @ u.conj().T
        rotated = 0.5 * (rotated + rotated.conj().T)
        assert wootters_concurrence_general(rotated) == pytest.approx(
            wootters_concurrence_general(x.matrix()), abs=1e-9
        )


def test_quadrature_limits():
    assert average_fidelity_quadrature(XStateDensity(0, 0.5, -0.5, 0)) == pytest.approx(1.0, abs=1e-10)
    assert average_fidelity_quadrature(XStateDensity(0.25, 0.25, 0, 0.25)) == pytest.approx(0.25, abs=1e-10)


def test_quadrature_node_independence():
    rng = np.random.default_rng(51)
    for _ in range(100):
        rho = channel_density(ModelParams(*rng.uniform(-3, 3, 3)), float(rng.uniform(0.05, 5)))
        assert average_fidelity_quadrature(rho, 64) == pytest.approx(
            average_fidelity_quadrature(rho, 128), abs=1e-12
        )
