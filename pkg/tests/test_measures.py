import math

import numpy as np
import pytest

from xxzteleport.channel import XStateDensity, channel_density
from xxzteleport.measures import (
    average_fidelity,
    channel_concurrence,
    classical_bound_exceeded,
    concurrence_from_eigenvalues,
    fidelity,
    measure_set,
    output_concurrence,
    output_concurrence_margin,
    wootters_eigenvalues,
)
from xxzteleport.model import ModelParams
from xxzteleport.oracle import average_fidelity_quadrature, wootters_concurrence_general
from xxzteleport.teleport import (
    InputState,
    OutputState,
    input_density,
    teleport_closed_form,
    teleport_depolarizing_sum,
)

SINGLET = XStateDensity(0.0, 0.5, -0.5, 0.0)
MIXED = XStateDensity(0.25, 0.25, 0.0, 0.25)


def random_channels(seed, n):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        params = ModelParams(J1=rng.uniform(-5, 5), Delta=rng.uniform(-3, 5), h=rng.uniform(-10, 10))
        T = float(np.exp(rng.uniform(np.log(0.01), np.log(100))))
        yield channel_density(params, T), rng


def test_output_concurrence_limits():
    assert output_concurrence(SINGLET, 1.0) == pytest.approx(1.0)
    for rho, _ in random_channels(1, 200):
        assert output_concurrence(rho, 0.0) == 0.0


def test_output_concurrence_threshold_strong_anisotropy():
    p = ModelParams(1, 2, 0)
    assert output_concurrence(channel_density(p, 0.55), 1.0) > 0
    assert output_concurrence(channel_density(p, 0.60), 1.0) == 0.0


def test_wootters_eigenvalues_pure_bell_output():
    out = teleport_closed_form(SINGLET, InputState(math.pi / 2, 0.0))
    lams = wootters_eigenvalues(out)
    np.testing.assert_allclose(lams, [1, 0, 0, 0], atol=1e-15)
    assert concurrence_from_eigenvalues(lams) == pytest.approx(1.0)


def test_wootters_eigenvalues_mixed_output():
    lams = wootters_eigenvalues(OutputState(0.25, 0.25, 0.0, 0.25))
    np.testing.assert_allclose(lams, [1 / 16] * 4)
    assert concurrence_from_eigenvalues(lams) == 0.0


def test_eigenvalue_route_matches_closed_form_and_generic():
    worst_closed = worst_generic = 0.0
    for rho, rng in random_channels(2, 1000):
        state = InputState(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        out = teleport_closed_form(rho, state)
        c = output_concurrence(rho, state.concurrence)
        worst_closed = max(worst_closed, abs(concurrence_from_eigenvalues(wootters_eigenvalues(out)) - c))
        # the eigenvalues themselves agree with the generic R matrix spectrum
        brute = teleport_depolarizing_sum(rho, input_density(state)[0])
        worst_generic = max(worst_generic, abs(wootters_concurrence_general(brute) - c))
    assert worst_closed <= 1e-10
    assert worst_generic <= 1e-7


def test_channel_concurrence_limits():
    assert channel_concurrence(SINGLET) == pytest.approx(1.0)
    assert channel_concurrence(channel_density(ModelParams(1, 1.5, 0), 1e6)) == pytest.approx(0.0, abs=1e-12)


def test_channel_concurrence_threshold_zero_field():
    p = ModelParams(1, 1.1, 0)
    assert channel_concurrence(channel_density(p, 0.72)) > 0
    assert channel_concurrence(channel_density(p, 0.76)) == 0.0


def test_channel_concurrence_matches_generic_oracle():
    # near-pure channels put an R eigenvalue at ~0, where float64 eigvals
    # only resolves its square root to ~1e-9
    for rho, _ in random_channels(3, 1000):
        tol = 1e-10 if rho.eigenvalues().min() >= 1e-6 else 1e-8
        assert channel_concurrence(rho) == pytest.approx(wootters_concurrence_general(rho.matrix()), abs=tol)


def test_fidelity_limits():
    for theta in np.linspace(0, math.pi, 7):
        assert fidelity(SINGLET, theta) == pytest.approx(1.0)
        assert fidelity(MIXED, theta) == pytest.approx(0.25)


def test_fidelity_matches_expectation_value():
    for rho, rng in random_channels(4, 1000):
        state = InputState(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        rho_in, _ = input_density(state)
        psi = state.ket()
        brute = teleport_depolarizing_sum(rho, rho_in)
        expect = np.vdot(psi, brute @ psi).real
        assert fidelity(rho, state.theta) == pytest.approx(expect, abs=1e-12)


def test_average_fidelity_limits():
    assert average_fidelity(SINGLET) == pytest.approx(1.0)
    assert average_fidelity(channel_density(ModelParams(1, 2, 0), 1e6)) == pytest.approx(0.25, abs=1e-6)
    # spin-polarized channel
    assert average_fidelity(XStateDensity(1.0, 0.0, 0.0, 0.0)) == pytest.approx(1 / 3)
    assert average_fidelity(channel_density(ModelParams(1, 1.1, 50), 0.01)) == pytest.approx(1 / 3, abs=1e-12)


def test_average_fidelity_matches_quadrature():
    for rho, _ in random_channels(5, 1000):
        assert average_fidelity(rho) == pytest.approx(average_fidelity_quadrature(rho), abs=1e-8)


def test_average_fidelity_identity():
    for rho, _ in random_channels(6, 500):
        f0, f90 = fidelity(rho, 0.0), fidelity(rho, math.pi / 2)
        assert f0 == pytest.approx(4 * rho.r22 ** 2, abs=1e-15)
        assert average_fidelity(rho) == pytest.approx(2 / 3 * f90 + f0 / 3, abs=1e-14)


def test_classical_bound():
    assert classical_bound_exceeded(1.0)
    assert not classical_bound_exceeded(0.25)
    assert not classical_bound_exceeded(2 / 3)
    assert classical_bound_exceeded(average_fidelity(channel_density(ModelParams(1, 2, 0), 0.1)))


def test_measures_in_range_and_phi_independent():
    for rho, rng in random_channels(7, 1000):
        theta = rng.uniform(0, math.pi)
        a = measure_set(rho, InputState(theta, 0.0))
        b = measure_set(rho, InputState(theta, 1.7))
        assert a == b
        for v in (a.c_in, a.c_ch, a.c_out, a.fidelity, a.f_avg):
            assert -1e-12 <= v <= 1 + 1e-12


def test_output_concurrence_linear_in_input():
    for rho, _ in random_channels(8, 300):
        cs = np.linspace(0, 1, 11)
        vals = np.array([output_concurrence(rho, c) for c in cs])
        assert np.all(np.diff(vals) >= -1e-15)
        active = vals > 0
        if active.sum() >= 2:
            slopes = np.diff(vals[active]) / np.diff(cs[active])
            np.testing.assert_allclose(slopes, 4 * rho.r23 ** 2, rtol=1e-9)
        margins = [output_concurrence_margin(rho, c) for c in cs]
        np.testing.assert_allclose(vals, 2 * np.maximum(margins, 0))
