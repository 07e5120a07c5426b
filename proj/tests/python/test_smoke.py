import math

import numpy as np
import pytest

import nonkp


@pytest.fixture
def grid():
    return nonkp.Grid2D(32, 32, 2 * math.pi, 2 * math.pi)


def test_dispersion_branches():
    xi, mu = 1.3, -0.7
    w1, w2 = nonkp.omega(1, xi, mu), nonkp.omega(2, xi, mu)
    a = 1 + xi * xi
    assert w1 >= w2
    assert w1 + w2 == pytest.approx(xi / a, abs=1e-14)
    assert w1 * w2 == pytest.approx(-mu * mu / a, abs=1e-14)
    with pytest.raises(ValueError):
        nonkp.omega(3, xi, mu)


def test_multipliers_sum():
    xi, mu = 0.8, 2.0
    total = nonkp.multiplier(1, xi, mu) + nonkp.multiplier(2, xi, mu)
    assert total == pytest.approx(1j * xi / (2 * (1 + xi * xi)), abs=1e-14)


def test_random_field_shape_and_amplitude(grid):
    u = nonkp.random_field(grid, 0.3, 4, 7)
    assert u.shape == (32, 32)
    assert np.max(np.abs(u)) == pytest.approx(0.3, rel=1e-12)
    assert np.array_equal(u, nonkp.random_field(grid, 0.3, 4, 7))


def test_simulate_conserves_hamiltonian(grid):
    u = nonkp.random_field(grid, 0.05, 4, 1)
    v = nonkp.random_field(grid, 0.05, 4, 2)
    out = nonkp.simulate(grid, u, v, t_end=0.5)
    assert out["u"].shape[1:] == (32, 32)
    assert out["t"][-1] == pytest.approx(0.5, abs=1e-12)
    assert out["hamiltonian_drift"] < 1e-8
    assert out["H"][0] == pytest.approx(nonkp.hamiltonian(grid, u, v), rel=1e-12)


def test_simulate_rejects_wrong_shape(grid):
    with pytest.raises(ValueError):
        nonkp.simulate(grid, np.zeros((16, 32)), np.zeros((32, 32)), t_end=0.1)


def test_blow_up_is_reported(grid):
    u = nonkp.random_field(grid, 1e4, 4, 3)
    with pytest.raises(nonkp.BlowUpError, match="blow-up"):
        nonkp.simulate(grid, u, np.zeros_like(u), t_end=1.0)


def test_dn_expansion_order():
    amps = [0.01, 0.02, 0.04]
    errs = [nonkp.dn_trace_error(1.0, 64, 2 * math.pi, 1, 2, a) for a in amps]
    assert nonkp.fit_loglog_slope(amps, errs) == pytest.approx(3.0, abs=0.3)


def test_psi_norm_small_T_decay():
    small = nonkp.psi_T_norm(0.01, 0.6)
    large = nonkp.psi_T_norm(0.1, 0.6)
    assert small > large > 0
