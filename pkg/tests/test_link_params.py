import math

import pytest
from hypothesis import given, strategies as st

from qlinkmodel import DomainError, ModePairMoments, SystemConfig, link_transmissivity, pair_moments

import oracles


def test_defaults_match_operating_point():
    cfg = SystemConfig()
    assert cfg.pump_amplitude == pytest.approx(0.1)
    assert cfg.pump_power_normalized == pytest.approx(0.01)
    assert cfg.cycle_rate_hz == 5e5


def test_from_pump_power():
    assert SystemConfig.from_pump_power(0.04).pump_amplitude == pytest.approx(0.2)


@pytest.mark.parametrize("km, expected", [(0.0, 10 ** -0.5), (25.0, 0.1), (50.0, 10 ** -1.5)])
def test_transmissivity(km, expected):
    assert link_transmissivity(km, SystemConfig()) == pytest.approx(expected, rel=1e-14)


def test_negative_length_rejected():
    with pytest.raises(DomainError):
        link_transmissivity(-1.0, SystemConfig())


@pytest.mark.parametrize("kw", [dict(pump_amplitude=1.0), dict(linewidth_ratio=0.0), dict(gamma_ratio_source=1.5),
                                dict(cycle_rate_hz=-1.0)])
def test_invalid_config(kw):
    with pytest.raises(DomainError):
        SystemConfig(**kw)


@pytest.mark.parametrize("km", [0.0, 10.0, 25.0, 50.0])
def test_moments_match_printed_expression(km):
    cfg = SystemConfig()
    m = pair_moments(cfg, km)
    n_bar, n_tilde = oracles.moments(0.1, link_transmissivity(km, cfg), 0.5)
    assert m.n_bar == pytest.approx(n_bar, rel=1e-13)
    assert m.n_tilde == pytest.approx(n_tilde, rel=1e-13)
    assert m.a_param == pytest.approx(n_bar * (1 + n_bar) - n_tilde**2, rel=1e-12)


def test_25km_values():
    m = pair_moments(SystemConfig(), 25.0)
    assert m.i_minus == pytest.approx(0.1 * 0.1 / (0.9 * 1.4), rel=1e-12)
    assert m.i_plus == pytest.approx(0.1 * 0.1 / (1.1 * 1.6), rel=1e-12)
    assert m.a_param > 0


@given(st.floats(1e-4, 0.9), st.floats(0.0, 200.0))
def test_i_minus_exceeds_i_plus(G, km):
    m = pair_moments(SystemConfig(pump_amplitude=G), km)
    assert m.i_minus > m.i_plus > 0


def test_linear_small_gain():
    a = pair_moments(SystemConfig(pump_amplitude=1e-6), 0.0)
    b = pair_moments(SystemConfig(pump_amplitude=2e-6), 0.0)
    assert b.i_minus / a.i_minus == pytest.approx(2.0, rel=1e-5)
    assert b.i_plus / a.i_plus == pytest.approx(2.0, rel=1e-5)


def test_a_param_nonnegative_on_sweep():
    cfg = SystemConfig()
    assert all(pair_moments(cfg, km / 2).a_param >= 0 for km in range(0, 101, 2))


def test_from_occupations():
    m = ModePairMoments.from_occupations(0.3, 0.2)
    assert m.a_param == pytest.approx(0.3 * 1.3 - 0.04)
    assert math.isclose(m.i_minus - m.i_plus, 0.3)


@given(st.floats(1e-6, 0.99), st.floats(0.0, 300.0), st.floats(1e-3, 10.0), st.floats(1e-3, 1.0))
def test_single_photon_model_always_valid(G, km, r, gamma):
    # A = n_bar - 4 I+ I-, positive because (4 + 2r) / (eta * ratios) > 4
    cfg = SystemConfig(pump_amplitude=G, linewidth_ratio=r, gamma_ratio_source=gamma, excess_loss_db=0.0)
    m = pair_moments(cfg, km)
    assert m.a_param == pytest.approx(m.n_bar - 4 * m.i_plus * m.i_minus, rel=1e-9, abs=1e-300)
    assert m.a_param > 0
