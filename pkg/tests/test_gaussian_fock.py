import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qlinkmodel import ModelValidityError, ModePairMoments, SystemConfig, fock_diagonals, fock_diagonals_oracle, pair_moments
from qlinkmodel.gaussian_fock import gaussian_matrix_element

import oracles


def test_vacuum_limit():
    fd = fock_diagonals(ModePairMoments.from_occupations(0.0, 0.0))
    assert (fd.p00, fd.p10, fd.p11, fd.pc) == (1.0, 0.0, 0.0, 0.0)


@pytest.mark.parametrize("km", [0.0, 25.0, 50.0])
def test_closed_forms_match_truncated_fock(km):
    m = pair_moments(SystemConfig(), km)
    ref = oracles.fock_elements_truncated(m.n_bar, m.n_tilde)
    got = fock_diagonals(m).as_array()
    np.testing.assert_allclose(got, ref, rtol=1e-10)


@pytest.mark.parametrize("n_bar, n_tilde", [(0.3, 0.2), (1.0, 0.5), (0.05, 0.2)])
def test_closed_forms_large_occupation(n_bar, n_tilde):
    m = ModePairMoments.from_occupations(n_bar, n_tilde)
    if m.a_param < 0:
        with pytest.raises(ModelValidityError):
            fock_diagonals(m)
        return
    ref = oracles.fock_elements_truncated(n_bar, n_tilde, dim=24)
    np.testing.assert_allclose(fock_diagonals(m).as_array(), ref, rtol=1e-8)


def test_25km_values():
    fd = fock_diagonals(pair_moments(SystemConfig(), 25.0))
    np.testing.assert_allclose(fd.as_array(), [0.99568966, 2.05647e-3, 1.87318e-4, 1.82282e-4], rtol=1e-5)


@pytest.mark.parametrize("pair", ["SxIy", "SyIx"])
def test_quadrature_oracle(pair):
    m = pair_moments(SystemConfig(), 25.0)
    np.testing.assert_allclose(
        fock_diagonals_oracle(m, pair=pair).as_array(), fock_diagonals(m).as_array(), rtol=1e-6
    )


def test_quadrature_off_diagonal_phase():
    m = ModePairMoments.from_occupations(0.3, 0.2)
    x = gaussian_matrix_element(m, (0, 0), (1, 1), "SxIy")
    y = gaussian_matrix_element(m, (0, 0), (1, 1), "SyIx")
    assert abs(x) ** 2 == pytest.approx(fock_diagonals(m).pc, rel=1e-8)
    assert x == pytest.approx(-y, rel=1e-8)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 0.5), st.floats(0.0, 1.0))
def test_identity_holds(n_bar, frac):
    n_tilde = frac * np.sqrt(n_bar * (1 + n_bar))
    fd = fock_diagonals(ModePairMoments.from_occupations(n_bar, n_tilde))
    assert abs(fd.identity_defect()) < 1e-12


def test_invalid_region():
    with pytest.raises(ModelValidityError):
        fock_diagonals(ModePairMoments.from_occupations(0.01, 0.5))
