import numpy as np
import pytest
from scipy.optimize import brentq

from qlinkmodel import DomainError, GhzDiagonalState, PauliChannel, SystemConfig, pair_moments, qss
from qlinkmodel.ghz import (
    BASIS_LABELS,
    dual_dpa_diag,
    ghz_basis_vectors,
    heralded_diag,
    pauli_channel_equivalent,
    qss_fidelity_dual,
    qss_fidelity_heralded,
)

import oracles

CFG = SystemConfig()


def _dual(km):
    return dual_dpa_diag(pair_moments(CFG, km))


def test_correction_table_matches_density_oracle():
    _, ref = oracles.qss_density_fidelities(np.outer(oracles.ghz_basis()[:, 0], oracles.ghz_basis()[:, 0]))
    labels = [(0, 0), (1, 0), (0, 1), (1, 1)]  # phi+, phi-, psi+, psi-
    table = qss.correction_table()
    got = [table[(m, m ^ n, b)] for m, n in labels for b in (0, 1)]
    assert got == ref
    assert len(table) == 8


@pytest.mark.parametrize("i", range(8))
def test_basis_fidelity_matches_density_oracle(i):
    v = oracles.ghz_basis()[:, i]
    ref, _ = oracles.qss_density_fidelities(np.outer(v, v))
    assert qss.basis_fidelities()[i] == pytest.approx(ref, abs=1e-12)


def test_basis_fidelity_values():
    f = qss.basis_fidelities()
    assert f[0] == 1.0
    np.testing.assert_allclose(f, [1, 1 / 3, 1 / 3, 1 / 3, 2 / 3, 2 / 3, 1 / 3, 1 / 3], atol=1e-15)
    allowed = np.array([1 / 3, 1 / 2, 2 / 3, 1])
    assert np.all(np.min(np.abs(f[:, None] - allowed), axis=1) < 1e-12)


def test_ghz_minus_is_a_phase_flip():
    s = GhzDiagonalState(np.eye(8)[1])
    F, f = qss.qss_average_fidelity_exact(s)
    assert F == pytest.approx(1 / 3)
    np.testing.assert_allclose(qss.output_channel(ghz_basis_vectors()[:, 1]), [0, 0, 0, 1], atol=1e-12)


@pytest.mark.parametrize("km", [0.0, 5.0, 16.0, 30.0, 50.0])
def test_exact_matches_both_closed_forms(km):
    m = pair_moments(CFG, km)
    d, h = dual_dpa_diag(m), heralded_diag(m)
    assert qss.qss_average_fidelity_exact(d)[0] == pytest.approx(qss_fidelity_dual(d), abs=1e-12)
    assert qss.qss_average_fidelity_exact(h)[0] == pytest.approx(qss_fidelity_heralded(h), abs=1e-12)


@pytest.mark.parametrize(
    "label, expected",
    [("GHZ+", [1, 0, 0, 0]), ("001", [0, 0.5, 0.5, 0]), ("010", [0.5, 0, 0, 0.5]), ("100", [0, 0.5, 0.5, 0])],
)
def test_output_channels(label, expected):
    v = ghz_basis_vectors()[:, BASIS_LABELS.index(label)]
    np.testing.assert_allclose(qss.output_channel(v), expected, atol=1e-12)


def test_pauli_fidelity_table():
    ones = {"III", "IXI", "IYZ", "IZZ", "XIX", "XXX", "XYY", "XZY",
            "YIY", "YXY", "YYX", "YZX", "ZIZ", "ZXZ", "ZYI", "ZZI"}
    for a in "IXYZ":
        for b in "IXYZ":
            for c in "IXYZ":
                lbl = a + b + c
                f = qss.ghz_pauli_fidelity(lbl)
                assert f == pytest.approx(1.0 if lbl in ones else 1 / 3, abs=1e-12), lbl


def test_uncoded_mc_agrees_with_exact():
    s = _dual(16.0)
    res = qss.qss_uncoded_mc(s, 100_000, seed=11)
    exact = qss.qss_average_fidelity_exact(s)[0]
    assert abs(res.mean - exact) < 3 * res.stderr


@pytest.mark.parametrize("scheme", ["secret", "shares"])
@pytest.mark.parametrize("seed", [0, 5])
def test_pure_ghz_coded_is_perfect(scheme, seed):
    s = GhzDiagonalState.pure_ghz()
    assert qss.qss_coded_fidelity_mc(s, 500, seed=seed, scheme=scheme).mean == 1.0
    assert qss.qss_coded_fidelity_exact(s, scheme) == pytest.approx(1.0, abs=1e-14)


def test_pure_ghz_dense_engine():
    res = qss.qss_coded_fidelity_mc(GhzDiagonalState.pure_ghz(), 20, seed=2, engine="dense")
    assert res.mean == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("scheme", ["secret", "shares"])
def test_single_phase_flip_is_corrected(scheme):
    ch = PauliChannel({"ZII": 1.0})
    assert qss.qss_coded_fidelity_exact(ch, scheme) == pytest.approx(1.0, abs=1e-12)
    assert qss.qss_coded_fidelity_mc(ch, 200, seed=1, scheme=scheme).mean == pytest.approx(1.0)


def test_single_phase_flip_dense():
    res = qss.qss_coded_fidelity_mc(PauliChannel({"ZII": 1.0}), 10, seed=3, engine="dense")
    assert res.mean == pytest.approx(1.0, abs=1e-12)


def test_channel_and_diagonal_agree_for_dual():
    s = _dual(16.0)
    ch = pauli_channel_equivalent(s)
    assert qss.qss_coded_fidelity_exact(ch) == pytest.approx(qss.qss_coded_fidelity_exact(s), abs=1e-12)
    a = qss.qss_coded_fidelity_mc(s, 40_000, seed=1)
    b = qss.qss_coded_fidelity_mc(ch, 40_000, seed=2)
    assert abs(a.mean - b.mean) < 3 * np.hypot(a.stderr, b.stderr)


@pytest.mark.parametrize("scheme", ["secret", "shares"])
def test_frame_mc_agrees_with_enumeration(scheme):
    s = _dual(20.0)
    res = qss.qss_coded_fidelity_mc(s, 40_000, seed=4, scheme=scheme)
    assert abs(res.mean - qss.qss_coded_fidelity_exact(s, scheme)) < 3 * res.stderr


def test_dense_engine_agrees_with_enumeration():
    s = _dual(30.0)
    res = qss.qss_coded_fidelity_mc(s, 1500, seed=8, engine="dense")
    assert abs(res.mean - qss.qss_coded_fidelity_exact(s)) < 3 * res.stderr


@pytest.mark.parametrize("scheme", ["secret", "shares"])
def test_quadratic_scaling(scheme):
    def infidelity(eps):
        ch = PauliChannel({"III": 1 - 3 * eps, "IIX": eps, "IXI": eps, "XII": eps})
        return 1 - qss.qss_coded_fidelity_exact(ch, scheme)

    e = np.array([1e-2, 1e-3])
    slope = np.polyfit(np.log(e), np.log([infidelity(x) for x in e]), 1)[0]
    assert 1.8 <= slope <= 2.2


def test_coding_helps_at_short_range():
    for scheme in ("secret", "shares"):
        s = _dual(2.0)
        assert qss.qss_coded_fidelity_exact(s, scheme) > qss.qss_average_fidelity_exact(s)[0]


def test_secret_scheme_crossover():
    def gap(km):
        s = _dual(km)
        return qss.qss_coded_fidelity_exact(s) - qss.qss_average_fidelity_exact(s)[0]

    root = brentq(gap, 5.0, 30.0, xtol=1e-6)
    assert 16.0 < root < 17.5


def test_shares_scheme_has_no_crossover():
    for km in np.arange(0.0, 41.0, 4.0):
        s = _dual(km)
        assert qss.qss_coded_fidelity_exact(s, "shares") > qss.qss_average_fidelity_exact(s)[0]


def test_determinism_and_workers():
    s = _dual(16.0)
    a = qss.qss_coded_fidelity_mc(s, 5000, seed=(3, 1))
    b = qss.qss_coded_fidelity_mc(s, 5000, seed=(3, 1))
    c = qss.qss_coded_fidelity_mc(s, 5000, seed=(3, 1), workers=2)
    assert a == b == c
    assert qss.qss_coded_fidelity_mc(s, 5000, seed=(3, 2)) != a


def test_uncoded_determinism():
    s = _dual(16.0)
    assert qss.qss_uncoded_mc(s, 3000, seed=9) == qss.qss_uncoded_mc(s, 3000, seed=9)


def test_errors():
    s = _dual(10.0)
    with pytest.raises(DomainError):
        qss.qss_coded_fidelity_mc(s, 0)
    with pytest.raises(DomainError):
        qss.qss_coded_fidelity_mc(s, 10, scheme="nope")
    with pytest.raises(DomainError):
        qss.qss_coded_fidelity_mc(s, 10, scheme="shares", engine="dense")
    with pytest.raises(DomainError):
        qss.qss_uncoded_mc(s, 0)


def test_branches_have_unit_fidelity_on_ideal_resource():
    ghz = ghz_basis_vectors()[:, 0]
    for secret in qss.SECRETS:
        branches = qss.qss_branches(ghz, secret)
        assert sum(p for _, p, _ in branches) == pytest.approx(1.0)
        for _, _, out in branches:
            assert abs(np.vdot(secret, out)) ** 2 == pytest.approx(1.0)
