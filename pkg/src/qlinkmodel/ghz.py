"""Single-photon loading models for the two GHZ source arrangements.

Both conditional states are diagonal in the basis

    (|000> + |111>)/sqrt2, (|000> - |111>)/sqrt2,
    |001>, |110>, |010>, |101>, |011>, |100>

with memories ordered (A, B, C).  ``A`` below is always
``n_bar(1+n_bar) - n_tilde^2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ModelValidityError, UndefinedConditionalError
from .link_params import ModePairMoments
from .paulis import PauliChannel

__all__ = [
    "BASIS_LABELS",
    "GhzDiagonalState",
    "dual_dpa_diag",
    "heralded_diag",
    "qss_fidelity_dual",
    "qss_fidelity_heralded",
    "pauli_channel_equivalent",
    "ghz_basis_vectors",
]

BASIS_LABELS = ("GHZ+", "GHZ-", "001", "110", "010", "101", "011", "100")


@dataclass(frozen=True, eq=False)
class GhzDiagonalState:
    """Probabilities over :data:`BASIS_LABELS`."""

    probabilities: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float).ravel()
        if p.shape != (8,):
            raise DomainError(f"expected 8 probabilities, got {p.size}")
        if np.any(p < -1e-15) or np.any(p > 1 + 1e-12):
            raise DomainError(f"probabilities out of range: {p}")
        if abs(p.sum() - 1.0) > 1e-12:
            raise DomainError(f"probabilities sum to {p.sum()!r}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)

    @classmethod
    def pure_ghz(cls) -> "GhzDiagonalState":
        return cls(np.eye(8)[0])

    def __getitem__(self, i):
        return self.probabilities[i]

    def density_matrix(self) -> np.ndarray:
        """Dense 8x8 density matrix in the computational basis."""
        V = ghz_basis_vectors()
        return (V * self.probabilities) @ V.conj().T


def ghz_basis_vectors() -> np.ndarray:
    """Columns are the basis states of :data:`BASIS_LABELS` as 8-amplitude vectors."""
    V = np.zeros((8, 8), dtype=complex)
    s = 1 / np.sqrt(2)
    V[0, 0], V[7, 0] = s, s
    V[0, 1], V[7, 1] = s, -s
    for col, bits in enumerate(BASIS_LABELS[2:], start=2):
        V[int(bits, 2), col] = 1
    return V


def _check(m: ModePairMoments):
    if m.a_param < 0:
        raise ModelValidityError(
            f"n_bar(1+n_bar) - n_tilde^2 = {m.a_param:.3e} < 0: outside the single-photon model"
        )


def dual_dpa_diag(m: ModePairMoments) -> GhzDiagonalState:
    """Conditional loading state of the dual-DPA source."""
    _check(m)
    A2, nt2 = m.a_param**2, m.n_tilde**2
    den = 7 * A2 * A2 + 12 * A2 * nt2 + nt2 * nt2
    if den == 0.0:
        raise UndefinedConditionalError("A = n_tilde = 0: no single-photon loading events")
    pg = (A2 + nt2) ** 2 / den
    pe1 = A2 * (A2 + 2 * nt2) / den
    pe2 = A2 * (A2 + nt2) / den
    return GhzDiagonalState(np.array([pg, 0.0, pe1, pe1, pe1, pe1, pe2, pe2]))


def heralded_diag(m: ModePairMoments) -> GhzDiagonalState:
    """Conditional loading state of the heralded single photon plus DPA source."""
    _check(m)
    eta = m.eta
    if not 0.0 < eta <= 1.0:
        raise DomainError(f"eta={eta!r} must lie in (0, 1]")
    A, nb, nt2 = m.a_param, m.n_bar, m.n_tilde**2
    vac = (1 + nb) ** 2 - nt2
    loss = (1 - eta) * A * (A * A + 2 * nt2)
    den = eta * (3 * A * A + nt2) * vac + 2 * loss
    if den == 0.0:
        raise UndefinedConditionalError("A = n_tilde = 0: no single-photon loading events")
    pg = eta * (A * A + nt2) * vac / den
    pe1 = eta * A * A * vac / den
    pe2 = loss / den
    return GhzDiagonalState(np.array([pg, 0.0, pe1, pe1, pe2, 0.0, pe2, 0.0]))


def qss_fidelity_dual(s: GhzDiagonalState) -> float:
    """Closed-form average QSS fidelity ``P_G + 2 P_e1 + 2 P_e2 / 3`` (dual-DPA)."""
    p = s.probabilities
    return float(p[0] + 2 * p[2] + 2 * p[6] / 3)


def qss_fidelity_heralded(s: GhzDiagonalState) -> float:
    """Closed-form average QSS fidelity ``P_G + 2 P_e1 / 3 + P_e2`` (heralded)."""
    p = s.probabilities
    return float(p[0] + 2 * p[2] / 3 + p[4])


def pauli_channel_equivalent(s: GhzDiagonalState) -> PauliChannel:
    """Pauli channel on (A, B, C) whose action on the ideal GHZ state matches ``s``.

    Each bit-flip pair (``|001>,|110>`` etc.) becomes an even mixture of the
    flip with and without a phase flip on A, so the pair populations are
    reproduced exactly but an unbalanced pair is replaced by its average.
    """
    p = s.probabilities
    c, b, a = (p[2] + p[3]) / 2, (p[4] + p[5]) / 2, (p[6] + p[7]) / 2
    return PauliChannel(
        {
            "III": p[0],
            "ZII": p[1],
            "IIX": c,
            "ZIX": c,
            "IXI": b,
            "ZXI": b,
            "XII": a,
            "YII": a,
        }
    )
