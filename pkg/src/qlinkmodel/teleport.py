"""Bell-basis loading model and the teleportation figures of merit."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, UndefinedConditionalError
from .gaussian_fock import FockDiagonals
from .link_params import ModePairMoments, SystemConfig

__all__ = [
    "BellDiagonalState",
    "BellEvents",
    "bell_event_probabilities",
    "conditional_werner",
    "success_probability",
    "average_fidelity",
    "singlet_throughput",
]

BELL_ORDER = ("psi-", "psi+", "phi-", "phi+")


@dataclass(frozen=True)
class BellDiagonalState:
    """Two-qubit state diagonal in the Bell basis, ordered (psi-, psi+, phi-, phi+)."""

    psi_minus: float
    psi_plus: float
    phi_minus: float
    phi_plus: float

    def __post_init__(self):
        p = self.as_array()
        if np.any(p < -1e-15) or np.any(p > 1 + 1e-12):
            raise DomainError(f"Bell probabilities out of range: {p}")
        if abs(p.sum() - 1.0) > 1e-12:
            raise DomainError(f"Bell probabilities sum to {p.sum()!r}, not 1")

    @classmethod
    def werner(cls, ps: float) -> "BellDiagonalState":
        """Singlet Werner state ``diag(Ps, (1-Ps)/3, (1-Ps)/3, (1-Ps)/3)``."""
        if not 0.0 <= ps <= 1.0:
            raise DomainError(f"Ps={ps!r} must lie in [0, 1]")
        q = (1.0 - ps) / 3.0
        return cls(ps, q, q, q)

    def as_array(self) -> np.ndarray:
        return np.array([self.psi_minus, self.psi_plus, self.phi_minus, self.phi_plus])


class BellEvents(NamedTuple):
    """Unnormalized single-photon loading probabilities per Bell state."""

    psi_minus: float
    psi_plus: float
    phi_minus: float
    phi_plus: float

    @property
    def total(self) -> float:
        return self.psi_minus + self.psi_plus + self.phi_minus + self.phi_plus


def bell_event_probabilities(fd: FockDiagonals) -> BellEvents:
    """Probability of loading each Bell state in one cycle.

    The singlet picks up the coherence ``pc``; the three triplets share one
    value because ``p00*p11 - pc == p10**2``.
    """
    triplet = fd.p10**2
    return BellEvents(
        psi_minus=fd.p00 * fd.p11 + fd.pc,
        psi_plus=fd.p00 * fd.p11 - fd.pc,
        phi_minus=triplet,
        phi_plus=triplet,
    )


def conditional_werner(fd: FockDiagonals) -> tuple[BellDiagonalState, float]:
    """Normalize the loading events to the no-erasure conditional state.

    Returns the Werner state and its singlet weight ``Ps``.
    """
    ev = bell_event_probabilities(fd)
    total = ev.total
    if not total > 0.0:
        raise UndefinedConditionalError("every Bell loading probability is zero")
    ps = ev.psi_minus / total
    return BellDiagonalState.werner(min(max(ps, 0.0), 1.0)), ps


def success_probability(m: ModePairMoments) -> float:
    """Closed-form conditional singlet probability ``(A^2+2n~^2)/(4A^2+2n~^2)``.

    ``A = n_bar(1+n_bar) - n_tilde^2``.  Note that an inline typesetting with
    ``(n_bar(1+n_bar) - n_tilde)^2`` in place of ``A^2`` disagrees with the
    Bell probabilities and is treated as a typo.
    """
    A, nt2 = m.a_param, m.n_tilde**2
    den = 4 * A * A + 2 * nt2
    if den == 0.0:
        raise UndefinedConditionalError("A = n_tilde = 0: no single-photon events")
    return (A * A + 2 * nt2) / den


def average_fidelity(ps: float) -> float:
    """Average teleportation fidelity ``(2 Ps + 1) / 3`` over the Bloch sphere."""
    if not 0.0 <= ps <= 1.0:
        raise DomainError(f"Ps={ps!r} must lie in [0, 1]")
    return (2.0 * ps + 1.0) / 3.0


def singlet_throughput(cfg: SystemConfig, pr_singlet: float) -> float:
    """Successful singlet loadings per second, ``R * Pr(psi-)``."""
    if not 0.0 <= pr_singlet <= 1.0:
        raise DomainError(f"Pr(psi-)={pr_singlet!r} must lie in [0, 1]")
    return cfg.cycle_rate_hz * pr_singlet
