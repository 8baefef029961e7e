"""Dense state-vector simulation for small protocol circuits.

Qubit 0 is the most significant bit of an amplitude index.  Functions act on
:class:`StateVector` values and return new ones; the underscore helpers work
on raw arrays with arbitrary leading batch axes and are what the Monte Carlo
engines call.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .paulis import PAULI_MATRICES

__all__ = [
    "MAX_QUBITS",
    "StateVector",
    "GATES",
    "BELL_STATES",
    "BELL_LABELS",
    "apply_gate",
    "bell_measure",
    "measure_x",
    "fidelity",
]

MAX_QUBITS = 20
_SQRT1_2 = 1.0 / math.sqrt(2.0)

GATES = {
    "I": PAULI_MATRICES["I"],
    "X": PAULI_MATRICES["X"],
    "Y": PAULI_MATRICES["Y"],
    "Z": PAULI_MATRICES["Z"],
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT1_2,
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
}

# Two-qubit Bell states on (first, second), with their two-bit labels (m, n).
BELL_STATES = {
    "psi+": np.array([0, 1, 1, 0], dtype=complex) * _SQRT1_2,
    "psi-": np.array([0, -1, 1, 0], dtype=complex) * _SQRT1_2,
    "phi+": np.array([1, 0, 0, 1], dtype=complex) * _SQRT1_2,
    "phi-": np.array([-1, 0, 0, 1], dtype=complex) * _SQRT1_2,
}
BELL_LABELS = {"psi+": (0, 1), "psi-": (1, 1), "phi+": (0, 0), "phi-": (1, 0)}
_BELL_ORDER = ("phi+", "phi-", "psi+", "psi-")
_BELL_MATRIX = np.stack([BELL_STATES[k] for k in _BELL_ORDER])  # rows = outcomes
_X_BASIS = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT1_2  # rows = |+x>, |-x>

# Branches lighter than this are treated as void when sampling.
PROB_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state of ``num_qubits`` qubits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        n = int(round(math.log2(amps.size))) if amps.size else -1
        if n < 1 or 2**n != amps.size:
            raise DomainError(f"{amps.size} amplitudes is not a power of two")
        if n > MAX_QUBITS:
            raise DomainError(f"{n} qubits exceeds the {MAX_QUBITS}-qubit limit")
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > 1e-10:
            raise DomainError(f"state has squared norm {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def num_qubits(self) -> int:
        return int(round(math.log2(self.amplitudes.size)))

    @classmethod
    def zeros(cls, num_qubits: int) -> "StateVector":
        if not 1 <= num_qubits <= MAX_QUBITS:
            raise DomainError(f"num_qubits={num_qubits!r} outside 1..{MAX_QUBITS}")
        amps = np.zeros(2**num_qubits, dtype=complex)
        amps[0] = 1
        return cls(amps)

    @classmethod
    def from_bits(cls, bits: str) -> "StateVector":
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int(bits, 2)] = 1
        return cls(amps)

    def tensor(self, other: "StateVector") -> "StateVector":
        return StateVector(np.kron(self.amplitudes, other.amplitudes))


def _apply(psi: np.ndarray, U: np.ndarray, targets, n: int) -> np.ndarray:
    k = len(targets)
    batch = psi.shape[:-1]
    nb = len(batch)
    t = psi.reshape(batch + (2,) * n)
    axes = [nb + q for q in targets]
    t = np.moveaxis(t, axes, list(range(nb, nb + k)))
    rest = t.shape[nb + k:]
    t = t.reshape(batch + (2**k, -1))
    t = np.einsum("ij,...jr->...ir", U, t)
    t = t.reshape(batch + (2,) * k + rest)
    t = np.moveaxis(t, list(range(nb, nb + k)), axes)
    return t.reshape(batch + (2**n,))


def _split(psi: np.ndarray, targets, n: int) -> np.ndarray:
    # (..., 2**n) -> (..., 2**k, 2**(n-k)) with targets first
    k = len(targets)
    batch = psi.shape[:-1]
    nb = len(batch)
    t = psi.reshape(batch + (2,) * n)
    t = np.moveaxis(t, [nb + q for q in targets], list(range(nb, nb + k)))
    return t.reshape(batch + (2**k, 2 ** (n - k)))


def _sample_rows(probs: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Sample one column index per row of ``probs`` (..., m), skipping void branches."""
    probs = np.where(probs < PROB_FLOOR, 0.0, probs)
    cdf = np.cumsum(probs, axis=-1)
    u = rng.random(probs.shape[:-1] + (1,)) * cdf[..., -1:]
    idx = (u >= cdf).sum(axis=-1)
    return np.minimum(idx, probs.shape[-1] - 1)


def _measure(psi, basis_rows, targets, n, rng):
    """Projective measurement of ``targets`` in the basis given by ``basis_rows``.

    Returns ``(outcome index, residual state over the other qubits)``.
    """
    parts = _split(psi, targets, n)
    resid = np.einsum("kj,...jr->...kr", basis_rows.conj(), parts)
    probs = np.einsum("...kr,...kr->...k", resid.conj(), resid).real
    idx = _sample_rows(probs, rng)
    chosen = np.take_along_axis(resid, idx[..., None, None], axis=-2)[..., 0, :]
    p = np.take_along_axis(probs, idx[..., None], axis=-1)
    return idx, chosen / np.sqrt(p)


def _check_targets(targets, n):
    if len(set(targets)) != len(targets):
        raise DomainError(f"targets {targets} are not distinct")
    if any(not 0 <= q < n for q in targets):
        raise DomainError(f"targets {targets} out of range for {n} qubits")


def apply_gate(sv: StateVector, gate, targets) -> StateVector:
    """Apply a named gate or an explicit unitary to ``targets``.

    ``gate`` is a key of :data:`GATES` or a ``2**k x 2**k`` unitary for ``k``
    targets; for ``CNOT`` the first target is the control.
    """
    if isinstance(targets, int):
        targets = (targets,)
    targets = tuple(targets)
    n = sv.num_qubits
    _check_targets(targets, n)
    U = GATES[gate] if isinstance(gate, str) else np.asarray(gate, dtype=complex)
    if U.shape != (2 ** len(targets),) * 2:
        raise DomainError(f"gate of shape {U.shape} does not match {len(targets)} targets")
    if not np.allclose(U.conj().T @ U, np.eye(U.shape[0]), atol=1e-10):
        raise DomainError("gate matrix is not unitary")
    return StateVector(_apply(sv.amplitudes, U, targets, n))


def _collapsed(resid: np.ndarray, post: np.ndarray, targets, n: int) -> np.ndarray:
    k = len(targets)
    full = np.kron(post, resid).reshape((2,) * n)
    full = np.moveaxis(full, list(range(k)), list(targets))
    return full.reshape(-1)


def bell_measure(sv: StateVector, q1: int, q2: int, rng: np.random.Generator, discard: bool = False):
    """Bell-state measurement of ``(q1, q2)``.

    Returns ``((m, n), state)`` with the labels ``psi+=(0,1)``, ``psi-=(1,1)``,
    ``phi+=(0,0)``, ``phi-=(1,0)``.  The post-measurement state keeps the
    measured pair in the observed Bell state, or drops it when ``discard``.
    """
    n = sv.num_qubits
    _check_targets((q1, q2), n)
    if n == 2 and discard:
        raise DomainError("cannot discard every qubit")
    idx, resid = _measure(sv.amplitudes, _BELL_MATRIX, (q1, q2), n, rng)
    name = _BELL_ORDER[int(idx)]
    if discard:
        return BELL_LABELS[name], StateVector(resid)
    return BELL_LABELS[name], StateVector(_collapsed(resid, BELL_STATES[name], (q1, q2), n))


def measure_x(sv: StateVector, q: int, rng: np.random.Generator, discard: bool = False):
    """Measure qubit ``q`` in the ``{|+x>, |-x>}`` basis; outcome bit 0 is ``+x``."""
    n = sv.num_qubits
    _check_targets((q,), n)
    idx, resid = _measure(sv.amplitudes, _X_BASIS, (q,), n, rng)
    bit = int(idx)
    if discard:
        return bit, StateVector(resid)
    return bit, StateVector(_collapsed(resid, _X_BASIS[bit], (q,), n))


def fidelity(a: StateVector, b: StateVector) -> float:
    """``|<a|b>|**2``."""
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)
