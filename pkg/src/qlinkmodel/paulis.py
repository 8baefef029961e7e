"""Phaseless Pauli strings and Pauli channels.

A Pauli string is a plain ``str`` over ``"IXYZ"``; character ``k`` acts on
qubit ``k``, and qubit 0 is the most significant bit of a state index.
"""
from __future__ import annotations

from functools import reduce
from typing import Mapping

import numpy as np

from .errors import DomainError

__all__ = [
    "PAULI_MATRICES",
    "pauli_matrix",
    "pauli_product",
    "commutes",
    "pauli_weight",
    "PauliChannel",
]

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_TO_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_FROM_BITS = {v: k for k, v in _TO_BITS.items()}


def _check(p: str) -> None:
    if not p or any(c not in _TO_BITS for c in p):
        raise DomainError(f"invalid Pauli string {p!r}")


def pauli_matrix(p: str) -> np.ndarray:
    """Dense ``2**n x 2**n`` matrix of a Pauli string."""
    _check(p)
    return reduce(np.kron, (PAULI_MATRICES[c] for c in p))


def pauli_product(a: str, b: str) -> str:
    """Product of two Pauli strings, phase dropped."""
    if len(a) != len(b):
        raise DomainError("Pauli strings differ in length")
    out = []
    for x, y in zip(a, b):
        ax, az = _TO_BITS[x]
        bx, bz = _TO_BITS[y]
        out.append(_FROM_BITS[(ax ^ bx, az ^ bz)])
    return "".join(out)


def commutes(a: str, b: str) -> bool:
    """Whether two Pauli strings commute."""
    if len(a) != len(b):
        raise DomainError("Pauli strings differ in length")
    anti = 0
    for x, y in zip(a, b):
        ax, az = _TO_BITS[x]
        bx, bz = _TO_BITS[y]
        anti ^= (ax & bz) ^ (az & bx)
    return anti == 0


def pauli_weight(p: str) -> int:
    return sum(c != "I" for c in p)


class PauliChannel:
    """Probability map over Pauli strings of a fixed length.

    Zero-probability entries are dropped; the labels keep insertion order so
    that sampling with a fixed random stream is reproducible.
    """

    def __init__(self, probabilities: Mapping[str, float], atol: float = 1e-12):
        probs = {}
        n = None
        for label, p in probabilities.items():
            _check(label)
            if n is None:
                n = len(label)
            elif len(label) != n:
                raise DomainError("Pauli labels of mixed length")
            if p < -atol:
                raise DomainError(f"negative probability {p!r} for {label}")
            if p > 0:
                probs[label] = probs.get(label, 0.0) + float(p)
        total = sum(probs.values())
        if n is None or abs(total - 1.0) > atol:
            raise DomainError(f"channel probabilities sum to {total!r}, not 1")
        self._probs = probs
        self.num_qubits = n

    @classmethod
    def depolarizing(cls, fidelity: float, num_qubits: int = 1) -> "PauliChannel":
        """Single-qubit depolarizing channel: identity with probability ``fidelity``."""
        if num_qubits != 1:
            raise DomainError("only single-qubit depolarizing channels are defined")
        q = (1.0 - fidelity) / 3.0
        return cls({"I": fidelity, "X": q, "Y": q, "Z": q})

    @property
    def labels(self) -> list[str]:
        return list(self._probs)

    @property
    def probabilities(self) -> np.ndarray:
        return np.fromiter(self._probs.values(), dtype=float)

    def __getitem__(self, label: str) -> float:
        return self._probs.get(label, 0.0)

    def items(self):
        return self._probs.items()

    def __eq__(self, other):
        if not isinstance(other, PauliChannel):
            return NotImplemented
        keys = set(self._probs) | set(other._probs)
        return all(abs(self[k] - other[k]) < 1e-12 for k in keys)

    def __repr__(self):
        inner = ", ".join(f"{k}: {v:.6g}" for k, v in self._probs.items())
        return f"PauliChannel({{{inner}}})"

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Action on a dense density matrix."""
        out = np.zeros_like(rho, dtype=complex)
        for label, p in self._probs.items():
            P = pauli_matrix(label)
            out += p * (P @ rho @ P.conj().T)
        return out

    def sample(self, rng: np.random.Generator, size=None) -> np.ndarray:
        """Indices into :attr:`labels` drawn with the channel probabilities."""
        cdf = np.cumsum(self.probabilities)
        u = rng.random(size)
        return np.minimum(np.searchsorted(cdf, u * cdf[-1], side="right"), len(cdf) - 1)
