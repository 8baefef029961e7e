"""The five-qubit perfect code used to protect teleported qubits.

The code is specified through its two codewords.  Stabilizer generators,
the syndrome table and logical operators are all derived from the codewords
at import time and checked against them, so nothing here depends on a
particular textbook generator choice.

As typeset, the ``|0_L>`` codeword carries ``+|01111>``; with that sign the
pair is not a quantum code at all (single-qubit errors violate the
Knill-Laflamme conditions).  Flipping that one sign is the unique
single-sign repair and yields a perfect ``[[5,1,3]]`` code whose
single-error-corrected depolarizing fidelity is exactly the quintic

    Ps' = (5 + 20 Ps - 70 Ps^2 + 40 Ps^3 + 160 Ps^4 - 128 Ps^5) / 27.

:data:`PRINTED_CODEWORDS` keeps the typeset version for reference.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .paulis import commutes, pauli_matrix, pauli_product, pauli_weight

__all__ = [
    "PRINTED_CODEWORDS",
    "CODEWORDS",
    "CodeTables",
    "codewords",
    "knill_laflamme_defect",
    "code_tables",
    "syndrome",
    "decode",
    "logical_class",
    "logical_fidelity",
    "enumerate_logical_channel",
    "iterate_concatenation",
    "encode",
    "N_QUBITS",
]

N_QUBITS = 5

PRINTED_CODEWORDS = {
    0: {"00000": 1, "00110": 1, "01001": 1, "01111": 1,
        "10101": 1, "10011": -1, "11100": 1, "11010": 1},
    1: {"00101": -1, "00011": -1, "01100": 1, "01010": -1,
        "10000": -1, "10110": 1, "11001": 1, "11111": 1},
}

CODEWORDS = {
    0: {**PRINTED_CODEWORDS[0], "01111": -1},
    1: dict(PRINTED_CODEWORDS[1]),
}

ALL_PAULIS = tuple("".join(t) for t in itertools.product("IXYZ", repeat=N_QUBITS))
_PATTERN_WEIGHTS = np.array([pauli_weight(p) for p in ALL_PAULIS])


def _vector(terms: dict) -> np.ndarray:
    v = np.zeros(2**N_QUBITS, dtype=complex)
    for bits, sign in terms.items():
        v[int(bits, 2)] = sign
    return v / math.sqrt(len(terms))


def codewords(as_printed: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Normalized ``(|0_L>, |1_L>)`` as 32-amplitude vectors."""
    table = PRINTED_CODEWORDS if as_printed else CODEWORDS
    return _vector(table[0]), _vector(table[1])


def knill_laflamme_defect(v0: np.ndarray, v1: np.ndarray, max_weight: int = 2) -> float:
    """Largest violation of the error-correction conditions for Paulis up to ``max_weight``.

    Zero means every error of weight ``<= max_weight / 2`` is correctable.
    """
    worst = 0.0
    for p in ALL_PAULIS:
        if pauli_weight(p) > max_weight:
            continue
        M = pauli_matrix(p)
        a = np.vdot(v0, M @ v0)
        b = np.vdot(v1, M @ v1)
        c = np.vdot(v0, M @ v1)
        worst = max(worst, abs(a - b), abs(c))
    return float(worst)


@dataclass(frozen=True)
class CodeTables:
    """Derived description of the code.

    ``generators`` holds ``(sign, pauli)`` pairs with ``sign * pauli`` fixing
    both codewords; ``corrections[s]`` is the weight-<=1 Pauli with syndrome
    ``s`` (generator 0 is the most significant syndrome bit).
    """

    generators: tuple[tuple[int, str], ...]
    corrections: tuple[str, ...]
    logical_x: tuple[complex, str]
    logical_z: tuple[complex, str]


def _gf2_rank(rows: list[list[int]]) -> int:
    m = np.array(rows, dtype=np.uint8) % 2
    rank = 0
    for col in range(m.shape[1]):
        pivots = [i for i in range(rank, m.shape[0]) if m[i, col]]
        if not pivots:
            continue
        m[[rank, pivots[0]]] = m[[pivots[0], rank]]
        for i in range(m.shape[0]):
            if i != rank and m[i, col]:
                m[i] ^= m[rank]
        rank += 1
    return rank


def _symplectic(p: str) -> list[int]:
    return [int(c in "XY") for c in p] + [int(c in "YZ") for c in p]


def _build_tables(v0: np.ndarray, v1: np.ndarray) -> CodeTables:
    stabilizers = []
    logical_x = logical_z = None
    for p in ALL_PAULIS[1:]:
        M = pauli_matrix(p)
        a, b = np.vdot(v0, M @ v0), np.vdot(v1, M @ v1)
        if abs(abs(a) - 1) < 1e-9 and abs(a - b) < 1e-9:
            stabilizers.append((int(round(a.real)), p))
        elif logical_z is None and abs(abs(a) - 1) < 1e-9 and abs(a + b) < 1e-9:
            logical_z = (complex(a), p)
        c = np.vdot(v1, M @ v0)
        if logical_x is None and abs(abs(c) - 1) < 1e-9 and abs(np.vdot(v0, M @ v1) - np.conj(c)) < 1e-9:
            logical_x = (complex(c), p)
    if len(stabilizers) != 15:
        raise DomainError(
            f"codewords are fixed by {len(stabilizers)} Paulis, expected 15 for a [[5,1]] stabilizer code"
        )
    generators: list[tuple[int, str]] = []
    for sign, p in stabilizers:
        rows = [_symplectic(q) for _, q in generators] + [_symplectic(p)]
        if _gf2_rank(rows) > len(generators):
            generators.append((sign, p))
        if len(generators) == 4:
            break
    assert all(commutes(a, b) for (_, a), (_, b) in itertools.combinations(generators, 2))
    corrections: list[str | None] = [None] * 16
    for p in ALL_PAULIS:
        if pauli_weight(p) > 1:
            continue
        s = _syndrome_of(p, generators)
        if corrections[s] is not None:
            raise DomainError("two weight-<=1 errors share a syndrome; code is not perfect")
        corrections[s] = p
    if any(c is None for c in corrections):
        raise DomainError("syndrome table is incomplete")
    return CodeTables(tuple(generators), tuple(corrections), logical_x, logical_z)


def _syndrome_of(p: str, generators) -> int:
    s = 0
    for _, g in generators:
        s = (s << 1) | (0 if commutes(p, g) else 1)
    return s


@lru_cache(maxsize=1)
def code_tables() -> CodeTables:
    """Tables for the (sign-repaired) five-qubit code."""
    return _build_tables(*codewords())


def syndrome(error: str) -> int:
    """4-bit syndrome of a 5-qubit Pauli error."""
    if len(error) != N_QUBITS:
        raise DomainError(f"expected a {N_QUBITS}-qubit Pauli, got {error!r}")
    return _syndrome_of(error, code_tables().generators)


def decode(syn: int) -> str:
    """Weight-<=1 correction for a syndrome in ``0..15``."""
    if not 0 <= syn < 16:
        raise DomainError(f"syndrome {syn!r} outside 0..15")
    return code_tables().corrections[syn]


def _logical_of_residual(residual: str, basis: np.ndarray) -> str:
    L = basis.conj().T @ pauli_matrix(residual) @ basis
    for name in "IXYZ":
        P = pauli_matrix(name)
        if abs(abs(np.trace(P.conj().T @ L)) / 2 - 1) < 1e-9:
            return name
    raise AssertionError(f"residual {residual} does not preserve the code space")


@lru_cache(maxsize=1)
def _logical_class_table() -> tuple[str, ...]:
    v0, v1 = codewords()
    basis = np.stack([v0, v1], axis=1)
    out = []
    for e in ALL_PAULIS:
        residual = pauli_product(e, decode(syndrome(e)))
        out.append(_logical_of_residual(residual, basis))
    return tuple(out)


def logical_class_array() -> np.ndarray:
    """Logical class (0..3 for I, X, Y, Z) of every 5-qubit pattern after decoding.

    Pattern index is base 4 over ``"IXYZ"`` with qubit 0 most significant.
    """
    return np.array(["IXYZ".index(c) for c in _logical_class_table()], dtype=np.int8)


def logical_class(error: str) -> str:
    """Logical Pauli left behind after syndrome decoding of ``error``."""
    if len(error) != N_QUBITS:
        raise DomainError(f"expected a {N_QUBITS}-qubit Pauli, got {error!r}")
    idx = 0
    for c in error:
        idx = 4 * idx + "IXYZ".index(c)
    return _logical_class_table()[idx]


def _check_ps(ps: float) -> None:
    if not 0.0 <= ps <= 1.0:
        raise DomainError(f"Ps={ps!r} must lie in [0, 1]")


def _quintic(ps: float) -> float:
    # Horner form of (5 + 20x - 70x^2 + 40x^3 + 160x^4 - 128x^5) / 27
    return (5 + ps * (20 + ps * (-70 + ps * (40 + ps * (160 - 128 * ps))))) / 27


def logical_fidelity(ps: float) -> float:
    """Post-correction singlet probability for per-qubit depolarizing fidelity ``ps``."""
    _check_ps(ps)
    return _quintic(ps)


def enumerate_logical_channel(ps: float) -> tuple[float, float, float, float]:
    """Logical Pauli channel ``(pI, pX, pY, pZ)`` by exhaustive enumeration.

    Each of the 1024 error patterns is weighted by ``ps**(5-w) * q**w`` with
    ``q = (1-ps)/3``, decoded with the syndrome table, and binned by the
    logical operator it leaves behind.
    """
    _check_ps(ps)
    q = (1.0 - ps) / 3.0
    weights = _PATTERN_WEIGHTS
    probs = ps ** (N_QUBITS - weights) * q**weights
    classes = _logical_class_table()
    bins = {k: [] for k in "IXYZ"}
    for c, p in zip(classes, probs):
        bins[c].append(p)
    return tuple(math.fsum(bins[k]) for k in "IXYZ")


def iterate_concatenation(ps: float, levels: int) -> float:
    """Apply :func:`logical_fidelity` ``levels`` times (``levels=2`` is the 25-qubit code)."""
    _check_ps(ps)
    if levels < 0:
        raise DomainError("levels must be nonnegative")
    for _ in range(levels):
        ps = _quintic(ps)
    return ps


def encode(qubit: np.ndarray) -> np.ndarray:
    """Encode a single-qubit state ``(alpha, beta)`` into the code space."""
    v0, v1 = codewords()
    qubit = np.asarray(qubit, dtype=complex)
    return qubit[0] * v0 + qubit[1] * v1
