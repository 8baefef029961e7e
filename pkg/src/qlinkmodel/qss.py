"""Quantum secret sharing over a noisy GHZ resource.

Protocol, with qubits ordered (S, A, B, C): Alice Bell-measures her secret S
with her GHZ qubit A and labels the result ``(m, n)``; Bob measures B in the
x basis and reports bit ``b``; Charlie, holding ``m``, ``m ^ n`` and ``b``,
applies a Pauli correction to C.  The correction table is not hard-coded: it
is derived by exhaustive search as the unique Pauli per message that returns
the secret with fidelity 1 on the ideal GHZ resource.

Fidelities are averaged over the six axial secrets, a 2-design, which equals
the uniform Bloch-sphere average.

Two coded variants are offered:

``"secret"``
    Alice encodes the secret in the five-qubit code and shares each physical
    qubit over its own GHZ triple; Charlie decodes his five outputs.  Every
    loading basis state induces an exact Pauli channel on the shared qubit,
    so this variant needs no approximation for either source.
``"shares"``
    The GHZ state itself is encoded, one code block per party.  Loading
    errors enter through :func:`~qlinkmodel.ghz.pauli_channel_equivalent`,
    each party decodes its block, and QSS runs on the logical qubits.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import NamedTuple, Sequence, Union

import numpy as np

from . import qecc
from .errors import DomainError
from .ghz import GhzDiagonalState, ghz_basis_vectors, pauli_channel_equivalent
from .paulis import PAULI_MATRICES, PauliChannel, pauli_matrix
from .statevector import (
    _BELL_MATRIX,
    _BELL_ORDER,
    _X_BASIS,
    BELL_LABELS,
    _measure,
    _sample_rows,
)

__all__ = [
    "SECRETS",
    "MCResult",
    "correction_table",
    "qss_branches",
    "qss_average_fidelity_exact",
    "basis_fidelities",
    "ghz_pauli_fidelity",
    "output_channel",
    "qubit_channel",
    "qss_uncoded_mc",
    "qss_coded_fidelity_exact",
    "qss_coded_fidelity_mc",
]

_S = 1 / math.sqrt(2)
SECRETS = np.array(
    [[1, 0], [0, 1], [_S, _S], [_S, -_S], [_S, 1j * _S], [_S, -1j * _S]], dtype=complex
)
_PAULI_STACK = np.stack([PAULI_MATRICES[c] for c in "IXYZ"])
_GHZ = ghz_basis_vectors()[:, 0]
CHUNK_SIZE = 2048

TripleNoise = Union[GhzDiagonalState, PauliChannel]
Seed = Union[int, Sequence[int]]


class MCResult(NamedTuple):
    mean: float
    stderr: float
    trials: int


def _raw_branches(resources, secrets, bell=_BELL_MATRIX, xbasis=_X_BASIS) -> np.ndarray:
    """Charlie's unnormalized amplitudes per branch.

    ``resources`` (..., 8) and ``secrets`` (..., 2) broadcast; the result has
    shape (..., 4 Bell outcomes in ``_BELL_ORDER``, 2 Bob bits, 2).
    """
    psi = secrets[..., :, None] * resources[..., None, :]  # (..., S, ABC)
    psi = psi.reshape(psi.shape[:-2] + (2, 2, 4))  # S, A, BC
    psi = psi.reshape(psi.shape[:-3] + (4, 4))  # SA, BC
    after_a = np.einsum("kj,...jr->...kr", bell.conj(), psi)
    after_a = after_a.reshape(after_a.shape[:-1] + (2, 2))  # B, C
    return np.einsum("xb,...kbc->...kxc", xbasis.conj(), after_a)


def _charlie_key(bell_name: str, b: int) -> tuple[int, int, int]:
    m, n = BELL_LABELS[bell_name]
    return m, m ^ n, b


@lru_cache(maxsize=1)
def correction_table() -> dict[tuple[int, int, int], str]:
    """Charlie's Pauli correction keyed by ``(m, m ^ n, b)``."""
    branches = _raw_branches(_GHZ, SECRETS)  # (6, 4, 2, 2)
    table = {}
    for k, name in enumerate(_BELL_ORDER):
        for b in range(2):
            fits = []
            for label, U in zip("IXYZ", _PAULI_STACK):
                amps = branches[:, k, b, :]
                p = np.einsum("sc,sc->s", amps.conj(), amps).real
                out = amps @ U.T
                fid = np.abs(np.einsum("sc,sc->s", SECRETS.conj(), out)) ** 2
                if np.all(p > 1e-12) and np.allclose(fid, p, atol=1e-12):
                    fits.append(label)
            if len(fits) != 1:
                raise AssertionError(f"correction for branch {name},{b} is not unique: {fits}")
            table[_charlie_key(name, b)] = fits[0]
    return table


@lru_cache(maxsize=1)
def _correction_matrices() -> np.ndarray:
    """Correction unitaries indexed by (Bell outcome, Bob bit)."""
    table = correction_table()
    U = np.empty((4, 2, 2, 2), dtype=complex)
    for k, name in enumerate(_BELL_ORDER):
        for b in range(2):
            U[k, b] = PAULI_MATRICES[table[_charlie_key(name, b)]]
    return U


def qss_branches(resource: np.ndarray, secret: np.ndarray):
    """All measurement branches for one pure resource and secret.

    Returns a list of ``(key, probability, charlie_state)`` where ``key`` is
    Charlie's ``(m, m ^ n, b)`` and ``charlie_state`` is already corrected and
    normalized.  Void branches are omitted.
    """
    raw = _raw_branches(np.asarray(resource, dtype=complex), np.asarray(secret, dtype=complex))
    U = _correction_matrices()
    out = []
    for k, name in enumerate(_BELL_ORDER):
        for b in range(2):
            amps = raw[k, b]
            p = float(np.vdot(amps, amps).real)
            if p < 1e-12:
                continue
            out.append((_charlie_key(name, b), p, U[k, b] @ amps / math.sqrt(p)))
    return out


def _average_fidelity_pure(resources: np.ndarray) -> np.ndarray:
    """Exact six-secret average fidelity for each pure resource in (..., 8)."""
    raw = _raw_branches(resources[..., None, :], SECRETS)  # (..., 6, 4, 2, 2)
    out = np.einsum("kbij,...kbj->...kbi", _correction_matrices(), raw)
    overlap = np.einsum("si,...skbi->...skb", SECRETS.conj(), out)
    return (np.abs(overlap) ** 2).sum(axis=(-1, -2)).mean(axis=-1)


_R2 = math.sqrt(2)


def _exact_average_fidelity(resources: np.ndarray) -> np.ndarray:
    """Six-secret average fidelity for resources given as Gaussian-integer vectors (r, 8).

    With integer amplitudes every normalization is a power of two, so the
    result carries no rounding beyond the final division.
    """
    secrets = np.round(SECRETS * np.array([1, 1, _R2, _R2, _R2, _R2])[:, None])
    raw = _raw_branches(resources[:, None, :], secrets, np.round(_BELL_MATRIX * _R2), np.round(_X_BASIS * _R2))
    out = np.einsum("kbij,...kbj->...kbi", _correction_matrices(), raw)
    overlap = np.abs(np.einsum("si,...skbi->...skb", secrets.conj(), out)) ** 2
    n_sec = np.einsum("si,si->s", secrets.conj(), secrets).real
    n_res = np.einsum("ri,ri->r", resources.conj(), resources).real
    scale = n_res[:, None] * n_sec[None, :] ** 2 * 4  # Bell and x rows contribute 2 each
    terms = overlap.sum(axis=(-1, -2)) / scale
    return np.array([math.fsum(row) / len(SECRETS) for row in terms])


@lru_cache(maxsize=1)
def basis_fidelities() -> np.ndarray:
    """Exact QSS fidelity of each loading basis state, ordered as ``BASIS_LABELS``.

    ``f[0]`` is exactly 1.
    """
    resources = np.round(ghz_basis_vectors().T * np.array([_R2, _R2, 1, 1, 1, 1, 1, 1])[:, None])
    f = _exact_average_fidelity(resources)
    f.setflags(write=False)
    return f


def qss_average_fidelity_exact(s: GhzDiagonalState) -> tuple[float, np.ndarray]:
    """Average QSS fidelity of a diagonal loading state, with per-basis-state values."""
    f = basis_fidelities()
    return float(np.dot(s.probabilities, f)), f.copy()


def ghz_pauli_fidelity(label: str) -> float:
    """Exact QSS fidelity when the 3-qubit Pauli ``label`` hits the ideal GHZ state."""
    v = np.round(pauli_matrix(label) @ _GHZ * _R2)
    return float(_exact_average_fidelity(v[None, :])[0])


@lru_cache(maxsize=1)
def _logical_pauli_fidelity_table() -> np.ndarray:
    table = np.empty(64)
    for i in range(64):
        label = "IXYZ"[i // 16] + "IXYZ"[(i // 4) % 4] + "IXYZ"[i % 4]
        table[i] = ghz_pauli_fidelity(label)
    return table


def output_channel(resource: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    """Pauli probabilities ``(pI, pX, pY, pZ)`` of the secret-to-Charlie map.

    The map is built from the branch Kraus operators of a pure resource; a
    ``DomainError`` is raised if it is not a Pauli channel.
    """
    raw = _raw_branches(np.asarray(resource, dtype=complex)[None, :], np.eye(2, dtype=complex))
    # raw[j, k, b, c]: amplitude of Charlie c for secret basis j
    K = np.einsum("kbic,jkbc->kbij", _correction_matrices(), raw).reshape(8, 2, 2)
    R = np.empty((4, 4))
    for j, Pj in enumerate(_PAULI_STACK):
        out = np.einsum("kij,jl,kml->im", K, Pj, K.conj())
        for i, Pi in enumerate(_PAULI_STACK):
            R[i, j] = np.trace(Pi @ out).real / 2
    if np.abs(R - np.diag(np.diag(R))).max() > atol:
        raise DomainError("QSS map for this resource is not a Pauli channel")
    r = np.diag(R)
    probs = 0.25 * np.array(
        [
            r[0] + r[1] + r[2] + r[3],
            r[0] + r[1] - r[2] - r[3],
            r[0] - r[1] + r[2] - r[3],
            r[0] - r[1] - r[2] + r[3],
        ]
    )
    probs[np.abs(probs) < atol] = 0.0
    return probs


@lru_cache(maxsize=1)
def _basis_output_channels() -> np.ndarray:
    return np.stack([output_channel(v) for v in ghz_basis_vectors().T])


def _triple_components(noise: TripleNoise):
    """Pure triple resources and their weights for either noise description."""
    if isinstance(noise, GhzDiagonalState):
        return ghz_basis_vectors().T, noise.probabilities, _basis_output_channels()
    if isinstance(noise, PauliChannel):
        if noise.num_qubits != 3:
            raise DomainError("triple noise must act on 3 qubits")
        states = np.stack([pauli_matrix(lbl) @ _GHZ for lbl in noise.labels])
        chans = np.stack([output_channel(v) for v in states])
        return states, noise.probabilities, chans
    raise TypeError(f"unsupported noise description {type(noise).__name__}")


def qubit_channel(noise: TripleNoise) -> np.ndarray:
    """Per-qubit Pauli channel of one QSS round over a noisy triple."""
    _, weights, chans = _triple_components(noise)
    return weights @ chans


# -- exact coded fidelities ---------------------------------------------------

def _pattern_probabilities(channel: np.ndarray) -> np.ndarray:
    probs = np.ones(1)
    for _ in range(qecc.N_QUBITS):
        probs = np.outer(probs, channel).ravel()
    return probs


def _shares_channel(noise: TripleNoise) -> PauliChannel:
    return pauli_channel_equivalent(noise) if isinstance(noise, GhzDiagonalState) else noise


def _party_letters(channel: PauliChannel) -> np.ndarray:
    """(labels, 3) letter indices into ``"IXYZ"`` for Alice, Bob, Charlie."""
    return np.array([["IXYZ".index(c) for c in lbl] for lbl in channel.labels])


def qss_coded_fidelity_exact(noise: TripleNoise, scheme: str = "secret") -> float:
    """Coded QSS fidelity by enumerating every error pattern on the five triples."""
    classes = qecc.logical_class_array()
    if scheme == "secret":
        probs = _pattern_probabilities(qubit_channel(noise))
        p_ok = math.fsum(probs[classes == 0])
        return (2 * p_ok + 1) / 3
    if scheme == "shares":
        ch = _shares_channel(noise)
        letters = _party_letters(ch)
        k = len(ch.labels)
        idx = np.indices((k,) * qecc.N_QUBITS).reshape(qecc.N_QUBITS, -1).T  # patterns
        probs = np.prod(ch.probabilities[idx], axis=1)
        fid = _shares_pattern_fidelity(letters[idx])
        return math.fsum(probs * fid)
    raise DomainError(f"unknown coding scheme {scheme!r}")


def _shares_pattern_fidelity(letters: np.ndarray) -> np.ndarray:
    # letters: (..., 5 triples, 3 parties)
    powers = 4 ** np.arange(qecc.N_QUBITS - 1, -1, -1)
    party_idx = np.einsum("...tp,t->...p", letters, powers)
    cls = qecc.logical_class_array()[party_idx]
    code = cls[..., 0] * 16 + cls[..., 1] * 4 + cls[..., 2]
    return _logical_pauli_fidelity_table()[code]


# -- Monte Carlo ----------------------------------------------------------------

def _rng(seed: Seed, tag: int, chunk: int) -> np.random.Generator:
    entropy = seed if isinstance(seed, int) else list(seed)
    ss = np.random.SeedSequence(entropy, spawn_key=(tag, chunk))
    return np.random.Generator(np.random.Philox(ss))


def _chunks(trials: int, chunk_size: int):
    return [(c, min(chunk_size, trials - c * chunk_size)) for c in range(math.ceil(trials / chunk_size))]


def _run_chunks(fn, args, trials: int, chunk_size: int, workers: int) -> MCResult:
    if trials < 1:
        raise DomainError("trials must be at least 1")
    jobs = _chunks(trials, chunk_size)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(fn, *zip(*[(args, c, n) for c, n in jobs])))
    else:
        parts = [fn(args, c, n) for c, n in jobs]
    values = np.concatenate(parts)
    mean = float(values.mean())
    se = float(values.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return MCResult(mean, se, trials)


def _sample_categorical(rng, weights: np.ndarray, size) -> np.ndarray:
    cdf = np.cumsum(weights)
    u = rng.random(size) * cdf[-1]
    return np.minimum(np.searchsorted(cdf, u, side="right"), len(cdf) - 1)


def _uncoded_chunk(args, chunk: int, n: int) -> np.ndarray:
    probs, seed = args
    rng = _rng(seed, 1, chunk)
    basis = ghz_basis_vectors().T
    idx = _sample_categorical(rng, probs, n)
    # (n, 6 secrets, S A B C)
    psi = np.einsum("si,nj->nsij", SECRETS, basis[idx]).reshape(n, 6, 16)
    bell, rest = _measure(psi, _BELL_MATRIX, (0, 1), 4, rng)
    bob, charlie = _measure(rest, _X_BASIS, (0,), 2, rng)
    U = _correction_matrices()[bell, bob]
    out = np.einsum("nsij,nsj->nsi", U, charlie)
    fid = np.abs(np.einsum("si,nsi->ns", SECRETS.conj(), out)) ** 2
    return fid.mean(axis=1)


def qss_uncoded_mc(
    s: GhzDiagonalState, trials: int, seed: Seed = 0, chunk_size: int = CHUNK_SIZE, workers: int = 1
) -> MCResult:
    """Monte Carlo of the uncoded protocol with Born-rule sampled measurements.

    Each trial draws one loading basis state from ``s`` and runs the protocol
    once per axial secret; the trial value is the mean over secrets.
    """
    return _run_chunks(_uncoded_chunk, (s.probabilities, seed), trials, chunk_size, workers)


def _frame_chunk(args, chunk: int, n: int) -> np.ndarray:
    scheme, weights, payload, seed = args
    rng = _rng(seed, 2, chunk)
    comp = _sample_categorical(rng, weights, (n, qecc.N_QUBITS))
    classes = qecc.logical_class_array()
    if scheme == "secret":
        chans = payload
        cdf = np.cumsum(chans, axis=1)[comp]  # (n, 5, 4)
        u = rng.random((n, qecc.N_QUBITS, 1)) * cdf[..., -1:]
        letter = np.minimum((u >= cdf).sum(axis=-1), 3)
        pattern = letter @ (4 ** np.arange(qecc.N_QUBITS - 1, -1, -1))
        ok = classes[pattern] == 0
        return np.where(ok, 1.0, 1.0 / 3.0)
    letters = payload[comp]  # (n, 5, 3)
    return _shares_pattern_fidelity(letters)


def _dense_chunk(args, chunk: int, n: int) -> np.ndarray:
    weights, states, seed = args
    rng = _rng(seed, 3, chunk)
    tables = qecc.code_tables()
    gens = [sign * pauli_matrix(g) for sign, g in tables.generators]
    corr = [pauli_matrix(c) for c in tables.corrections]
    encoded = np.stack([qecc.encode(sec) for sec in SECRETS])  # (6, 32)
    U = _correction_matrices()
    values = np.empty(n)
    for t in range(n):
        comp = _sample_categorical(rng, weights, qecc.N_QUBITS)
        psi = encoded
        for k in range(qecc.N_QUBITS):
            # qubits: 5 code/Charlie slots + A, B, C of triple k
            full = np.einsum("si,j->sij", psi, states[comp[k]]).reshape(6, 256)
            bell, rest = _measure(full, _BELL_MATRIX, (k, 5), 8, rng)
            # rest: 4 untouched slots, B, C
            bob, rest = _measure(rest, _X_BASIS, (4,), 6, rng)
            rest = _apply_rowwise(rest, U[bell, bob], 4, 5)
            rest = np.moveaxis(rest.reshape((6,) + (2,) * 5), 5, 1 + k).reshape(6, 32)
            psi = rest
        syn = np.zeros(6, dtype=int)
        for G in gens:
            plus = 0.5 * (psi + psi @ G.T)
            minus = psi - plus
            pr = np.stack(
                [np.einsum("si,si->s", plus.conj(), plus).real, np.einsum("si,si->s", minus.conj(), minus).real],
                axis=1,
            )
            bit = _sample_rows(pr, rng)
            chosen = np.where(bit[:, None] == 0, plus, minus)
            psi = chosen / np.sqrt(np.take_along_axis(pr, bit[:, None], axis=1))
            syn = (syn << 1) | bit
        fixed = np.stack([corr[s] @ row for s, row in zip(syn, psi)])
        values[t] = (np.abs(np.einsum("si,si->s", encoded.conj(), fixed)) ** 2).mean()
    return values


def _apply_rowwise(psi: np.ndarray, U: np.ndarray, target: int, n: int) -> np.ndarray:
    """Apply a different single-qubit unitary to ``target`` in each row."""
    parts = psi.reshape(psi.shape[0], 2**target, 2, 2 ** (n - target - 1))
    return np.einsum("sij,sajb->saib", U, parts).reshape(psi.shape)


def qss_coded_fidelity_mc(
    noise: TripleNoise,
    trials: int,
    seed: Seed = 0,
    scheme: str = "secret",
    engine: str = "frame",
    chunk_size: int = CHUNK_SIZE,
    workers: int = 1,
) -> MCResult:
    """Monte Carlo estimate of five-qubit-coded QSS fidelity.

    Parameters
    ----------
    noise
        Loading state of each triple, or a 3-qubit Pauli channel.
    trials
        Number of independent five-triple draws.
    seed
        Master seed; every chunk of ``chunk_size`` trials uses its own Philox
        stream derived from it, so results do not depend on ``workers``.
    scheme
        ``"secret"`` or ``"shares"``, see the module docstring.
    engine
        ``"frame"`` propagates sampled Pauli errors through the decoder
        tables; ``"dense"`` (secret scheme only) simulates every measurement
        on state vectors.

    Returns
    -------
    MCResult
        Mean fidelity, its standard error and the trial count.
    """
    if scheme not in ("secret", "shares"):
        raise DomainError(f"unknown coding scheme {scheme!r}")
    if engine == "dense":
        if scheme != "secret":
            raise DomainError("the dense engine implements the secret-encoding scheme only")
        states, weights, _ = _triple_components(noise)
        return _run_chunks(_dense_chunk, (weights, states, seed), trials, min(chunk_size, 256), workers)
    if engine != "frame":
        raise DomainError(f"unknown engine {engine!r}")
    if scheme == "secret":
        _, weights, chans = _triple_components(noise)
        args = ("secret", weights, chans, seed)
    else:
        ch = _shares_channel(noise)
        args = ("shares", ch.probabilities, _party_letters(ch), seed)
    return _run_chunks(_frame_chunk, args, trials, chunk_size, workers)
