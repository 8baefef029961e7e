"""Asymptotic yield of one-way hashing purification."""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import xlogy

from .teleport import BellDiagonalState

__all__ = [
    "von_neumann_entropy",
    "hashing_yield",
    "werner_yield",
    "yield_threshold",
    "purified_throughput",
    "purified_fidelity",
]


def von_neumann_entropy(state: BellDiagonalState) -> float:
    """Entropy in bits; Shannon entropy of the Bell-diagonal weights."""
    p = state.as_array()
    return float(-xlogy(p, p).sum() / math.log(2))


def hashing_yield(state: BellDiagonalState) -> float:
    """``D = 1 - S``.  Negative values are returned as is."""
    return 1.0 - von_neumann_entropy(state)


def werner_yield(ps):
    """Werner-state yield ``1 + Ps log2 Ps + (1-Ps) log2((1-Ps)/3)``; accepts arrays."""
    ps = np.asarray(ps, dtype=float)
    q = 1.0 - ps
    d = 1.0 + (xlogy(ps, ps) + xlogy(q, q / 3.0)) / math.log(2)
    return float(d) if d.ndim == 0 else d


def yield_threshold(xtol: float = 1e-12) -> float:
    """Werner fidelity at which the hashing yield crosses zero."""
    return brentq(werner_yield, 0.25 + 1e-9, 1.0 - 1e-9, xtol=xtol)


def purified_throughput(d: float, n_success: float) -> float:
    """Distilled singlet rate ``max(D, 0) * N_success``."""
    return max(d, 0.0) * n_success


def purified_fidelity(d: float) -> float:
    """Fidelity of a distilled pair: 1 when any yield exists, otherwise undefined (nan)."""
    return 1.0 if d > 0 else math.nan
