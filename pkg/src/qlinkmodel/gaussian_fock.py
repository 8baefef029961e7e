"""Fock-basis matrix elements of the two-mode Gaussian loading state.

The closed forms come from moment factoring of a complex Gaussian random
vector.  :func:`fock_diagonals_oracle` recomputes the same elements without
moment factoring, by integrating the anti-normally ordered characteristic
function against the inverse-relation kernel on a truncated 4-D
Gauss-Legendre grid.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ModelValidityError, OracleError
from .link_params import ModePairMoments

__all__ = [
    "FockDiagonals",
    "fock_diagonals",
    "fock_diagonals_oracle",
    "gaussian_matrix_element",
]

# Gaussian tails beyond 8 sigma per whitened axis are below 1e-14.
TRUNCATION_SIGMAS = 8.0
DEFAULT_NODES = 40
DEFAULT_CHECK_NODES = 32


@dataclass(frozen=True)
class FockDiagonals:
    """The four matrix elements of one mode pair.

    ``p00 = <00|rho|00>``, ``p10 = <10|rho|10>`` (equal to ``<01|rho|01>``),
    ``p11 = <11|rho|11>`` and ``pc = |<00|rho|11>|**2``.
    """

    p00: float
    p10: float
    p11: float
    pc: float

    def as_array(self) -> np.ndarray:
        return np.array([self.p00, self.p10, self.p11, self.pc])

    def identity_defect(self) -> float:
        """Relative violation of ``p00*p11 - pc == p10**2``."""
        lhs = self.p00 * self.p11 - self.pc
        rhs = self.p10**2
        return abs(lhs - rhs) / max(abs(rhs), abs(self.pc), 1e-300)


def fock_diagonals(m: ModePairMoments) -> FockDiagonals:
    """Closed-form ``(p00, p10, p11, pc)`` for a mode pair."""
    if m.a_param < 0:
        raise ModelValidityError(
            f"n_bar(1+n_bar) - n_tilde^2 = {m.a_param:.3e} < 0: "
            "operating point outside the single-photon model"
        )
    nb, nt, A = m.n_bar, m.n_tilde, m.a_param
    d = (1 + nb) ** 2 - nt**2
    return FockDiagonals(
        p00=1 / d,
        p10=A / d**2,
        p11=(A * A + nt * nt) / d**3,
        pc=nt * nt / d**4,
    )


@lru_cache(maxsize=8)
def _legendre_grid(nodes: int):
    x, w = np.polynomial.legendre.leggauss(nodes)
    x = x * TRUNCATION_SIGMAS
    w = w * TRUNCATION_SIGMAS
    grid = np.stack(np.meshgrid(x, x, x, x, indexing="ij"), axis=-1).reshape(-1, 4)
    weights = np.einsum("i,j,k,l->ijkl", w, w, w, w).ravel()
    weights = weights * np.exp(-0.5 * np.einsum("ij,ij->i", grid, grid))
    grid.setflags(write=False)
    weights.setflags(write=False)
    return grid, weights


def _quadratic_form(m: ModePairMoments, pair: str) -> np.ndarray:
    # chi_A = exp(-u^T Q u / 2), u = (Re zS, Im zS, Re zI, Im zI)
    if pair == "SxIy":
        s = 1.0
    elif pair == "SyIx":
        s = -1.0
    else:
        raise ValueError(f"unknown mode pair {pair!r}")
    a, nt = 1 + m.n_bar, m.n_tilde
    return 2.0 * np.array(
        [
            [a, 0, -s * nt, 0],
            [0, a, 0, s * nt],
            [-s * nt, 0, a, 0],
            [0, s * nt, 0, a],
        ]
    )


def _kernel(bra: int, ket: int, z: np.ndarray) -> np.ndarray:
    # <bra| exp(-z a^dag) exp(z* a) |ket> for photon numbers 0/1
    if (bra, ket) == (0, 0):
        return np.ones_like(z)
    if (bra, ket) == (0, 1):
        return np.conj(z)
    if (bra, ket) == (1, 0):
        return -z
    if (bra, ket) == (1, 1):
        return 1 - np.abs(z) ** 2
    raise ValueError("only photon numbers 0 and 1 are supported")


def _samples(m: ModePairMoments, pair: str, nodes: int):
    grid, weights = _legendre_grid(nodes)
    Q = _quadratic_form(m, pair)
    chol = np.linalg.cholesky(np.linalg.inv(Q))
    u = grid @ chol.T
    # d^2zS d^2zI / pi^2, with the Jacobian of u = chol w
    g = weights * (np.linalg.det(chol) / np.pi**2)
    zs = u[:, 0] + 1j * u[:, 1]
    zi = u[:, 2] + 1j * u[:, 3]
    return g, zs, zi


def gaussian_matrix_element(
    m: ModePairMoments,
    bra: tuple[int, int],
    ket: tuple[int, int],
    pair: str = "SxIy",
    nodes: int = DEFAULT_NODES,
) -> complex:
    """``<bra|rho|ket>`` of a mode pair by direct quadrature.

    ``bra`` and ``ket`` are ``(n_signal, n_idler)`` photon numbers in {0, 1}.
    Used to spot-check elements the closed forms never touch, such as the
    vanishing Bell-basis coherences.
    """
    g, zs, zi = _samples(m, pair, nodes)
    vals = g * _kernel(bra[0], ket[0], zs) * _kernel(bra[1], ket[1], zi)
    return complex(vals.sum())


def _quadrature_elements(m: ModePairMoments, pair: str, nodes: int) -> np.ndarray:
    g, zs, zi = _samples(m, pair, nodes)
    ks, ki = 1 - np.abs(zs) ** 2, 1 - np.abs(zi) ** 2
    p00 = g.sum()
    p10 = (g * ks).sum()
    p11 = (g * ks * ki).sum()
    pc = abs((g * np.conj(zs) * np.conj(zi)).sum()) ** 2
    return np.array([p00, p10, p11, pc])


def fock_diagonals_oracle(
    m: ModePairMoments,
    nodes: int = DEFAULT_NODES,
    check_nodes: int = DEFAULT_CHECK_NODES,
    rtol: float = 1e-6,
    atol: float = 1e-14,
    pair: str = "SxIy",
) -> FockDiagonals:
    """Quadrature estimate of :func:`fock_diagonals`.

    The integral is evaluated twice, at ``nodes`` and ``check_nodes`` points
    per axis; the difference is taken as the error estimate of the coarser
    rule and therefore bounds the finer one.

    Raises
    ------
    OracleError
        If the error estimate of any element exceeds ``rtol * |value| + atol``.
    """
    fine = _quadrature_elements(m, pair, nodes)
    coarse = _quadrature_elements(m, pair, check_nodes)
    err = np.abs(fine - coarse)
    bound = rtol * np.abs(fine) + atol
    if np.any(err > bound):
        worst = int(np.argmax(err / bound))
        raise OracleError(
            f"quadrature did not converge for element {['p00', 'p10', 'p11', 'pc'][worst]}: "
            f"estimated error {err[worst]:.3e} > {bound[worst]:.3e}"
        )
    return FockDiagonals(*(float(v) for v in fine))
