"""Brute-force reference for small rings: dense exact diagonalization.

This module recomputes, slowly and from first principles, everything the
fermionic machinery produces fast: the full 2^N spin Hilbert space is
diagonalized once per (N, g), the x-polarized initial state is rotated by
the eigenphases, and observables are read off by applying explicit
operator factors to the state vector.  It deliberately shares no code
with the momentum-space path so the two can disagree only if one of them
is wrong.

Conventions: basis states are bit strings with site 1 as the most
significant bit; bit value 0 means spin up (sz = +1).  Operators are
passed as sequences of (site, 2x2 matrix) factors, applied right to left
like a written product.  Helpers build the Jordan-Wigner composites
(string operators, fermion modes) in terms of such factors.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_SITES = 12

SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SPLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)   # raises down to up
SMINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
PAULI = {"x": SX, "y": SY, "z": SZ, "+": SPLUS, "-": SMINUS}


def _check_sites(n_sites: int) -> int:
    n = int(n_sites)
    if n < 4 or n % 2 or n > MAX_SITES:
        raise ValueError(
            f"oracle handles even 4 <= N <= {MAX_SITES}, got {n_sites!r}"
        )
    return n


def ring_hamiltonian(n_sites: int, g: float) -> np.ndarray:
    """Dense H = -sum_j (sx_j sx_{j+1} + g sz_j) with periodic closure."""
    n = _check_sites(n_sites)
    dim = 1 << n
    idx = np.arange(dim)
    # popcount of the bit string = number of down spins
    down = np.bitwise_count(idx).astype(float)
    h = np.zeros((dim, dim))
    h[idx, idx] = -g * (n - 2.0 * down)
    for j in range(1, n + 1):
        j_next = 1 if j == n else j + 1
        mask = (1 << (n - j)) | (1 << (n - j_next))
        h[idx, idx ^ mask] -= 1.0
    return h


class EDQuench:
    """Exact post-quench evolution of the x-polarized state on a small ring."""

    def __init__(self, n_sites: int, g: float):
        self.n_sites = _check_sites(n_sites)
        self.g = float(g)
        h = ring_hamiltonian(n_sites, g)
        self.eigenvalues, self._eigenvectors = np.linalg.eigh(h)
        dim = 1 << self.n_sites
        psi0 = np.full(dim, 2.0 ** (-self.n_sites / 2), dtype=complex)
        self._coef0 = self._eigenvectors.conj().T @ psi0

    def state(self, t: float) -> np.ndarray:
        """State vector at time t (unit norm up to roundoff)."""
        phases = np.exp(-1j * self.eigenvalues * t)
        return self._eigenvectors @ (phases * self._coef0)

    def energy(self) -> float:
        """Conserved energy <R|H|R>."""
        return float(np.sum(self.eigenvalues * np.abs(self._coef0) ** 2))


@lru_cache(maxsize=2)
def quench_oracle(n_sites: int, g: float) -> EDQuench:
    """Cached EDQuench; the eigendecomposition dominates the cost."""
    return EDQuench(n_sites, g)


def apply_factors(state: np.ndarray, n_sites: int, factors) -> np.ndarray:
    """Apply a product of (site, 2x2) factors, rightmost factor first."""
    n = int(n_sites)
    psi = np.asarray(state, dtype=complex)
    if psi.shape != (1 << n,):
        raise ValueError(f"state has shape {psi.shape}, expected ({1 << n},)")
    for site, op in reversed(list(factors)):
        site = int(site)
        if not 1 <= site <= n:
            raise ValueError(f"site {site} outside 1..{n}")
        op = np.asarray(op, dtype=complex)
        if op.shape != (2, 2):
            raise ValueError(f"factor at site {site} has shape {op.shape}")
        block = psi.reshape(1 << (site - 1), 2, -1)
        psi = np.einsum("ab,ibj->iaj", op, block).reshape(-1)
    return psi


def expectation(state: np.ndarray, n_sites: int, factors) -> complex:
    """<state| product of factors |state>."""
    return complex(np.vdot(state, apply_factors(state, n_sites, factors)))


def pauli_factor(axis: str, site: int) -> list[tuple[int, np.ndarray]]:
    return [(site, PAULI[axis])]


def string_x(j: int) -> list[tuple[int, np.ndarray]]:
    """X_j = sz_1 ... sz_{j-1} sx_j, the x operator dressed with the z string."""
    return [(l, SZ) for l in range(1, j)] + [(j, SX)]


def fermion_annihilation(j: int) -> list[tuple[int, np.ndarray]]:
    """Jordan-Wigner c_j = prod_{l<j}(-sz_l) s-_j."""
    return [(l, -SZ) for l in range(1, j)] + [(j, SMINUS)]


def fermion_creation(j: int) -> list[tuple[int, np.ndarray]]:
    return [(l, -SZ) for l in range(1, j)] + [(j, SPLUS)]


def two_site_rdm(state: np.ndarray, n_sites: int, sites=(1, 2)) -> np.ndarray:
    """Reduced density matrix of two sites, basis (uu, ud, du, dd).

    The first element of `sites` indexes the slower bit of the two-site
    basis, so the default (1, 2) matches the adjacent-pair layout used by
    the fermionic path.
    """
    n = int(n_sites)
    a, b = (int(s) for s in sites)
    if not (1 <= a <= n and 1 <= b <= n) or a == b:
        raise ValueError(f"sites must be distinct and within 1..{n}, got {sites}")
    psi = np.asarray(state, dtype=complex).reshape((2,) * n)
    psi = np.moveaxis(psi, (a - 1, b - 1), (0, 1)).reshape(4, -1)
    return psi @ psi.conj().T


def one_site_rdm(state: np.ndarray, n_sites: int, site: int = 1) -> np.ndarray:
    """Reduced density matrix of a single site, basis (u, d)."""
    n = int(n_sites)
    psi = np.asarray(state, dtype=complex).reshape((2,) * n)
    psi = np.moveaxis(psi, site - 1, 0).reshape(2, -1)
    return psi @ psi.conj().T


def parity_weights(state: np.ndarray, n_sites: int) -> tuple[float, float]:
    """Squared norms of the even/odd fermion-parity components.

    Parity of a basis state is (-1)^(number of down spins); the initial
    x-polarized state splits exactly half and half, and the split is
    conserved by H.
    """
    n = int(n_sites)
    psi = np.asarray(state)
    odd = (np.bitwise_count(np.arange(1 << n)) & 1).astype(bool)
    w_odd = float(np.sum(np.abs(psi[odd]) ** 2))
    w_even = float(np.sum(np.abs(psi[~odd]) ** 2))
    return w_even, w_odd
