"""Pfaffians of complex skew-symmetric matrices.

The Pfaffian shows up here as the value of a fermionic vacuum expectation
of a product of linear forms (Wick's theorem): the contraction matrix is
skew-symmetric and its Pfaffian is the full sum over pairings, signs
included.  The evaluator below eliminates two rows/columns at a time with
a Schur-complement update, picking the largest pivot in each column pair;
every row/column swap flips the sign, and the product of the 2x2 pivot
blocks accumulates the Pfaffian.  Cost is O(n^3) like an LU factorization.

Pivot magnitudes are compared as |Re| + |Im| rather than the complex
modulus: the L1 size is within sqrt(2) of the modulus (so pivoting is
just as stable) and is computed with exactly-rounded operations only,
which keeps the pivot choice, and therefore the low-order bits of the
result, independent of array layout and batch size.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np


class PfaffianConditionWarning(RuntimeWarning):
    """Emitted when elimination hits a pivot below the underflow guard.

    The returned value is 0 in that case (the matrix is numerically
    singular at working precision), never NaN.
    """


#: Pivots with L1 magnitude |Re| + |Im| below this are treated as zeros.
PIVOT_GUARD = 1e-300


def _l1_abs(z: np.ndarray) -> np.ndarray:
    """|Re z| + |Im z|, an exactly-rounded stand-in for the modulus."""
    return np.abs(z.real) + np.abs(z.imag)

#: Relative skewness tolerance accepted by SkewMatrix.
SKEW_TOL = 1e-12


@dataclass(frozen=True)
class SkewMatrix:
    """A validated skew-symmetric matrix of even dimension.

    Construction checks squareness, even dimension and skew-symmetry to
    within SKEW_TOL (relative to the largest entry), then antisymmetrizes
    exactly so downstream algebra sees m.T == -m to the last bit.
    """

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if m.shape[0] % 2:
            raise ValueError(f"dimension must be even, got {m.shape[0]}")
        m = m.astype(complex)
        scale = np.abs(m).max() if m.size else 0.0
        if m.size and np.abs(m + m.T).max() > SKEW_TOL * max(scale, 1.0):
            raise ValueError("matrix is not skew-symmetric within tolerance")
        object.__setattr__(self, "entries", (m - m.T) / 2.0)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def pfaffian(m) -> complex:
    """Pfaffian of a skew-symmetric matrix.

    Accepts a SkewMatrix or a plain ndarray; a plain array is trusted to
    be skew-symmetric (hot paths construct it that way) and is copied, not
    modified.  The empty matrix has Pfaffian 1 by convention.
    """
    a = m.entries if isinstance(m, SkewMatrix) else np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] % 2:
        raise ValueError(f"dimension must be even, got {a.shape[0]}")
    return _pfaffian_inplace(a.astype(complex, copy=True))


def pfaffian_batch(mats: np.ndarray) -> np.ndarray:
    """Pfaffians of a stack of skew-symmetric matrices, shape (B, n, n).

    Same pivoted elimination as `pfaffian`, advanced in lockstep across
    the batch so the per-step numpy overhead is shared.  Stacks whose
    pivot column vanishes are retired with Pfaffian 0 and dragged along
    inertly (their pivot is replaced by 1 to keep the arithmetic finite).
    """
    a = np.asarray(mats)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError(f"expected a (B, n, n) stack, got shape {a.shape}")
    nb, n = a.shape[0], a.shape[1]
    if n % 2:
        raise ValueError(f"dimension must be even, got {n}")
    pf = np.ones(nb, dtype=complex)
    if n == 0 or nb == 0:
        return pf
    a = a.astype(complex, copy=True)
    rows = np.arange(nb)
    alive = np.ones(nb, dtype=bool)
    for k in range(0, n, 2):
        col = _l1_abs(a[:, k + 1:, k])
        rel = np.argmax(col, axis=1)
        piv = col[rows, rel]
        dying = alive & (piv < PIVOT_GUARD)
        if np.any(dying):
            if np.any(piv[dying] > 0.0):
                warnings.warn(
                    "pivot below underflow guard; returning 0",
                    PfaffianConditionWarning,
                    stacklevel=2,
                )
            pf[dying] = 0.0
            alive &= ~dying
            if not np.any(alive):
                return pf
        p = k + 1 + rel
        need = alive & (p != k + 1)
        if np.any(need):
            nb_i, p_i = rows[need], p[need]
            tmp = a[nb_i, k + 1, :].copy()
            a[nb_i, k + 1, :] = a[nb_i, p_i, :]
            a[nb_i, p_i, :] = tmp
            tmp = a[nb_i, :, k + 1].copy()
            a[nb_i, :, k + 1] = a[nb_i, :, p_i]
            a[nb_i, :, p_i] = tmp
            pf[need] = -pf[need]
        b = a[:, k, k + 1]
        pf[alive] *= b[alive]
        if k + 2 < n:
            safe = np.where(np.abs(b) < PIVOT_GUARD, 1.0, b)
            c1 = a[:, k + 2:, k]
            c2 = a[:, k + 2:, k + 1]
            upd = c2[:, :, None] * c1[:, None, :]
            upd -= c1[:, :, None] * c2[:, None, :]
            upd /= safe[:, None, None]
            a[:, k + 2:, k + 2:] += upd
    return pf


def _pfaffian_inplace(a: np.ndarray) -> complex:
    """Destructive Pfaffian of a complex array known to be skew-symmetric."""
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0j
    pf = 1.0 + 0j
    for k in range(0, n, 2):
        # largest pivot in column k below the diagonal
        col = _l1_abs(a[k + 1:, k])
        p = k + 1 + int(np.argmax(col))
        piv = col[p - k - 1]
        if piv == 0.0:
            return 0.0 + 0j
        if piv < PIVOT_GUARD:
            warnings.warn(
                f"pivot {piv:.3e} below underflow guard; returning 0",
                PfaffianConditionWarning,
                stacklevel=3,
            )
            return 0.0 + 0j
        if p != k + 1:
            a[[k + 1, p], :] = a[[p, k + 1], :]
            a[:, [k + 1, p]] = a[:, [p, k + 1]]
            pf = -pf
        b = a[k, k + 1]
        pf *= b
        if k + 2 < n:
            c1 = a[k + 2:, k]
            c2 = a[k + 2:, k + 1]
            # Schur complement of the 2x2 pivot block [[0, b], [-b, 0]]
            a[k + 2:, k + 2:] += (np.outer(c2, c1) - np.outer(c1, c2)) / b
    return pf
