"""One- and two-site reduced density matrices and entanglement measures.

The two-site RDM of adjacent sites in the quench state has the fixed
sparsity pattern imposed by translation invariance and the remnants of
parity symmetry: the diagonal carries (rho11, rho22, rho22, rho44), the
parity-even off-diagonal entries are rho14 (double flip) and rho23
(exchange), and the parity-odd column entries rho12, rho24 come from the
single-mode expectations <c_1>, <c_2>.

Physical inputs give a positive matrix up to roundoff; construction
repairs eigenvalues in [-NEG_TOL, 0) by clamping and renormalizing and
treats anything more negative as an upstream inconsistency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERM_TOL = 1e-9
TRACE_TOL = 1e-9
NEG_TOL = 1e-9

PAULI_2 = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_YY = np.kron(PAULI_2["y"], PAULI_2["y"]).real  # sigma_y x sigma_y, real


@dataclass(frozen=True)
class SingleSiteRDM:
    """A qubit state as its Bloch vector (bx, by, bz)."""

    bloch: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.bloch, dtype=float)
        if b.shape != (3,):
            raise ValueError(f"bloch vector must have shape (3,), got {b.shape}")
        if np.linalg.norm(b) > 1.0 + 1e-9:
            raise ValueError(f"bloch vector leaves the unit ball: {b}")
        object.__setattr__(self, "bloch", b)

    @property
    def matrix(self) -> np.ndarray:
        b = self.bloch
        return 0.5 * (PAULI_2["i"] + b[0] * PAULI_2["x"]
                      + b[1] * PAULI_2["y"] + b[2] * PAULI_2["z"])

    def purity(self) -> float:
        return float(0.5 * (1.0 + np.dot(self.bloch, self.bloch)))


@dataclass(frozen=True)
class TwoSiteRDM:
    """A validated 4x4 density matrix in the basis (uu, ud, du, dd)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        if np.abs(m - m.conj().T).max() > HERM_TOL:
            raise ValueError("matrix is not Hermitian within tolerance")
        m = (m + m.conj().T) / 2.0
        tr = m.trace().real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace deviates from 1 by {tr - 1.0:.3e}")
        w = np.linalg.eigvalsh(m)
        if w[0] < -NEG_TOL:
            raise ValueError(f"negative eigenvalue {w[0]:.3e} beyond repair")
        if w[0] < 0.0:
            w2, v = np.linalg.eigh(m)
            w2 = np.clip(w2, 0.0, None)
            m = (v * w2) @ v.conj().T
            m /= m.trace().real
        object.__setattr__(self, "matrix", m)

    def reduce(self, site: int) -> SingleSiteRDM:
        """Trace out the other site, keeping `site` (1 or 2)."""
        t = self.matrix.reshape(2, 2, 2, 2)
        m = np.einsum("ikjk->ij", t) if site == 1 else np.einsum("kikj->ij", t)
        bloch = [np.trace(m @ PAULI_2[a]).real for a in "xyz"]
        return SingleSiteRDM(np.array(bloch))


def assemble_two_site(even, rho12: complex, rho24: complex) -> TwoSiteRDM:
    """Two-site RDM from the parity-even block and the odd entries.

    `even` is an EvenObservables record; rho12 = (<c_1> - <c_2>)/2 and
    rho24 = (<c_1> + <c_2>)/2 fill the parity-breaking positions.  rho44
    closes the unit trace.
    """
    r11, r14, r23, r22 = even.rho11, even.rho14, even.rho23, even.rho22
    r44 = 1.0 - r11 - 2.0 * r22
    m = np.array([
        [r11, rho12, rho12, r14],
        [np.conj(rho12), r22, r23, rho24],
        [np.conj(rho12), r23, r22, rho24],
        [np.conj(r14), np.conj(rho24), np.conj(rho24), r44],
    ])
    return TwoSiteRDM(m)


def pauli_correlation(r: TwoSiteRDM, axis1: str, axis2: str) -> float:
    """<sigma^{axis1}_1 sigma^{axis2}_2> from the two-site matrix."""
    op = np.kron(PAULI_2[axis1], PAULI_2[axis2])
    return float(np.trace(r.matrix @ op).real)


def concurrence(r: TwoSiteRDM) -> float:
    """Wootters concurrence of the two-site state.

    Uses the Hermitian form: with rho~ = (y x y) rho* (y x y), the
    eigenvalues of sqrt(rho) rho~ sqrt(rho) are real non-negative and
    their square roots, sorted, give C = max(0, l1 - l2 - l3 - l4).
    """
    m = r.matrix
    w, v = np.linalg.eigh(m)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    tilde = _YY @ m.conj() @ _YY
    lam = np.linalg.eigvalsh(root @ tilde @ root)
    if lam[0] < -NEG_TOL:
        raise ValueError(f"spin-flipped spectrum has eigenvalue {lam[0]:.3e}")
    lam = np.sqrt(np.clip(lam[::-1], 0.0, None))
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))
