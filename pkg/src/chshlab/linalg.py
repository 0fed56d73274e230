"""Small complex linear algebra: 2x2/4x4 products, adjoints, Kronecker
products, and a cyclic Jacobi eigensolver for Hermitian matrices.

Everything in this package lives in dimension 2 or 4, so no attempt is made
at generality or performance beyond that. All functions are pure; returned
arrays are freshly allocated and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_JACOBI_SWEEPS = 100

# Eigenvalues closer than this are treated as one degenerate cluster.
DEGENERACY_GAP = 1e-8


class NonHermitianError(ValueError):
    """Input matrix is not Hermitian within the requested tolerance."""


class EigenConvergenceError(RuntimeError):
    """Jacobi sweeps did not reduce the off-diagonal below tolerance."""


def _as_square(m, max_dim: int | None = None) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if max_dim is not None and a.shape[0] > max_dim:
        raise ValueError(f"matrix dimension {a.shape[0]} exceeds supported maximum {max_dim}")
    return a


def mat_mul(a, b) -> np.ndarray:
    """Matrix product of two equally sized square matrices."""
    a = _as_square(a)
    b = _as_square(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return _as_square(a).conj().T.copy()


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices, first factor on the slow index.

    The resulting 4x4 basis order is |x x>, |x y>, |y x>, |y y> with the
    first factor's label leading; every 4x4 object in this package uses it.
    """
    a = _as_square(a)
    b = _as_square(b)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError("tensor_product expects two 2x2 matrices")
    return np.kron(a, b)


def is_hermitian(m, tol: float = 1e-12) -> bool:
    """True iff the largest entry of |m - m^dagger| is at most tol."""
    a = _as_square(m)
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (real, ascending) with paired orthonormal eigenvectors.

    ``eigenvectors[:, i]`` belongs to ``eigenvalues[i]``. For degenerate
    eigenvalues only the spanned subspace is well defined, so tests on
    near-degenerate clusters should compare projectors, not vectors.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Sum of eigenvalue-weighted projectors; reproduces the input."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def projector(self, indices) -> np.ndarray:
        """Orthogonal projector onto the span of the selected eigenvectors."""
        v = self.eigenvectors[:, list(indices)]
        return v @ v.conj().T


def _jacobi_rotation(n: int, p: int, q: int, apq: complex, app: float, aqq: float) -> np.ndarray:
    r = abs(apq)
    phase = apq / r
    tau = (aqq - app) / (2.0 * r)
    if tau == 0.0:
        t = 1.0
    else:
        t = -math.copysign(1.0, tau) / (abs(tau) + math.hypot(tau, 1.0))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    g = np.eye(n, dtype=complex)
    g[p, p] = c
    g[q, q] = c
    g[p, q] = -s * phase
    g[q, p] = s * np.conj(phase)
    return g


def _off_diagonal_max(a: np.ndarray) -> float:
    n = a.shape[0]
    return max((abs(a[i, j]) for i in range(n) for j in range(i + 1, n)), default=0.0)


def _gram_schmidt_clusters(w: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Re-orthonormalize eigenvector columns inside degenerate clusters."""
    n = len(w)
    i = 0
    while i < n:
        j = i + 1
        while j < n and w[j] - w[j - 1] < DEGENERACY_GAP:
            j += 1
        if j - i > 1:
            for k in range(i, j):
                col = v[:, k].copy()
                for m in range(i, k):
                    col -= (v[:, m].conj() @ col) * v[:, m]
                v[:, k] = col / np.linalg.norm(col)
        i = j
    return v


def hermitian_eigen(m, tol: float = 1e-12) -> SpectralDecomposition:
    """Full spectral decomposition of a Hermitian matrix by cyclic Jacobi.

    Sweeps unitary plane rotations over all off-diagonal positions until the
    largest off-diagonal magnitude drops below ``tol``. Raises
    NonHermitianError if the input fails the Hermiticity check at ``tol``,
    and EigenConvergenceError after MAX_JACOBI_SWEEPS sweeps (which signals
    numerical pathology, not a tight iteration budget: 4x4 inputs converge
    in well under ten sweeps).
    """
    a = _as_square(m, max_dim=4)
    if not is_hermitian(a, tol):
        raise NonHermitianError(f"matrix is not Hermitian within {tol}")
    n = a.shape[0]
    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=complex)
    for _ in range(MAX_JACOBI_SWEEPS):
        if _off_diagonal_max(a) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) <= tol / (4.0 * n):
                    continue
                g = _jacobi_rotation(n, p, q, a[p, q], a[p, p].real, a[q, q].real)
                a = g.conj().T @ a @ g
                v = v @ g
    else:
        raise EigenConvergenceError(
            f"off-diagonal {_off_diagonal_max(a):.3e} after {MAX_JACOBI_SWEEPS} sweeps"
        )
    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = _gram_schmidt_clusters(w, v[:, order])
    w.setflags(write=False)
    v.setflags(write=False)
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v)
