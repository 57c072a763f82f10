"""Symmetric eigendecomposition and the Laplacian pseudoinverse.

The eigensolver is a cyclic Jacobi iteration: numerically boring, always
orthonormal, and free of external solver dependencies. Output is made
reproducible by a fixed gauge: the all-ones direction is stored exactly as
(1/sqrt(N)) * ones, and every other column is flipped so its largest-magnitude
entry is positive. Within a repeated eigenvalue the basis is still only
determined up to rotation; consumers must restrict themselves to quantities
invariant under such rotations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DisconnectedGraphError, NumericError
from .graphs import Laplacian

# Convergence: off-diagonal Frobenius norm relative to the input's Frobenius
# norm. The cap is generous; well-conditioned symmetric input converges
# quadratically after the first few sweeps.
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

SYMMETRY_RTOL = 1e-10


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues (ascending), orthonormal basis, pseudoinverse, zero threshold."""

    eigenvalues: np.ndarray
    basis: np.ndarray
    pseudoinverse: np.ndarray
    zero_tol: float

    @property
    def n(self) -> int:
        return len(self.eigenvalues)


def _off_norm(a: np.ndarray) -> float:
    # Summing the off-diagonal entries directly; the subtraction form
    # fro(A)^2 - fro(diag)^2 cancels catastrophically near convergence.
    b = a.copy()
    np.fill_diagonal(b, 0.0)
    return float(np.linalg.norm(b))


def _jacobi(sym: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a symmetric matrix; returns (eigenvalues unsorted, rotations)."""
    a = sym.copy()
    n = a.shape[0]
    v = np.eye(n)
    target = JACOBI_TOL * float(np.linalg.norm(sym))
    # Pivots too small to move the off-norm are skipped; if the off-norm is
    # still above target at least one pivot exceeds target/n, so progress is
    # guaranteed.
    skip = target / max(1, 10 * n)
    if _off_norm(a) <= target:
        return np.diag(a).copy(), v
    for _ in range(JACOBI_MAX_SWEEPS):
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        if _off_norm(a) <= target:
            break
    else:
        achieved = _off_norm(a)
        raise NumericError(
            f"eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps:"
            f" off-diagonal norm {achieved:.3e}, target {target:.3e}"
        )
    return np.diag(a).copy(), v


def _fix_zero_block(basis: np.ndarray, m: int) -> None:
    """Rebuild the near-kernel columns 0..m-1 with (1/sqrt(N))*ones first.

    The ones direction lies in the kernel span, so a Gram-Schmidt pass over
    [ones, original kernel columns] yields an orthonormal kernel basis whose
    first vector is exact.
    """
    n = basis.shape[0]
    ones = np.full(n, 1.0 / np.sqrt(n))
    kept = [ones]
    for k in range(m):
        cand = basis[:, k].copy()
        for u in kept:
            cand -= (cand @ u) * u
        norm = float(np.linalg.norm(cand))
        if norm > 1e-6:
            kept.append(cand / norm)
        if len(kept) == m:
            break
    if len(kept) != m:
        raise NumericError("kernel basis reconstruction lost rank")
    for k, u in enumerate(kept):
        basis[:, k] = u


def _apply_sign_convention(basis: np.ndarray, skip_column: int) -> None:
    # Largest-magnitude entry made positive; argmax resolves ties at the
    # earliest index.
    for k in range(basis.shape[1]):
        if k == skip_column:
            continue
        if basis[np.argmax(np.abs(basis[:, k])), k] < 0:
            basis[:, k] *= -1.0


def _pinv_from(eigenvalues: np.ndarray, basis: np.ndarray, zero_tol: float) -> np.ndarray:
    inv = np.where(eigenvalues < zero_tol, 0.0, 1.0 / np.where(eigenvalues < zero_tol, 1.0, eigenvalues))
    return (basis * inv) @ basis.T


def eigendecompose(L: Laplacian | np.ndarray) -> SpectralData:
    """Full spectral decomposition of a symmetric Laplacian.

    Eigenvalues come back ascending; the basis is orthonormal with the gauge
    described in the module docstring; the pseudoinverse inverts every
    eigenvalue at or above zero_tol and zeroes the rest.
    """
    m_in = L.matrix if isinstance(L, Laplacian) else np.asarray(L, dtype=float)
    if m_in.ndim != 2 or m_in.shape[0] != m_in.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m_in.shape}")
    scale = max(1.0, float(np.abs(m_in).max()))
    if float(np.abs(m_in - m_in.T).max()) > SYMMETRY_RTOL * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    sym = (m_in + m_in.T) / 2.0

    raw_vals, raw_vecs = _jacobi(sym)
    order = np.argsort(raw_vals, kind="stable")
    eigenvalues = raw_vals[order]
    basis = raw_vecs[:, order]

    zero_tol = 1e-9 * max(1.0, float(eigenvalues[-1]))
    m = int(np.count_nonzero(eigenvalues < zero_tol))
    if m > 0:
        _fix_zero_block(basis, m)
    _apply_sign_convention(basis, skip_column=0 if m > 0 else -1)

    pinv = _pinv_from(eigenvalues, basis, zero_tol)
    for arr in (eigenvalues, basis, pinv):
        arr.setflags(write=False)
    return SpectralData(eigenvalues=eigenvalues, basis=basis, pseudoinverse=pinv, zero_tol=zero_tol)


def pseudoinverse(s: SpectralData, connected: bool | None = None) -> np.ndarray:
    """Moore-Penrose inverse of the decomposed Laplacian.

    Pass connected=True to assert the single-zero-eigenvalue precondition; a
    connected graph has exactly one eigenvalue below zero_tol, so finding more
    means the graph was misdeclared.
    """
    count = zero_eigenvalue_count(s)
    if connected and count != 1:
        raise DisconnectedGraphError(
            f"graph declared connected but {count} eigenvalues lie below"
            f" {s.zero_tol:g}; a connected graph has exactly one"
        )
    return _pinv_from(s.eigenvalues, s.basis, s.zero_tol)


def zero_eigenvalue_count(s: SpectralData) -> int:
    """Number of eigenvalues classified as zero (equals the component count)."""
    return int(np.count_nonzero(s.eigenvalues < s.zero_tol))
