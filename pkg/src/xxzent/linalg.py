"""Dense complex linear algebra for 4x4 Hermitian problems.

Everything downstream works in the fixed product basis
{|1,1>, |1,0>, |0,1>, |0,0>} (index 0..3), so the only solver needed is a
cyclic Jacobi eigensolver for 4x4 Hermitian matrices.  Keeping the solver
in-package (rather than calling out to LAPACK) makes the spectral route a
genuinely independent cross-check of the closed-form spectrum.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

# Basis labels for index 0..3; shared convention for every matrix here.
BASIS_LABELS = ("|1,1>", "|1,0>", "|0,1>", "|0,0>")

HERMITICITY_TOL = 1e-12
PSD_TOL = 1e-12
OFF_DIAGONAL_TOL = 1e-13
MAX_SWEEPS = 100

# sigma_y (x) sigma_y: real, symmetric, involutory spin-flip operator.
SPIN_FLIP = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=complex,
)


class NonHermitianError(ValueError):
    """Input matrix is not Hermitian within HERMITICITY_TOL."""


class NoConvergenceError(RuntimeError):
    """Jacobi iteration exhausted its sweep budget (numerics bug, not user error)."""


class NotPSDError(ValueError):
    """Matrix has an eigenvalue below -PSD_TOL."""


class EigenSystem(NamedTuple):
    """Eigenvalues ascending; eigenvector column k pairs with eigenvalue k."""

    values: np.ndarray
    vectors: np.ndarray


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=complex) @ np.asarray(b, dtype=complex)


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=complex).conj().T


def conj(a: np.ndarray) -> np.ndarray:
    """Entrywise complex conjugate."""
    return np.asarray(a, dtype=complex).conj()


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest |m[i,j] - conj(m[j,i])| over all entries."""
    m = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(m - m.conj().T)))


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def _rotation(a: np.ndarray, p: int, q: int) -> np.ndarray | None:
    """Unitary zeroing a[p,q]; None when the entry is already zero.

    Phase out a[p,q], then rotate by the classic angle choice
    t = sign(tau)/(|tau| + sqrt(1+tau^2)) for the phased real 2x2 block.
    """
    gamma = a[p, q]
    r = abs(gamma)
    if r == 0.0:
        return None
    phase = gamma / r
    tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
    t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
    c = 1.0 / np.hypot(1.0, t)
    s = t * c
    u = np.eye(4, dtype=complex)
    u[p, p] = c
    u[p, q] = s
    u[q, p] = -s * phase.conjugate()
    u[q, q] = c * phase.conjugate()
    return u


def hermitian_eigen(matrix: np.ndarray) -> EigenSystem:
    """Full eigensystem of a 4x4 Hermitian matrix by cyclic Jacobi rotations.

    Raises NonHermitianError if the input fails the Hermiticity check and
    NoConvergenceError if the off-diagonal norm has not dropped below
    OFF_DIAGONAL_TOL within MAX_SWEEPS sweeps.
    """
    m = np.array(matrix, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if defect > HERMITICITY_TOL:
        raise NonHermitianError(
            f"matrix is not Hermitian: max asymmetry {defect:.3e} > {HERMITICITY_TOL:.0e}"
        )
    a = (m + m.conj().T) / 2.0
    v = np.eye(4, dtype=complex)
    for _ in range(MAX_SWEEPS):
        if _off_norm(a) <= OFF_DIAGONAL_TOL:
            break
        for p in range(3):
            for q in range(p + 1, 4):
                u = _rotation(a, p, q)
                if u is None:
                    continue
                a = u.conj().T @ a @ u
                v = v @ u
    else:
        raise NoConvergenceError(
            f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps "
            f"(off-diagonal norm {_off_norm(a):.3e})"
        )
    diag = a.diagonal().real
    order = np.argsort(diag, kind="stable")
    return EigenSystem(diag[order].copy(), v[:, order].copy())


def psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    """Hermitian PSD square root R with R @ R = matrix.

    Eigenvalues in [-PSD_TOL, 0) are clamped to zero; anything more negative
    raises NotPSDError.
    """
    values, vectors = hermitian_eigen(matrix)
    if values[0] < -PSD_TOL:
        raise NotPSDError(
            f"matrix is not positive semidefinite: min eigenvalue {values[0]:.3e}"
        )
    roots = np.sqrt(np.clip(values, 0.0, None))
    result = (vectors * roots) @ vectors.conj().T
    return (result + result.conj().T) / 2.0


def singular_values(matrix: np.ndarray) -> np.ndarray:
    """Singular values of a 4x4 complex matrix, descending.

    One-sided Jacobi: rotate column pairs until mutually orthogonal, then the
    singular values are the column norms.  No Gram matrix is ever formed, so
    tiny singular values keep full absolute accuracy instead of the sqrt-of-
    roundoff floor that squaring would impose.
    """
    a = np.array(matrix, dtype=complex)
    if a.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
    for _ in range(MAX_SWEEPS):
        rotated = False
        for p in range(3):
            for q in range(p + 1, 4):
                app = float(np.vdot(a[:, p], a[:, p]).real)
                aqq = float(np.vdot(a[:, q], a[:, q]).real)
                apq = complex(np.vdot(a[:, p], a[:, q]))
                scale = np.sqrt(app * aqq)
                if scale == 0.0 or abs(apq) <= 1e-15 * scale:
                    continue
                rotated = True
                r = abs(apq)
                phase = apq / r
                tau = (aqq - app) / (2.0 * r)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                col_p = c * a[:, p] - s * phase.conjugate() * a[:, q]
                col_q = s * phase * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = col_p, col_q
        if not rotated:
            break
    else:
        raise NoConvergenceError(
            f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps"
        )
    norms = np.sqrt(np.sum(np.abs(a) ** 2, axis=0))
    return np.sort(norms)[::-1]
