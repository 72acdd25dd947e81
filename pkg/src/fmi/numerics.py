"""Dense complex matrix helpers: Hermitian parts, positivity verdicts, residuals.

Matrices in this package are small (rarely above 20x20), so positivity is
decided from a full Hermitian eigendecomposition. The smallest eigenvalue is
kept as a witness in every report.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError

#: Absolute eigenvalue tolerance before scaling by the matrix magnitude.
BASE_TOL = 1e-9


def as_cmatrix(M) -> np.ndarray:
    """Coerce ``M`` to a finite 2-D complex array.

    Scalars become 1x1 matrices and 1-D inputs become columns.
    """
    arr = np.asarray(M, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    elif arr.ndim != 2:
        raise ShapeError(f"expected a matrix, got array of shape {arr.shape}")
    if arr.size == 0:
        raise ShapeError("empty matrix")
    if not np.all(np.isfinite(arr)):
        raise ShapeError("matrix has non-finite entries")
    return arr


def _square(M) -> np.ndarray:
    arr = as_cmatrix(M)
    if arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def adjoint(M: np.ndarray) -> np.ndarray:
    return np.conj(M).T


def hermitian_part(M) -> np.ndarray:
    """Return ``(M + M*) / 2``."""
    arr = _square(M)
    return 0.5 * (arr + adjoint(arr))


def hermitian_defect(M) -> float:
    """Largest entry of ``|M - M*|``."""
    arr = _square(M)
    return float(np.max(np.abs(arr - adjoint(arr))))


def min_eigenvalue(H) -> float:
    """Smallest eigenvalue of the Hermitian part of ``H``."""
    return float(np.linalg.eigvalsh(hermitian_part(H))[0])


def matrix_scale(M) -> float:
    """Spectral radius bound used to scale tolerances: ``max(1, max row sum)``."""
    arr = as_cmatrix(M)
    return max(1.0, float(np.max(np.sum(np.abs(arr), axis=1))))


def default_tolerance(M, base: float = BASE_TOL) -> float:
    return base * matrix_scale(M)


@dataclass(frozen=True)
class PsdReport:
    min_eigenvalue: float
    tolerance: float
    verdict: bool
    hermitian_defect: float


def check_psd(H, tol: float | None = None) -> PsdReport:
    """Decide whether ``H`` is positive semidefinite within ``tol``.

    With ``tol=None`` the tolerance is ``1e-9 * max(1, max row sum of |H|)``.
    A Hermitian defect above the tolerance fails the verdict outright instead
    of being symmetrized away.
    """
    arr = _square(H)
    if tol is None:
        tol = default_tolerance(arr)
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    defect = hermitian_defect(arr)
    lam = min_eigenvalue(arr)
    return PsdReport(
        min_eigenvalue=lam,
        tolerance=float(tol),
        verdict=bool(lam >= -tol and defect <= tol),
        hermitian_defect=defect,
    )


def residual_norm(M, N) -> float:
    """Max-entry distance ``max |M_ij - N_ij|``."""
    a, b = as_cmatrix(M), as_cmatrix(N)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b)))


def scaled_residual(M, N) -> float:
    """Residual divided by ``1 + max|entry|`` over both sides.

    Identities between products of resolvents are compared this way so a
    single threshold works whatever the magnitude of the data.
    """
    a, b = as_cmatrix(M), as_cmatrix(N)
    scale = 1.0 + max(float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return residual_norm(a, b) / scale
