"""Dense complex eigendecomposition with an enforced accuracy contract.

Every consumer of spectra in this package goes through :func:`eig`.  The
heavy lifting is delegated to LAPACK's non-symmetric solver (zgeev via
scipy), but the residual contract ||M v - lambda v|| <= 1e-9 max(1, ||M||_F)
is checked at this boundary whenever eigenvectors are requested, and a
violation raises instead of returning silently degraded results.

Policy decisions (which eigenvalue counts as "zero", which spectrum counts
as "real") do not live here; see :mod:`kitaevgl.analysis`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvalidMatrixError, SolverFailureError

__all__ = ["RESIDUAL_RTOL", "SpectrumResult", "eig", "max_imag"]

#: Residual bound, relative to max(1, Frobenius norm).
RESIDUAL_RTOL = 1e-9


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalues sorted by (real, imag); optional aligned eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    residuals: np.ndarray | None
    matrix_norm: float

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        if self.eigenvectors is not None:
            self.eigenvectors.setflags(write=False)
        if self.residuals is not None:
            self.residuals.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.eigenvalues.shape[0]


def _validated(matrix) -> np.ndarray:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidMatrixError(f"matrix must be square, got shape {m.shape}")
    if m.shape[0] < 1:
        raise InvalidMatrixError("matrix dimension must be >= 1")
    m = m.astype(complex, copy=False)
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise InvalidMatrixError("matrix entries must be finite")
    return m


def eig(matrix, want_vectors: bool = False) -> SpectrumResult:
    """Full spectrum of a dense complex square matrix.

    Eigenvalues come back sorted by real part, ties broken by imaginary
    part, so repeated runs and golden files line up.  With
    ``want_vectors=True`` the unit-norm right eigenvectors are returned as
    columns aligned with the eigenvalues, together with the per-pair
    residuals ||M v - lambda v||_2; the residual contract is enforced.
    """
    m = _validated(matrix)
    norm = float(np.linalg.norm(m, "fro"))
    try:
        if want_vectors:
            w, v = scipy.linalg.eig(m, check_finite=False)
        else:
            w = scipy.linalg.eigvals(m, check_finite=False)
            v = None
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise SolverFailureError(
            f"eigensolver did not converge: {exc}",
            diagnostics={"dimension": m.shape[0], "matrix_norm": norm},
        ) from exc

    order = np.lexsort((w.imag, w.real))
    w = np.ascontiguousarray(w[order])
    residuals = None
    if v is not None:
        v = np.ascontiguousarray(v[:, order])
        v = v / np.linalg.norm(v, axis=0)
        residuals = np.linalg.norm(m @ v - v * w[np.newaxis, :], axis=0)
        bound = RESIDUAL_RTOL * max(1.0, norm)
        worst = float(residuals.max())
        if worst > bound:
            raise SolverFailureError(
                f"residual {worst:.3e} exceeds bound {bound:.3e}",
                diagnostics={
                    "dimension": m.shape[0],
                    "matrix_norm": norm,
                    "max_residual": worst,
                    "bound": bound,
                },
            )
    return SpectrumResult(
        eigenvalues=w, eigenvectors=v, residuals=residuals, matrix_norm=norm
    )


def max_imag(spectrum: SpectrumResult) -> float:
    """Largest |Im lambda| over the spectrum."""
    return float(np.abs(spectrum.eigenvalues.imag).max())
