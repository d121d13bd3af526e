"""
Spectral calculus on Hermitian matrices.

Every function here is a pure function of its arguments and returns a fresh
``numpy.ndarray``. Fractional powers follow the support convention: eigenvalues
within the clip tolerance of zero are treated as exactly zero, ``0**t == 0`` for
``t > 0`` and ``A**0`` is the projector onto the support of ``A``.
"""

from typing import Callable, NamedTuple

import numpy as np
import scipy.linalg

from imaginarity.conf import settings
from imaginarity.helpers import (
    DimensionMismatchError,
    DomainError,
    NonFiniteError,
    NotHermitianError,
    NotPositiveDefiniteError,
    NotPositiveSemidefiniteError,
)

HermitianMatrix = np.ndarray


def as_square_matrix(A) -> np.ndarray:
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise DimensionMismatchError(
            f"expected a non-empty square matrix, got shape {M.shape}"
        )
    if not np.isfinite(M).all():
        raise NonFiniteError("matrix has NaN or infinite entries")
    return M


def hermitian_part(A) -> np.ndarray:
    M = np.asarray(A, dtype=complex)
    return (M + M.conj().T) / 2


def hermitian_asymmetry(A) -> float:
    M = as_square_matrix(A)
    return float(np.max(np.abs(M - M.conj().T)))


def hermitian_tolerance(A) -> float:
    M = np.asarray(A)
    return settings.IMAGINARITY_HERMITIAN_TOL * max(1.0, float(np.max(np.abs(M))))


def check_hermitian(A, tol=None) -> np.ndarray:
    M = as_square_matrix(A)
    asymmetry = hermitian_asymmetry(M)
    tol = hermitian_tolerance(M) if tol is None else tol
    if asymmetry > tol:
        raise NotHermitianError(
            f"matrix is not Hermitian: max |A - A^H| = {asymmetry:.3e} "
            f"exceeds {tol:.3e}",
            magnitude=asymmetry,
        )
    return M


def clip_tolerance(eigenvalues) -> float:
    top = float(np.max(eigenvalues)) if len(eigenvalues) else 0.0
    return settings.IMAGINARITY_CLIP_TOL * max(1.0, top)


def pd_tolerance(eigenvalues) -> float:
    top = float(np.max(eigenvalues)) if len(eigenvalues) else 0.0
    return settings.IMAGINARITY_PD_TOL * max(1.0, top)


def clip_spectrum(values) -> np.ndarray:
    """Zero the eigenvalues within the clip tolerance; reject clearly negative ones."""
    tol = clip_tolerance(values)
    if values[0] < -tol:
        raise NotPositiveSemidefiniteError(
            f"matrix is not positive semidefinite: min eigenvalue {values[0]:.3e} "
            f"below -{tol:.3e}",
            magnitude=-float(values[0]),
        )
    return np.where(values <= tol, 0.0, values)


def _spectral_power(values, t):
    if t == 0:
        return (values > 0).astype(float)
    out = np.zeros_like(values)
    positive = values > 0
    out[positive] = values[positive] ** t
    return out


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return len(self.eigenvalues)

    def apply(self, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        U = self.eigenvectors
        return hermitian_part((U * fn(self.eigenvalues)) @ U.conj().T)

    def reconstruct(self) -> np.ndarray:
        return self.apply(lambda values: values)

    def conj(self) -> "SpectralDecomposition":
        # spectrum of the entrywise conjugate, eigenvectors conjugated
        return SpectralDecomposition(self.eigenvalues, self.eigenvectors.conj())

    def clipped(self) -> "SpectralDecomposition":
        return self._replace(eigenvalues=clip_spectrum(self.eigenvalues))

    def require_positive_definite(self) -> "SpectralDecomposition":
        tol = pd_tolerance(self.eigenvalues)
        if self.eigenvalues[0] <= tol:
            raise NotPositiveDefiniteError(
                f"matrix is not positive definite: min eigenvalue "
                f"{self.eigenvalues[0]:.3e} <= {tol:.3e}",
                magnitude=float(tol - self.eigenvalues[0]),
            )
        return self

    def power(self, t: float) -> np.ndarray:
        """``A**t`` of a decomposition already passed through ``clipped``."""
        if t < 0:
            self.require_positive_definite()
        return self.apply(lambda values: _spectral_power(values, t))


def spectral_decompose(A) -> SpectralDecomposition:
    M = check_hermitian(A)
    eigenvalues, eigenvectors = scipy.linalg.eigh(hermitian_part(M))
    return SpectralDecomposition(eigenvalues, eigenvectors)


def psd_decompose(A) -> SpectralDecomposition:
    return spectral_decompose(A).clipped()


def pd_decompose(A) -> SpectralDecomposition:
    return spectral_decompose(A).clipped().require_positive_definite()


def matrix_power(A, t: float) -> np.ndarray:
    return psd_decompose(A).power(t)


def trace_power(A, t: float) -> float:
    """``Tr A**t`` computed from the clipped spectrum alone."""
    M = check_hermitian(A)
    values = scipy.linalg.eigvalsh(hermitian_part(M))
    clipped = clip_spectrum(values)
    if t < 0 and clipped[0] <= pd_tolerance(clipped):
        raise NotPositiveDefiniteError(
            f"negative power {t} of a singular matrix", magnitude=float(-clipped[0])
        )
    return float(np.sum(_spectral_power(clipped, t)))


def deformed_log(X, lam: float) -> np.ndarray:
    """``ln_lam X = (X**lam - I) / lam`` for positive definite ``X``."""
    if not 0 < lam <= 1:
        raise DomainError(f"deformed logarithm needs lambda in (0, 1], got {lam}")
    return pd_decompose(X).apply(lambda values: np.expm1(lam * np.log(values)) / lam)


def geodesic(A, B, t: float) -> np.ndarray:
    """
    ``A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}`` for any real ``t``.

    Both arguments must be positive definite.
    """
    decomposition = pd_decompose(A)
    pd_decompose(B)
    half = decomposition.power(0.5)
    inverse_half = decomposition.power(-0.5)
    inner = hermitian_part(inverse_half @ np.asarray(B, dtype=complex) @ inverse_half)
    middle = psd_decompose(inner).power(t)
    return hermitian_part(half @ middle @ half)


def weighted_geometric_mean(A, B, lam: float) -> np.ndarray:
    if not 0 < lam < 1:
        raise DomainError(f"weighted geometric mean needs lambda in (0, 1), got {lam}")
    return geodesic(A, B, lam)


def entrywise_conjugate(A) -> np.ndarray:
    return np.conj(np.asarray(A))


def loewner_slack(A, B) -> float:
    """Smallest eigenvalue of ``B - A``; non-negative iff ``A <= B``."""
    A = as_square_matrix(A)
    B = as_square_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatchError(f"cannot compare shapes {A.shape} and {B.shape}")
    return float(scipy.linalg.eigvalsh(hermitian_part(B - A))[0])


def loewner_leq(A, B, tol: float = 0.0) -> bool:
    return loewner_slack(A, B) >= -tol
