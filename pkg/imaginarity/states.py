"""
Density matrices: validation, real-state detection, random generation and
composition.

Realness is always judged in the stored coordinates; the computational basis
of the array is the fixed basis of the resource theory.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from imaginarity.conf import settings
from imaginarity.helpers import (
    DimensionMismatchError,
    DomainError,
    NotPositiveSemidefiniteError,
    TraceError,
)
from imaginarity.matrixfn import (
    as_square_matrix,
    check_hermitian,
    entrywise_conjugate,
    hermitian_part,
    hermitian_tolerance,
    pd_tolerance,
)

_STRICT_TRACE_TOL = 4 * np.finfo(float).eps


class DensityMatrix:
    """
    Complex Hermitian positive semidefinite matrix with unit trace.

    Tolerances default to the ``IMAGINARITY_*_TOL`` settings; ``strict=True``
    demands exact Hermiticity, non-negative eigenvalues and a trace within a
    few ulps of one. The stored array is the Hermitian part of the input and
    is read-only.
    """

    __slots__ = ("_matrix",)

    def __init__(
        self, matrix, hermitian_tol=None, trace_tol=None, psd_tol=None, strict=False
    ):
        M = as_square_matrix(matrix)
        if strict:
            hermitian_tol, trace_tol, psd_tol = 0.0, _STRICT_TRACE_TOL, 0.0
        if hermitian_tol is None:
            hermitian_tol = hermitian_tolerance(M)
        if trace_tol is None:
            trace_tol = settings.IMAGINARITY_TRACE_TOL
        if psd_tol is None:
            psd_tol = settings.IMAGINARITY_PSD_TOL

        check_hermitian(M, tol=hermitian_tol)
        M = hermitian_part(M)

        trace = float(np.trace(M).real)
        if abs(trace - 1) > trace_tol:
            raise TraceError(
                f"trace is {trace!r}, off by {abs(trace - 1):.3e} "
                f"(tolerance {trace_tol:.3e})",
                magnitude=abs(trace - 1),
            )

        smallest = float(scipy.linalg.eigvalsh(M)[0])
        if smallest < -psd_tol:
            raise NotPositiveSemidefiniteError(
                f"negative eigenvalue {smallest:.3e} (tolerance {psd_tol:.3e})",
                magnitude=-smallest,
            )

        self._set(M)

    def _set(self, M):
        M = np.array(M, dtype=complex)
        M.setflags(write=False)
        object.__setattr__(self, "_matrix", M)

    @classmethod
    def _trusted(cls, M):
        # only for results that are valid by construction
        rho = cls.__new__(cls)
        rho._set(M)
        return rho

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._matrix.copy()
        return self._matrix.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return np.array_equal(self._matrix, other._matrix)

    __hash__ = None

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"

    def conj(self) -> "DensityMatrix":
        return DensityMatrix._trusted(entrywise_conjugate(self._matrix))

    def eigenvalues(self) -> np.ndarray:
        return scipy.linalg.eigvalsh(self._matrix)

    def rank(self, tol=1e-10) -> int:
        return int(np.sum(self.eigenvalues() > tol))

    def is_positive_definite(self) -> bool:
        values = self.eigenvalues()
        return bool(values[0] > pd_tolerance(values))

    def imaginary_magnitude(self) -> float:
        return float(np.max(np.abs(self._matrix.imag)))


def validate_density(M, **tolerances) -> DensityMatrix:
    return DensityMatrix(M, **tolerances)


def is_real_state(rho: DensityMatrix, tol=None) -> bool:
    if tol is None:
        tol = settings.IMAGINARITY_FAITHFULNESS_TOL
    return rho.imaginary_magnitude() <= tol


@dataclass(frozen=True)
class StateEnsemble:
    weights: tuple
    states: tuple

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float)
        if len(weights) != len(self.states) or not len(weights):
            raise DimensionMismatchError("ensemble needs one weight per state")
        total_error = abs(weights.sum() - 1)
        if np.any(weights < 0) or total_error > settings.IMAGINARITY_TRACE_TOL:
            raise DomainError(
                f"ensemble weights must be a probability vector, got {list(weights)}"
            )
        if len({rho.dim for rho in self.states}) != 1:
            raise DimensionMismatchError("ensemble states must share one dimension")
        object.__setattr__(self, "weights", tuple(float(w) for w in weights))
        object.__setattr__(self, "states", tuple(self.states))

    def mixture(self) -> DensityMatrix:
        M = sum(w * rho.matrix for w, rho in zip(self.weights, self.states))
        return DensityMatrix(M)


def _check_sizes(dim, rank):
    if dim < 1:
        raise DomainError(f"dimension must be at least 1, got {dim}")
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise DomainError(f"rank must lie in [1, {dim}], got {rank}")
    return rank


def _normalized_gram(G) -> np.ndarray:
    M = hermitian_part(G @ G.conj().T)
    return M / np.trace(M).real


def random_density(dim: int, rank: int = None, seed: int = 0) -> DensityMatrix:
    """Induced-measure state ``G G^H / Tr G G^H`` for complex Ginibre ``G``."""
    rank = _check_sizes(dim, rank)
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    return DensityMatrix(_normalized_gram(G))


def random_real_density(dim: int, rank: int = None, seed: int = 0) -> DensityMatrix:
    rank = _check_sizes(dim, rank)
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((dim, rank))
    return DensityMatrix(_normalized_gram(G).real.astype(complex))


def random_pd_density(
    dim: int, seed: int = 0, floor: float = 1e-3, real=False
) -> DensityMatrix:
    """
    Full-rank random state pushed away from the boundary: the smallest
    eigenvalue is at least ``floor``.
    """
    if not 0 <= floor * dim < 1:
        raise DomainError(f"floor {floor} is too large for dimension {dim}")
    generator = random_real_density if real else random_density
    rho = generator(dim, dim, seed)
    M = (1 - floor * dim) * rho.matrix + floor * np.eye(dim)
    return DensityMatrix(M)


def _haar(rng, dim, complex_entries):
    if complex_entries:
        re, im = rng.standard_normal((2, dim, dim))
        Z = (re + 1j * im) / np.sqrt(2)
    else:
        Z = rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(Z)
    diagonal = np.diagonal(R)
    # fix the phase (sign) ambiguity of QR so the distribution is Haar
    return Q * (diagonal / np.abs(diagonal))


def random_unitary(dim: int, seed: int = 0) -> np.ndarray:
    _check_sizes(dim, None)
    return _haar(np.random.default_rng(seed), dim, True)


def random_real_orthogonal(dim: int, seed: int = 0) -> np.ndarray:
    _check_sizes(dim, None)
    return _haar(np.random.default_rng(seed), dim, False)


def random_commuting_density(dim: int, seed: int = 0) -> DensityMatrix:
    """
    Random state commuting with its own conjugate: a real rotation of a
    block-diagonal matrix made of ``w (I + a sigma_y) / 2`` blocks (plus a
    1x1 block in odd dimension).
    """
    _check_sizes(dim, None)
    rng = np.random.default_rng(seed)
    n_blocks = dim // 2 + dim % 2
    weights = rng.dirichlet(np.ones(n_blocks))
    blocks = []
    for k in range(dim // 2):
        a = rng.uniform(-1, 1)
        blocks.append(weights[k] * bloch_y_matrix(a))
    if dim % 2:
        blocks.append(np.array([[weights[-1]]], dtype=complex))
    O = _haar(rng, dim, False)
    B = scipy.linalg.block_diag(*blocks)
    return DensityMatrix(O @ B @ O.T)


def bloch_y_matrix(a: float) -> np.ndarray:
    return np.array([[1, -1j * a], [1j * a, 1]], dtype=complex) / 2


def bloch_y_state(a: float) -> DensityMatrix:
    """``(I + a sigma_y) / 2``; ``a = 1`` is the pure state ``|+i><+i|``."""
    if not -1 <= a <= 1:
        raise DomainError(f"Bloch coordinate must lie in [-1, 1], got {a}")
    return DensityMatrix(bloch_y_matrix(a))


def plus_i_state() -> DensityMatrix:
    return bloch_y_state(1.0)


def maximally_mixed(dim: int) -> DensityMatrix:
    _check_sizes(dim, None)
    return DensityMatrix(np.eye(dim) / dim)


def direct_sum_mix(
    p1: float, rho1: DensityMatrix, p2: float, rho2: DensityMatrix
) -> DensityMatrix:
    if min(p1, p2) < 0 or abs(p1 + p2 - 1) > settings.IMAGINARITY_TRACE_TOL:
        raise DomainError(
            f"direct-sum weights must be probabilities summing to 1, got {p1}, {p2}"
        )
    return DensityMatrix(scipy.linalg.block_diag(p1 * rho1.matrix, p2 * rho2.matrix))


def tensor_product(rho: DensityMatrix, tau: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(np.kron(rho.matrix, tau.matrix))


def tensor_power(rho: DensityMatrix, n: int) -> DensityMatrix:
    result = rho
    for _ in range(n - 1):
        result = tensor_product(result, rho)
    return result


def mixture(weights: Sequence[float], states: Sequence[DensityMatrix]) -> DensityMatrix:
    return StateEnsemble(tuple(weights), tuple(states)).mixture()
