import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from imaginarity.conf import settings
from imaginarity.helpers import (
    CompletenessError,
    DimensionMismatchError,
    DomainError,
    NonFiniteError,
)
from imaginarity.matrixfn import hermitian_part
from imaginarity.states import DensityMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KrausSet:
    """
    Kraus representation ``L(X) = sum_j K_j X K_j^H`` of a quantum operation.

    ``operators`` are ``dim_out x dim_in`` matrices satisfying
    ``sum_j K_j^H K_j = I`` within ``completeness_tol``.
    """

    operators: tuple
    completeness_tol: float = None

    def __post_init__(self):
        operators = tuple(np.array(K, dtype=complex) for K in self.operators)
        if not operators:
            raise DimensionMismatchError("a Kraus set needs at least one operator")
        shape = operators[0].shape
        if len(shape) != 2 or any(K.shape != shape for K in operators):
            raise DimensionMismatchError("Kraus operators must share one 2-d shape")
        if not all(np.isfinite(K).all() for K in operators):
            raise NonFiniteError("Kraus operators have NaN or infinite entries")
        for K in operators:
            K.setflags(write=False)
        object.__setattr__(self, "operators", operators)

        tol = self.completeness_tol
        if tol is None:
            tol = settings.IMAGINARITY_COMPLETENESS_TOL
        residual = self.completeness_residual()
        if residual > tol:
            raise CompletenessError(
                f"Kraus operators are not complete: "
                f"max |sum K^H K - I| = {residual:.3e} exceeds {tol:.3e}",
                magnitude=residual,
            )

    @property
    def dim_in(self) -> int:
        return self.operators[0].shape[1]

    @property
    def dim_out(self) -> int:
        return self.operators[0].shape[0]

    def __len__(self):
        return len(self.operators)

    def completeness_residual(self) -> float:
        total = sum(K.conj().T @ K for K in self.operators)
        return float(np.max(np.abs(total - np.eye(self.dim_in))))

    def apply(self, X) -> np.ndarray:
        """Action on an arbitrary ``dim_in x dim_in`` matrix."""
        X = np.asarray(X, dtype=complex)
        if X.shape != (self.dim_in, self.dim_in):
            raise DimensionMismatchError(
                f"channel acts on {self.dim_in}x{self.dim_in} matrices, got {X.shape}"
            )
        return sum(K @ X @ K.conj().T for K in self.operators)


def is_real_operation(channel: KrausSet, tol=None) -> bool:
    if tol is None:
        tol = settings.IMAGINARITY_FAITHFULNESS_TOL
    return all(float(np.max(np.abs(K.imag))) <= tol for K in channel.operators)


def apply_channel(channel: KrausSet, rho: DensityMatrix) -> DensityMatrix:
    output = hermitian_part(channel.apply(rho.matrix))
    return DensityMatrix(output, trace_tol=settings.IMAGINARITY_COMPLETENESS_TOL)


@dataclass(frozen=True)
class MeasurementOutcomes:
    outcomes: Tuple[Tuple[float, DensityMatrix], ...]
    dropped_mass: float

    def __iter__(self):
        return iter(self.outcomes)

    def __len__(self):
        return len(self.outcomes)

    @property
    def probabilities(self) -> List[float]:
        return [p for p, _ in self.outcomes]

    def renormalized(self) -> List[Tuple[float, DensityMatrix]]:
        total = sum(self.probabilities)
        return [(p / total, rho) for p, rho in self.outcomes]


def selective_measurement(channel: KrausSet, rho: DensityMatrix) -> MeasurementOutcomes:
    """
    Outcomes ``(p_j, K_j rho K_j^H / p_j)``; outcomes with ``p_j`` at or below
    ``IMAGINARITY_P_FLOOR`` are dropped and their mass reported.
    """
    if rho.dim != channel.dim_in:
        raise DimensionMismatchError(
            f"channel acts on dimension {channel.dim_in}, state has {rho.dim}"
        )
    floor = settings.IMAGINARITY_P_FLOOR
    outcomes = []
    dropped = 0.0
    for index, K in enumerate(channel.operators):
        branch = hermitian_part(K @ rho.matrix @ K.conj().T)
        p = float(np.trace(branch).real)
        if p <= floor:
            logger.debug("dropping outcome %d with probability %.3e", index, p)
            dropped += max(p, 0.0)
            continue
        outcome = DensityMatrix(
            branch / p, trace_tol=settings.IMAGINARITY_COMPLETENESS_TOL
        )
        outcomes.append((p, outcome))
    return MeasurementOutcomes(tuple(outcomes), dropped)


def _isometry_blocks(rng, dim, n_kraus, complex_entries):
    shape = (n_kraus * dim, dim)
    if complex_entries:
        G = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    else:
        G = rng.standard_normal(shape)
    V, R = np.linalg.qr(G)
    diagonal = np.diagonal(R)
    V = V * (diagonal / np.abs(diagonal))
    return [V[j * dim : (j + 1) * dim] for j in range(n_kraus)]


def _check_kraus_sizes(dim, n_kraus):
    if dim < 1:
        raise DomainError(f"dimension must be at least 1, got {dim}")
    if n_kraus < 1:
        raise DomainError(f"need at least one Kraus operator, got {n_kraus}")


def random_real_operation(dim: int, n_kraus: int = 2, seed: int = 0) -> KrausSet:
    """Real Kraus operators sliced from a Haar-like real isometry."""
    _check_kraus_sizes(dim, n_kraus)
    rng = np.random.default_rng(seed)
    return KrausSet(tuple(_isometry_blocks(rng, dim, n_kraus, False)))


def random_cptp(dim: int, n_kraus: int = 2, seed: int = 0) -> KrausSet:
    _check_kraus_sizes(dim, n_kraus)
    rng = np.random.default_rng(seed)
    return KrausSet(tuple(_isometry_blocks(rng, dim, n_kraus, True)))


def identity_channel(dim: int) -> KrausSet:
    return KrausSet((np.eye(dim),))


def dephasing(dim: int) -> KrausSet:
    """Complete dephasing in the fixed basis, Kraus operators ``|m><m|``."""
    projectors = []
    for m in range(dim):
        P = np.zeros((dim, dim))
        P[m, m] = 1
        projectors.append(P)
    return KrausSet(tuple(projectors))
