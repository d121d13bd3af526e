"""
The four imaginarity measures, each comparing a state with its entrywise
complex conjugate.
"""

import math

import numpy as np

from imaginarity.conf import settings
from imaginarity.matrixfn import geodesic, psd_decompose
from imaginarity.measures.base import AZParams, ImaginarityMeasure, check_open_unit
from imaginarity.measures.divergences import (
    sandwiched_trace,
    tsallis_trace,
    von_neumann_entropy,
)


class UmegakiMeasure(ImaginarityMeasure):
    """``M^V(rho) = S((rho + rho*) / 2) - S(rho)``."""

    measure_id = "umegaki"

    def _value(self, rho):
        average = (rho.matrix + rho.matrix.conj()) / 2
        return von_neumann_entropy(average) - von_neumann_entropy(rho.matrix)


class TsallisMeasure(ImaginarityMeasure):
    """``M^T_q(rho) = 1 - Tr rho^q (rho*)^{1-q}``."""

    measure_id = "tsallis"

    def __init__(self, q=0.5):
        self.q = check_open_unit("q", q)

    @property
    def parameters(self):
        return {"q": self.q}

    @classmethod
    def grid(cls, q_grid=None, **grids):
        if q_grid is None:
            q_grid = settings.IMAGINARITY_Q_GRID
        return [cls(q) for q in q_grid]

    def _value(self, rho):
        decomposition = psd_decompose(rho.matrix)
        return 1 - tsallis_trace(decomposition, decomposition.conj(), self.q)


class RenyiMeasure(ImaginarityMeasure):
    """``M^R_{a,z}(rho) = 1 - f_{a,z}(rho, rho*)``."""

    measure_id = "renyi-az"

    def __init__(self, alpha=0.5, z=None):
        self.params = AZParams(alpha, alpha if z is None else z)

    @property
    def alpha(self):
        return self.params.alpha

    @property
    def z(self):
        return self.params.z

    @property
    def parameters(self):
        return {"alpha": self.alpha, "z": self.z}

    @classmethod
    def grid(cls, alpha_grid=None, z_ceiling=None, **grids):
        return [cls(p.alpha, p.z) for p in AZParams.grid(alpha_grid, z_ceiling)]

    def overlap(self, rho) -> float:
        decomposition = psd_decompose(rho.matrix)
        return sandwiched_trace(decomposition, decomposition.conj(), self.params)

    def _value(self, rho):
        return 1 - self.overlap(rho)

    def from_divergence(self, divergence) -> float:
        """``1 - exp((a - 1) D_{a,z}(rho || rho*))``."""
        if math.isinf(divergence):
            return 1.0
        return 1 - math.exp((self.alpha - 1) * divergence)


class OperatorMeasure(ImaginarityMeasure):
    """``M^O_lam(delta) = 1 - Tr(delta #_lam delta*)`` on positive definite states."""

    measure_id = "operator"
    requires_positive_definite = True

    def __init__(self, lam=0.5):
        self.lam = check_open_unit("lambda", lam)

    @property
    def parameters(self):
        return {"lambda": self.lam}

    @classmethod
    def grid(cls, lambda_grid=None, **grids):
        if lambda_grid is None:
            lambda_grid = settings.IMAGINARITY_LAMBDA_GRID
        return [cls(lam) for lam in lambda_grid]

    def _value(self, delta):
        mean = geodesic(delta.matrix, delta.matrix.conj(), self.lam)
        return 1 - float(np.trace(mean).real)


def imaginarity_umegaki(rho) -> float:
    return UmegakiMeasure()(rho)


def imaginarity_tsallis(rho, q) -> float:
    return TsallisMeasure(q)(rho)


def imaginarity_renyi(rho, p: AZParams) -> float:
    return RenyiMeasure(p.alpha, p.z)(rho)


def imaginarity_operator(delta, lam) -> float:
    return OperatorMeasure(lam)(delta)
