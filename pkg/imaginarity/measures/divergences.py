"""
Divergences behind the imaginarity measures. Logarithms are natural.
"""

import logging
import math

import numpy as np
import scipy.linalg
import scipy.special

from imaginarity.helpers import DimensionMismatchError, DomainError
from imaginarity.matrixfn import (
    clip_spectrum,
    deformed_log,
    geodesic,
    hermitian_part,
    pd_decompose,
    psd_decompose,
    trace_power,
)
from imaginarity.measures.base import AZParams, check_open_unit

logger = logging.getLogger(__name__)


def _matrix(rho):
    return np.asarray(rho, dtype=complex)


def _same_shape(rho, sigma):
    if rho.shape != sigma.shape:
        raise DimensionMismatchError(f"states of shapes {rho.shape} and {sigma.shape}")


def trace_product(A, B) -> float:
    """``Re Tr(A B)`` without forming the product."""
    return float(np.sum(A * B.T).real)


def sandwiched_trace(rho_decomposition, sigma_decomposition, p: AZParams) -> float:
    outer = sigma_decomposition.power((1 - p.alpha) / (2 * p.z))
    inner = rho_decomposition.power(p.alpha / p.z)
    return trace_power(hermitian_part(outer @ inner @ outer), p.z)


def f_alpha_z(rho, sigma, p: AZParams) -> float:
    """``Tr(sigma^{(1-a)/2z} rho^{a/z} sigma^{(1-a)/2z})^z``."""
    rho, sigma = _matrix(rho), _matrix(sigma)
    _same_shape(rho, sigma)
    return sandwiched_trace(psd_decompose(rho), psd_decompose(sigma), p)


def renyi_az_divergence(rho, sigma, p: AZParams) -> float:
    """``log f_{a,z}(rho, sigma) / (a - 1)``; ``math.inf`` when ``f`` vanishes."""
    f = f_alpha_z(rho, sigma, p)
    if f <= 0:
        logger.info("f vanishes at %s; divergence is infinite", p)
        return math.inf
    return math.log(f) / (p.alpha - 1)


def tsallis_trace(rho_decomposition, sigma_decomposition, q: float) -> float:
    return trace_product(rho_decomposition.power(q), sigma_decomposition.power(1 - q))


def tsallis_relative_entropy(rho, sigma, q: float) -> float:
    """``K_q(rho || sigma) = (1 - Tr rho^q sigma^{1-q}) / (1 - q)``."""
    q = check_open_unit("q", q)
    rho, sigma = _matrix(rho), _matrix(sigma)
    _same_shape(rho, sigma)
    return (1 - tsallis_trace(psd_decompose(rho), psd_decompose(sigma), q)) / (1 - q)


def von_neumann_entropy(rho) -> float:
    values = clip_spectrum(scipy.linalg.eigvalsh(hermitian_part(_matrix(rho))))
    return float(np.sum(scipy.special.entr(values)))


def umegaki_relative_entropy(rho, sigma) -> float:
    """
    ``Tr rho (ln rho - ln sigma)``, infinite when the support of ``rho`` is
    not contained in the support of ``sigma``.
    """
    rho, sigma = _matrix(rho), _matrix(sigma)
    _same_shape(rho, sigma)
    decomposition = psd_decompose(sigma)
    kernel = decomposition.apply(lambda values: (values == 0).astype(float))
    leaked = trace_product(rho, kernel)
    if leaked > 1e-12:
        logger.info(
            "support mismatch (leaked weight %.3e); relative entropy is infinite",
            leaked,
        )
        return math.inf
    log_sigma = decomposition.apply(
        lambda values: np.log(values, out=np.zeros_like(values), where=values > 0)
    )
    return -von_neumann_entropy(rho) - trace_product(rho, log_sigma)


def tsallis_relative_operator_entropy(delta, eta, lam: float) -> np.ndarray:
    """
    ``T_lam(delta || eta) = d^{1/2} ln_lam(d^{-1/2} eta d^{-1/2}) d^{1/2}``, with
    ``d = delta``, for positive definite ``delta`` and ``eta``, ``lam`` in ``(0, 1]``.
    """
    delta, eta = _matrix(delta), _matrix(eta)
    _same_shape(delta, eta)
    decomposition = pd_decompose(delta)
    pd_decompose(eta)
    half = decomposition.power(0.5)
    inverse_half = decomposition.power(-0.5)
    inner = hermitian_part(inverse_half @ eta @ inverse_half)
    return hermitian_part(half @ deformed_log(inner, lam) @ half)


def tsallis_relative_operator_entropy_by_mean(delta, eta, lam: float) -> np.ndarray:
    """The same operator written as ``(delta #_lam eta - delta) / lam``."""
    if not 0 < lam <= 1:
        raise DomainError(f"lambda must lie in (0, 1], got {lam}")
    delta, eta = _matrix(delta), _matrix(eta)
    _same_shape(delta, eta)
    return (geodesic(delta, eta, lam) - delta) / lam
