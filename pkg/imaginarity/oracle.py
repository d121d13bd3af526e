"""
High-precision reference values computed with mpmath.

Inputs are given exactly, as nested rows of ``(re, im)`` pairs of decimal
strings, integers or ``Fraction`` values, and every quantity is evaluated
with mpmath's own Hermitian eigensolver at ``IMAGINARITY_ORACLE_DPS`` digits.
Nothing here shares code with the floating point path.
"""

from fractions import Fraction

import mpmath

from imaginarity.conf import settings
from imaginarity.helpers import DomainError


def _mpf(value):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def exact_matrix(rows, scale=1):
    """``scale * rows`` as an mpmath matrix."""
    scale = _mpf(scale)
    n = len(rows)
    M = mpmath.matrix(n, n)
    for i, row in enumerate(rows):
        for j, (re, im) in enumerate(row):
            M[i, j] = scale * mpmath.mpc(_mpf(re), _mpf(im))
    return M


def _trace(M):
    return mpmath.fsum(M[i, i] for i in range(M.rows))


def _eigh(M):
    # mpmath only symmetrizes real input, so hand it an exactly Hermitian matrix
    H = (M + M.transpose_conj()) / 2
    return mpmath.eigh(H)


def _conj(M):
    C = mpmath.matrix(M.rows, M.cols)
    for i in range(M.rows):
        for j in range(M.cols):
            C[i, j] = mpmath.conj(M[i, j])
    return C


def _eigenvalues(M):
    values, _ = _eigh(M)
    return [values[k] for k in range(M.rows)]


def _spectral(M, fn):
    values, vectors = _eigh(M)
    n = M.rows
    D = mpmath.matrix(n, n)
    for k in range(n):
        D[k, k] = fn(values[k])
    return vectors * D * vectors.transpose_conj()


def _clip(value):
    return value if value > mpmath.eps * 10**6 else mpmath.mpf(0)


def power(M, t):
    t = _mpf(t)
    return _spectral(
        M, lambda x: mpmath.power(_clip(x), t) if _clip(x) else mpmath.mpf(0)
    )


def trace_power(M, t):
    t = _mpf(t)
    return mpmath.fsum(mpmath.power(_clip(x), t) for x in _eigenvalues(M) if _clip(x))


def f_alpha_z(rho, sigma, alpha, z):
    alpha, z = _mpf(alpha), _mpf(z)
    outer = power(sigma, (1 - alpha) / (2 * z))
    return trace_power(outer * power(rho, alpha / z) * outer, z)


def renyi(rho, alpha, z):
    return 1 - f_alpha_z(rho, _conj(rho), alpha, z)


def tsallis(rho, q):
    q = _mpf(q)
    return 1 - mpmath.re(_trace(power(rho, q) * power(_conj(rho), 1 - q)))


def entropy(rho):
    return -mpmath.fsum(x * mpmath.log(x) for x in _eigenvalues(rho) if _clip(x))


def umegaki(rho):
    return entropy((rho + _conj(rho)) / 2) - entropy(rho)


def geodesic(A, B, t):
    if not all(_clip(x) for x in _eigenvalues(A)):
        raise DomainError("oracle geodesic needs a positive definite first argument")
    half = power(A, mpmath.mpf(1) / 2)
    inverse_half = power(A, -mpmath.mpf(1) / 2)
    return half * power(inverse_half * B * inverse_half, t) * half


def operator(delta, lam):
    return 1 - mpmath.re(_trace(geodesic(delta, _conj(delta), _mpf(lam))))


def evaluate(measure_id, rows, scale=1, **parameters) -> float:
    """
    Reference value of ``measure_id`` at the state ``scale * rows``, rounded
    to the nearest double.
    """
    with mpmath.workdps(settings.IMAGINARITY_ORACLE_DPS):
        rho = exact_matrix(rows, scale)
        if measure_id == "umegaki":
            value = umegaki(rho)
        elif measure_id == "tsallis":
            value = tsallis(rho, parameters["q"])
        elif measure_id == "renyi-az":
            value = renyi(rho, parameters["alpha"], parameters["z"])
        elif measure_id == "operator":
            value = operator(rho, parameters["lambda"])
        else:
            raise DomainError(f"no oracle for measure {measure_id!r}")
        return float(mpmath.re(value))
