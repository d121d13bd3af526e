"""
Catalog of the parameter relations, trace inequalities and operator bounds
the measures obey, each bound to a seeded randomized check.
"""

import itertools
import math

import numpy as np

from imaginarity.channels import apply_channel, random_cptp
from imaginarity.conf import settings
from imaginarity.helpers import NotPositiveDefiniteError, UnknownCheckError
from imaginarity.matrixfn import geodesic, loewner_slack, matrix_power, trace_power
from imaginarity.measures.base import AZParams
from imaginarity.measures.divergences import (
    f_alpha_z,
    renyi_az_divergence,
    tsallis_relative_operator_entropy,
    tsallis_relative_operator_entropy_by_mean,
    umegaki_relative_entropy,
)
from imaginarity.measures.engines import (
    OperatorMeasure,
    RenyiMeasure,
    TsallisMeasure,
    UmegakiMeasure,
)
from imaginarity.properties.base import Check, RegenerateTrial, equality_margin
from imaginarity.states import (
    DensityMatrix,
    is_real_state,
    maximally_mixed,
    mixture,
    plus_i_state,
    random_commuting_density,
    random_real_orthogonal,
    random_unitary,
    tensor_product,
)

CATALOG = {}

GROUPS = {
    "lemma-1": ("lemma-1-1", "lemma-1-2"),
    "theorem-2": ("theorem-2-1", "theorem-2-2", "theorem-2-2-factorization"),
    "theorem-3": ("theorem-3-1", "theorem-3-2", "theorem-3-3"),
    "theorem-4": ("theorem-4-1", "theorem-4-2"),
    "lemmas": ("lemma-1", "lemma-2", "lemma-3"),
    "theorems": (
        "theorem-2",
        "theorem-3",
        "theorem-4",
        "theorem-5",
        "theorem-5-equality",
        "theorem-5-tensor",
        "theorem-6",
        "theorem-8",
        "theorem-8-equality",
    ),
    "identities": (
        "divergence-dpi",
        "divergence-identity",
        "umegaki-relative-form",
        "operator-entropy-forms",
        "extremal",
    ),
}


def register(cls):
    CATALOG[cls.check_id] = cls()
    return cls


def az_points(config):
    return AZParams.grid(config.alpha_grid, config.z_ceiling)


def lowest_z(alpha):
    return max(alpha, 1 - alpha)


def _commuting_pd(trial, dim=None):
    # mixing with I/d keeps [rho, rho*] = 0 and moves the spectrum off zero
    rho = random_commuting_density(dim or trial.dim, seed=trial.sub_seed())
    return mixture((0.999, 0.001), (rho, maximally_mixed(rho.dim)))


def _companion_dim(trial):
    return int(trial.rng.integers(1, min(trial.dim, 3) + 1))


@register
class TraceYoung(Check):
    """``Tr(A^{(1-t)/2t} B A^{(1-t)/2t})^t <= Tr((1 - t) A + t B)``."""

    check_id = "lemma-1-1"
    exact = True
    trials_scale = 2.5

    def points(self, config):
        return list(config.q_grid)

    def margin(self, trial):
        t = trial.point
        A = trial.state(rank=trial.random_rank()).matrix * trial.rng.uniform(0.5, 2)
        B = trial.state(rank=trial.random_rank()).matrix * trial.rng.uniform(0.5, 2)
        outer = matrix_power(A, (1 - t) / (2 * t))
        lhs = trace_power(outer @ B @ outer, t)
        rhs = float(np.trace((1 - t) * A + t * B).real)
        return rhs - lhs


@register
class ArakiLiebThirring(Check):
    """``Tr(A^r B^r A^r)^q >= Tr(A B A)^{rq}`` for ``r >= 1``, ``q >= 0``."""

    check_id = "lemma-1-2"
    exact = True
    trials_scale = 2.5

    def points(self, config):
        return list(itertools.product((1.0, 1.5, 2.0, 3.0), (0.25, 0.5, 1.0, 2.0)))

    def margin(self, trial):
        r, q = trial.point
        A = trial.state(rank=trial.random_rank()).matrix
        B = trial.state(rank=trial.random_rank()).matrix
        Ar = matrix_power(A, r)
        lhs = trace_power(Ar @ matrix_power(B, r) @ Ar, q)
        rhs = trace_power(A @ B @ A, r * q)
        return lhs - rhs


@register
class ConjugationInvariance(Check):
    """
    ``f(U rho U^H, U rho* U^H) = f(rho, rho*)`` for any unitary ``U``, and
    ``M^R(O rho O^T) = M^R(rho)`` for real orthogonal ``O``.
    """

    check_id = "theorem-2-1"
    exact = True

    def points(self, config):
        return RenyiMeasure.grid(**config.grids)

    def margin(self, trial):
        measure = trial.point
        rho = trial.state(rank=trial.random_rank())
        U = random_unitary(trial.dim, seed=trial.sub_seed())
        O = random_real_orthogonal(trial.dim, seed=trial.sub_seed())
        M = rho.matrix
        rotated = f_alpha_z(
            U @ M @ U.conj().T, U @ M.conj() @ U.conj().T, measure.params
        )
        real_rotated = DensityMatrix(O @ M @ O.T)
        return equality_margin(
            rotated - measure.overlap(rho), measure(real_rotated) - measure(rho)
        )


@register
class TensorSupermultiplicativity(Check):
    """``M^R(rho (x) tau) >= M^R(rho) M^R(tau)``."""

    check_id = "theorem-2-2"

    def points(self, config):
        return RenyiMeasure.grid(**config.grids)

    def margin(self, trial):
        measure = trial.point
        rho = trial.state(rank=trial.random_rank())
        tau = trial.state(dim=_companion_dim(trial))
        return measure(tensor_product(rho, tau)) - measure(rho) * measure(tau)


@register
class TensorFactorization(Check):
    """``f(rho (x) tau, rho* (x) tau*) = f(rho, rho*) f(tau, tau*)``."""

    check_id = "theorem-2-2-factorization"
    exact = True

    def points(self, config):
        return RenyiMeasure.grid(**config.grids)

    def margin(self, trial):
        measure = trial.point
        rho = trial.state(rank=trial.random_rank())
        tau = trial.state(dim=_companion_dim(trial))
        joint = measure.overlap(tensor_product(rho, tau))
        return equality_margin(joint - measure.overlap(rho) * measure.overlap(tau))


@register
class RenyiSymmetry(Check):
    """``M^R_{a,z} = M^R_{1-a,z}``."""

    check_id = "theorem-3-1"
    exact = True

    def points(self, config):
        return az_points(config)

    def margin(self, trial):
        p = trial.point
        rho = trial.state(rank=trial.random_rank())
        mirrored = RenyiMeasure(1 - p.alpha, p.z)(rho)
        return equality_margin(RenyiMeasure(p.alpha, p.z)(rho) - mirrored)


@register
class RenyiAlphaMonotonicity(Check):
    """
    ``M^R_{a2} <= M^R_{a1}`` for ``1/2 <= a1 <= a2`` with ``z = a``, on states
    commuting with their conjugate.
    """

    check_id = "theorem-3-2"

    def points(self, config):
        alphas = sorted({0.5, *(a for a in config.alpha_grid if 0.5 <= a < 1)})
        return list(itertools.combinations(alphas, 2))

    def margin(self, trial):
        a1, a2 = trial.point
        rho = random_commuting_density(trial.dim, seed=trial.sub_seed())
        return RenyiMeasure(a1, a1)(rho) - RenyiMeasure(a2, a2)(rho)


@register
class RenyiZMonotonicity(Check):
    """``M^R_{a,z1} <= M^R_{a,z2}`` for ``z1 <= z2``."""

    check_id = "theorem-3-3"

    def points(self, config):
        by_alpha = {}
        for p in az_points(config):
            by_alpha.setdefault(p.alpha, []).append(p.z)
        return [
            (alpha, z1, z2)
            for alpha, zs in by_alpha.items()
            for z1, z2 in itertools.combinations(sorted(zs), 2)
        ]

    def margin(self, trial):
        alpha, z1, z2 = trial.point
        rho = trial.state(rank=trial.random_rank())
        return RenyiMeasure(alpha, z2)(rho) - RenyiMeasure(alpha, z1)(rho)


@register
class TsallisSymmetry(Check):
    """``M^T_q = M^T_{1-q}``."""

    check_id = "theorem-4-1"
    exact = True

    def points(self, config):
        return list(config.q_grid)

    def margin(self, trial):
        q = trial.point
        rho = trial.state(rank=trial.random_rank())
        return equality_margin(TsallisMeasure(q)(rho) - TsallisMeasure(1 - q)(rho))


@register
class TsallisMonotonicity(Check):
    """``M^T_{q1} <= M^T_{q2}`` for ``q1 <= q2 <= 1/2``."""

    check_id = "theorem-4-2"

    def points(self, config):
        qs = sorted({0.5, *(q for q in config.q_grid if 0 < q <= 0.5)})
        return list(itertools.combinations(qs, 2))

    def margin(self, trial):
        q1, q2 = trial.point
        rho = trial.state(rank=trial.random_rank())
        return TsallisMeasure(q2)(rho) - TsallisMeasure(q1)(rho)


class RenyiChain(Check):
    """
    ``M^R_{a,z_min} <= M^R_{a,z} <= M^T_a`` where ``z_min = max(a, 1 - a)``
    (``M^R_a`` itself when ``a >= 1/2``), extended by ``M^T_a <= M^O_a`` on
    positive definite states.
    """

    with_operator = False

    def points(self, config):
        return az_points(config)

    def chain(self, p, rho):
        values = [
            RenyiMeasure(p.alpha, lowest_z(p.alpha))(rho),
            RenyiMeasure(p.alpha, p.z)(rho),
            TsallisMeasure(p.alpha)(rho),
        ]
        if self.with_operator:
            values.append(OperatorMeasure(p.alpha)(rho))
        return values

    def draw(self, trial):
        if self.with_operator:
            return trial.pd_state()
        return trial.state(rank=trial.random_rank())

    def margin(self, trial):
        values = self.chain(trial.point, self.draw(trial))
        return min(upper - lower for lower, upper in zip(values, values[1:]))


@register
class RenyiTsallisChain(RenyiChain):
    check_id = "theorem-5"


@register
class OperatorChain(RenyiChain):
    check_id = "theorem-8"
    with_operator = True


class CollapsedChain(RenyiChain):
    """Every link of the chain is an equality on states commuting with ``rho*``."""

    exact = True

    def draw(self, trial):
        if self.with_operator:
            return _commuting_pd(trial)
        return random_commuting_density(trial.dim, seed=trial.sub_seed())

    def margin(self, trial):
        values = self.chain(trial.point, self.draw(trial))
        gaps = (upper - lower for lower, upper in zip(values, values[1:]))
        return equality_margin(*gaps)


@register
class RenyiTsallisEquality(CollapsedChain):
    check_id = "theorem-5-equality"


@register
class OperatorEquality(CollapsedChain):
    check_id = "theorem-8-equality"
    with_operator = True


@register
class TensorChain(Check):
    """``M^R_a <= M^T_a`` on ``rho (x) tau`` and on ``rho (x) rho``."""

    check_id = "theorem-5-tensor"

    def points(self, config):
        return sorted({p.alpha for p in az_points(config)})

    def margin(self, trial):
        alpha = trial.point
        renyi = RenyiMeasure(alpha, lowest_z(alpha))
        tsallis = TsallisMeasure(alpha)
        rho = trial.state(rank=trial.random_rank())
        tau = trial.state(dim=_companion_dim(trial))
        slacks = []
        for joint in (tensor_product(rho, tau), tensor_product(rho, rho)):
            slacks.append(tsallis(joint) - renyi(joint))
        return min(slacks)


@register
class ConditionalTensorOrder(Check):
    """
    ``M^R_{a,z} <= M^T_q`` on ``rho`` and on ``tau`` implies it on
    ``rho (x) tau``. Trials where the hypothesis fails are vacuous.
    """

    check_id = "theorem-6"

    def points(self, config):
        return list(itertools.product(az_points(config), config.q_grid))

    def margin(self, trial):
        p, q = trial.point
        renyi = RenyiMeasure(p.alpha, p.z)
        tsallis = TsallisMeasure(q)
        rho = trial.state(rank=trial.random_rank())
        tau = trial.state(dim=_companion_dim(trial))
        if renyi(rho) > tsallis(rho) or renyi(tau) > tsallis(tau):
            return None
        joint = tensor_product(rho, tau)
        return tsallis(joint) - renyi(joint)


@register
class OperatorEntropyBounds(Check):
    """
    ``dl - ed/a + ln_l(1/a) d <= T_l(d || e) <= e/a - d - ln_l(1/a) m`` with
    ``m = d #_l e`` and ``ed = d #_{l-1} e``.
    """

    check_id = "lemma-2"

    def points(self, config):
        lambdas = sorted({*config.lambda_grid, 1.0})
        return list(itertools.product(lambdas, settings.IMAGINARITY_LEMMA_2_SCALES))

    def margin(self, trial):
        lam, a = trial.point
        delta = trial.pd_state().matrix
        eta = trial.pd_state().matrix
        entropy = tsallis_relative_operator_entropy(delta, eta, lam)
        mean = geodesic(delta, eta, lam)
        shifted = geodesic(delta, eta, lam - 1)
        log_scale = math.expm1(lam * math.log(1 / a)) / lam
        lower = mean - shifted / a + log_scale * delta
        upper = eta / a - delta - log_scale * mean
        return min(loewner_slack(lower, entropy), loewner_slack(entropy, upper))


@register
class PositiveMapMean(Check):
    """``Phi(A #_l B) <= Phi(A) #_l Phi(B)`` for a CPTP map ``Phi``."""

    check_id = "lemma-3"

    def points(self, config):
        return list(config.lambda_grid)

    def margin(self, trial):
        lam = trial.point
        n_kraus = int(trial.rng.integers(2, 4))
        channel = random_cptp(trial.dim, n_kraus=n_kraus, seed=trial.sub_seed())
        A = trial.pd_state().matrix
        B = trial.pd_state().matrix
        try:
            rhs = geodesic(channel.apply(A), channel.apply(B), lam)
        except NotPositiveDefiniteError as e:
            raise RegenerateTrial(str(e))
        return loewner_slack(channel.apply(geodesic(A, B, lam)), rhs)


@register
class DataProcessing(Check):
    """``f_{a,z}(L(rho), L(sigma)) >= f_{a,z}(rho, sigma)`` for channels ``L``."""

    check_id = "divergence-dpi"

    def points(self, config):
        return az_points(config)

    def margin(self, trial):
        p = trial.point
        rho = trial.state(rank=trial.random_rank())
        sigma = trial.state(rank=trial.random_rank())
        n_kraus = int(trial.rng.integers(1, 4))
        channel = random_cptp(trial.dim, n_kraus=n_kraus, seed=trial.sub_seed())
        processed = f_alpha_z(
            apply_channel(channel, rho).matrix,
            apply_channel(channel, sigma).matrix,
            p,
        )
        return processed - f_alpha_z(rho.matrix, sigma.matrix, p)


@register
class DivergenceIdentity(Check):
    """``M^R_{a,z}(rho) = 1 - exp((a - 1) D_{a,z}(rho || rho*))``."""

    check_id = "divergence-identity"
    exact = True

    def points(self, config):
        return RenyiMeasure.grid(**config.grids)

    def margin(self, trial):
        measure = trial.point
        rho = trial.state(rank=trial.random_rank())
        divergence = renyi_az_divergence(rho.matrix, rho.conj().matrix, measure.params)
        return equality_margin(measure(rho) - measure.from_divergence(divergence))


@register
class UmegakiRelativeForm(Check):
    """
    ``S((rho + rho*)/2) - S(rho) = S(rho || (rho + rho*)/2)``.

    The right side is the relative entropy to the nearest real state.
    """

    check_id = "umegaki-relative-form"
    exact = True

    def margin(self, trial):
        rho = trial.pd_state()
        real_part = (rho.matrix + rho.conj().matrix) / 2
        relative = umegaki_relative_entropy(rho.matrix, real_part)
        return equality_margin(UmegakiMeasure()(rho) - relative)


@register
class OperatorEntropyForms(Check):
    """Both forms of ``T_l(d || e)`` agree and ``T_l(d || d) = 0``."""

    check_id = "operator-entropy-forms"
    exact = True

    def points(self, config):
        return sorted({*config.lambda_grid, 1.0})

    def margin(self, trial):
        lam = trial.point
        delta = trial.pd_state().matrix
        eta = trial.pd_state().matrix
        by_log = tsallis_relative_operator_entropy(delta, eta, lam)
        by_mean = tsallis_relative_operator_entropy_by_mean(delta, eta, lam)
        self_entropy = tsallis_relative_operator_entropy(delta, delta, lam)
        return equality_margin(
            np.max(np.abs(by_log - by_mean)), np.max(np.abs(self_entropy))
        )


@register
class Extremal(Check):
    """
    The measures vanish on real states; on ``|+i><+i|`` the Renyi and Tsallis
    measures reach 1 and the Umegaki measure ``ln 2``.
    """

    check_id = "extremal"
    exact = True

    def points(self, config):
        return [
            UmegakiMeasure(),
            *TsallisMeasure.grid(**config.grids),
            *RenyiMeasure.grid(**config.grids),
        ]

    def margin(self, trial):
        measure = trial.point
        rho = trial.real_state()
        if not is_real_state(rho):
            raise RegenerateTrial("generated real state has imaginary entries")
        top = np.log(2) if isinstance(measure, UmegakiMeasure) else 1.0
        return equality_margin(measure(rho), measure(plus_i_state()) - top)


def check_ids():
    return sorted(CATALOG)


def get_check(check_id) -> Check:
    try:
        return CATALOG[check_id]
    except KeyError:
        raise UnknownCheckError(
            f"unknown check {check_id!r}; known checks: {', '.join(check_ids())}"
        )


def run_theorem_suite(theorem_id, config):
    """Run one catalog check and return its ``PropertyReport``."""
    return get_check(theorem_id).run(config)
