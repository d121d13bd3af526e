"""
The five conditions every imaginarity measure satisfies, checked on random
states and random real operations. The operator measure is only defined on
positive definite states, so its suites draw positive definite instances.
"""

import logging

import numpy as np

from imaginarity.channels import (
    apply_channel,
    random_real_operation,
    selective_measurement,
)
from imaginarity.conf import settings
from imaginarity.helpers import NotPositiveDefiniteError
from imaginarity.properties.base import Check, RegenerateTrial, equality_margin
from imaginarity.states import direct_sum_mix, is_real_state, mixture

logger = logging.getLogger(__name__)

MEASURE_IDS = ("umegaki", "tsallis", "renyi-az", "operator")


class AxiomCheck(Check):
    condition = None

    def __init__(self, measure_id):
        self.measure_id = measure_id
        self.check_id = f"axioms:{measure_id}:{self.condition}"
        self.positive_definite = measure_id == "operator"

    def points(self, config):
        return config.measures(self.measure_id)

    def draw(self, trial, dim=None, real=False):
        if self.positive_definite:
            return trial.pd_state(dim, real=real)
        if real:
            return trial.real_state(dim)
        return trial.state(dim, rank=trial.random_rank(dim))

    def value(self, measure, rho):
        try:
            return measure(rho)
        except NotPositiveDefiniteError as e:
            raise RegenerateTrial(
                f"intermediate state left the positive definite domain: {e}"
            )


class Faithfulness(AxiomCheck):
    """``M >= 0``, vanishing exactly on real states."""

    condition = "faithfulness"

    def margin(self, trial):
        measure = trial.point
        rho = self.draw(trial, real=bool(trial.index % 2))
        value = self.value(measure, rho)
        if is_real_state(rho):
            return equality_margin(value)
        if value <= settings.IMAGINARITY_FAITHFULNESS_TOL:
            message = (
                f"{measure!r} vanishes on a state with imaginary entries of size "
                f"{rho.imaginary_magnitude():.3e}"
            )
            logger.warning("%s: %s", self.check_id, message)
            trial.note_discrepancy(message)
        return value


class Monotonicity(AxiomCheck):
    """``M(L(rho)) <= M(rho)`` for real operations ``L``."""

    condition = "monotonicity"

    def margin(self, trial):
        measure = trial.point
        rho = self.draw(trial)
        channel = random_real_operation(
            trial.dim, n_kraus=int(trial.rng.integers(1, 4)), seed=trial.sub_seed()
        )
        try:
            output = apply_channel(channel, rho)
        except NotPositiveDefiniteError as e:
            raise RegenerateTrial(str(e))
        return self.value(measure, rho) - self.value(measure, output)


class StrongMonotonicity(AxiomCheck):
    """``sum_j p_j M(rho_j) <= M(rho)`` over the outcomes of a real measurement."""

    condition = "strong-monotonicity"

    def margin(self, trial):
        measure = trial.point
        rho = self.draw(trial)
        channel = random_real_operation(
            trial.dim, n_kraus=int(trial.rng.integers(2, 4)), seed=trial.sub_seed()
        )
        outcomes = selective_measurement(channel, rho)
        if outcomes.dropped_mass > settings.IMAGINARITY_DROPPED_MASS_LIMIT:
            raise RegenerateTrial(f"dropped outcome mass {outcomes.dropped_mass:.3e}")
        average = sum(
            p * self.value(measure, outcome) for p, outcome in outcomes.renormalized()
        )
        return self.value(measure, rho) - average


class Convexity(AxiomCheck):
    """``M(sum_j p_j rho_j) <= sum_j p_j M(rho_j)``."""

    condition = "convexity"

    def margin(self, trial):
        measure = trial.point
        size = int(trial.rng.integers(2, 4))
        weights = trial.rng.dirichlet(np.ones(size))
        weights = weights / weights.sum()
        states = [self.draw(trial) for _ in range(size)]
        average = sum(w * self.value(measure, rho) for w, rho in zip(weights, states))
        return average - self.value(measure, mixture(weights, states))


class DirectSum(AxiomCheck):
    """``M(p rho_1 + (1 - p) rho_2) = p M(rho_1) + (1 - p) M(rho_2)`` for block sums."""

    condition = "direct-sum"

    def margin(self, trial):
        measure = trial.point
        p = float(trial.rng.uniform(0.05, 0.95))
        rho1 = self.draw(trial)
        rho2 = self.draw(trial, dim=trial.random_rank())
        combined = direct_sum_mix(p, rho1, 1 - p, rho2)
        expected = p * self.value(measure, rho1) + (1 - p) * self.value(measure, rho2)
        return equality_margin(self.value(measure, combined) - expected)


CONDITIONS = (Faithfulness, Monotonicity, StrongMonotonicity, Convexity, DirectSum)


def axiom_checks(measure_id):
    return [condition(measure_id) for condition in CONDITIONS]


def run_axiom_suite(measure_id, config):
    """One report per condition, deterministic in ``config.seed``."""
    return [check.run(config) for check in axiom_checks(measure_id)]
