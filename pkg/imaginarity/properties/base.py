"""
Seeded randomized checks.

A check runs ``trials`` independent trials. Every trial draws its instance
from a seed derived from ``(config seed, check id, trial index, attempt)``
and returns the slack ``RHS - LHS`` of the inequality it checks (equalities
report ``-|deviation|``). A trial fails when its slack is below
``-tolerance``, so a report has no failures exactly when its worst margin is
at least ``-tolerance``.
"""

import logging
import math
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Optional, Tuple

import numpy as np

from imaginarity.conf import settings
from imaginarity.helpers import DomainError, format_number
from imaginarity.measures.base import measure_grid
from imaginarity.states import (
    DensityMatrix,
    random_density,
    random_pd_density,
    random_real_density,
)

logger = logging.getLogger(__name__)


class RegenerateTrial(Exception):
    """Raised by a trial whose random instance is not well posed."""


def _settings_tuple(name):
    return lambda: tuple(getattr(settings, name))


@dataclass(frozen=True)
class PropertyConfig:
    dims: Tuple[int, ...] = field(
        default_factory=_settings_tuple("IMAGINARITY_PROPERTY_DIMS")
    )
    trials: int = field(default_factory=lambda: settings.IMAGINARITY_PROPERTY_TRIALS)
    seed: int = field(default_factory=lambda: settings.IMAGINARITY_PROPERTY_SEED)
    tolerance: float = field(
        default_factory=lambda: settings.IMAGINARITY_PROPERTY_TOLERANCE
    )
    equality_tolerance: float = field(
        default_factory=lambda: settings.IMAGINARITY_EQUALITY_TOLERANCE
    )
    alpha_grid: Tuple[float, ...] = field(
        default_factory=_settings_tuple("IMAGINARITY_ALPHA_GRID")
    )
    z_ceiling: float = field(default_factory=lambda: settings.IMAGINARITY_Z_CEILING)
    q_grid: Tuple[float, ...] = field(
        default_factory=_settings_tuple("IMAGINARITY_Q_GRID")
    )
    lambda_grid: Tuple[float, ...] = field(
        default_factory=_settings_tuple("IMAGINARITY_LAMBDA_GRID")
    )
    workers: int = field(default_factory=lambda: settings.IMAGINARITY_PROPERTY_WORKERS)

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError(f"trials must be at least 1, got {self.trials}")
        if not self.dims or any(d < 1 for d in self.dims):
            raise DomainError(f"dimensions must be positive integers, got {self.dims}")
        if self.tolerance <= 0 or self.equality_tolerance <= 0:
            raise DomainError("tolerances must be positive")
        if self.workers < 1:
            raise DomainError(f"workers must be at least 1, got {self.workers}")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def grids(self) -> dict:
        return {
            "alpha_grid": self.alpha_grid,
            "z_ceiling": self.z_ceiling,
            "q_grid": self.q_grid,
            "lambda_grid": self.lambda_grid,
        }

    def measures(self, measure_id):
        return measure_grid(measure_id, **self.grids)


@dataclass
class PropertyReport:
    check_id: str
    trials: int
    tolerance: float
    failures: int = 0
    worst_margin: float = math.inf
    failing: Optional[str] = None
    vacuous: int = 0
    regenerated: int = 0
    skipped: int = 0
    discrepancies: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        worst = None if math.isinf(self.worst_margin) else self.worst_margin
        return {
            "check": self.check_id,
            "trials": self.trials,
            "failures": self.failures,
            "worst_margin": worst,
            "tolerance": self.tolerance,
            "failing": self.failing,
            "vacuous": self.vacuous,
            "regenerated": self.regenerated,
            "skipped": self.skipped,
            "discrepancies": self.discrepancies,
        }


def summary_table(reports) -> str:
    header = ("check", "trials", "failures", "worst margin", "vacuous", "status")
    rows = [header]
    for report in reports:
        worst = report.worst_margin
        worst = "" if math.isinf(worst) else format_number(worst, 4)
        rows.append(
            (
                report.check_id,
                str(report.trials),
                str(report.failures),
                worst,
                str(report.vacuous),
                "ok" if report.passed else "FAIL",
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    return "\n".join(
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    )


def trial_seed(seed, check_id, index, attempt=0) -> int:
    entropy = [seed, zlib.crc32(check_id.encode("utf-8")), index, attempt]
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


class Trial:
    """One seeded instance of a check: its dimension, grid point and generator."""

    def __init__(self, config, index, seed, dim, point):
        self.config = config
        self.index = index
        self.seed = seed
        self.dim = dim
        self.point = point
        self.rng = np.random.default_rng(seed)
        self.discrepancies = []

    def __repr__(self):
        return (
            f"trial {self.index} "
            f"(seed={self.seed}, dim={self.dim}, point={self.point!r})"
        )

    def note_discrepancy(self, message):
        """Record a result the check accepts but the report should surface."""
        self.discrepancies.append(message)

    def sub_seed(self) -> int:
        return int(self.rng.integers(2**32))

    def state(self, dim=None, rank=None) -> DensityMatrix:
        return random_density(dim or self.dim, rank, seed=self.sub_seed())

    def real_state(self, dim=None) -> DensityMatrix:
        return random_real_density(dim or self.dim, seed=self.sub_seed())

    def pd_state(self, dim=None, real=False) -> DensityMatrix:
        return random_pd_density(dim or self.dim, seed=self.sub_seed(), real=real)

    def random_rank(self, dim=None) -> int:
        return int(self.rng.integers(1, (dim or self.dim) + 1))


class Check:
    """
    Base class of every randomized check.

    Subclasses set ``check_id`` and implement ``margin(trial)``; ``points``
    lists the grid the trials cycle through, ``trials_scale`` stretches the
    configured trial count and ``exact`` selects the equality tolerance.
    ``margin`` returns ``None`` when the trial's hypothesis does not hold and
    raises ``RegenerateTrial`` when the instance has to be redrawn.
    """

    check_id = None
    description = ""
    exact = False
    trials_scale = 1.0

    def points(self, config):
        return [None]

    def margin(self, trial) -> Optional[float]:
        raise NotImplementedError

    def tolerance(self, config) -> float:
        return config.equality_tolerance if self.exact else config.tolerance

    def trial_count(self, config) -> int:
        return max(1, math.ceil(config.trials * self.trials_scale))

    def _run_trial(self, config, points, index):
        dim = config.dims[index % len(config.dims)]
        point = points[(index // len(config.dims)) % len(points)]
        attempts = settings.IMAGINARITY_REGENERATE_ATTEMPTS
        for attempt in range(attempts):
            seed = trial_seed(config.seed, self.check_id, index, attempt)
            trial = Trial(config, index, seed, dim, point)
            try:
                return trial, self.margin(trial), attempt
            except RegenerateTrial as e:
                logger.warning("%s: regenerating %r: %s", self.check_id, trial, e)
        return trial, RegenerateTrial, attempts

    def run(self, config: PropertyConfig) -> PropertyReport:
        points = self.points(config)
        if not points:
            raise DomainError(f"{self.check_id} has an empty parameter grid")
        count = self.trial_count(config)
        tolerance = self.tolerance(config)
        logger.info("running %s with %d trials", self.check_id, count)

        run_one = partial(self._run_trial, config, points)
        if config.workers > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                outcomes = list(pool.map(run_one, range(count)))
        else:
            outcomes = [run_one(index) for index in range(count)]

        report = PropertyReport(self.check_id, count, tolerance)
        for trial, margin, attempts in outcomes:
            report.regenerated += attempts
            if margin is RegenerateTrial:
                report.skipped += 1
                continue
            if trial.discrepancies:
                report.discrepancies += 1
            if margin is None:
                report.vacuous += 1
                continue
            report.worst_margin = min(report.worst_margin, margin)
            if margin < -tolerance:
                report.failures += 1
                if report.failing is None:
                    report.failing = repr(trial)
                logger.warning(
                    "%s failed on %r: margin %s below -%s",
                    self.check_id,
                    trial,
                    format_number(margin),
                    format_number(tolerance),
                )
        logger.info(
            "%s finished: %d trials, %d failures, %d vacuous",
            self.check_id,
            report.trials,
            report.failures,
            report.vacuous,
        )
        return report


def equality_margin(*deviations) -> float:
    return -max(abs(d) for d in deviations)
