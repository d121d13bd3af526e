from dataclasses import dataclass, field
from typing import List, Optional

from imaginarity.conf import settings
from imaginarity.helpers import (
    DomainError,
    NotPositiveDefiniteError,
    get_module_class,
)

# slack allowed when a parameter sits exactly on the boundary of its domain
_BOUNDARY = 1e-12


@dataclass(frozen=True)
class AZParams:
    """``(alpha, z)`` with ``0 < max(alpha, 1 - alpha) <= z < 1``."""

    alpha: float
    z: float

    def __post_init__(self):
        alpha, z = float(self.alpha), float(self.z)
        if not (0 < max(alpha, 1 - alpha) <= z + _BOUNDARY and z < 1):
            raise DomainError(
                f"(alpha, z) = ({alpha}, {z}) violates "
                "0 < max(alpha, 1 - alpha) <= z < 1"
            )
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "z", z)

    @classmethod
    def grid(cls, alpha_grid=None, z_ceiling=None) -> List["AZParams"]:
        """Lowest, middle and ceiling ``z`` for every admissible ``alpha``."""
        if alpha_grid is None:
            alpha_grid = settings.IMAGINARITY_ALPHA_GRID
        if z_ceiling is None:
            z_ceiling = settings.IMAGINARITY_Z_CEILING
        points = []
        for alpha in alpha_grid:
            z_min = max(alpha, 1 - alpha)
            if not 0 < alpha < 1 or z_min > z_ceiling:
                continue
            for z in sorted({z_min, (z_min + z_ceiling) / 2, z_ceiling}):
                points.append(cls(alpha, z))
        return points


def check_open_unit(name, value):
    if not 0 < value < 1:
        raise DomainError(f"{name} must lie in (0, 1), got {value}")
    return float(value)


@dataclass(frozen=True)
class MeasureValue:
    measure_id: str
    parameters: dict
    value: Optional[float]
    note: str = ""


@dataclass
class MeasureReport:
    label: str
    values: List[MeasureValue] = field(default_factory=list)

    def to_dict(self):
        return {
            "label": self.label,
            "values": [
                {
                    "measure": v.measure_id,
                    "parameters": v.parameters,
                    "value": v.value,
                    "note": v.note,
                }
                for v in self.values
            ],
        }


class ImaginarityMeasure:
    """
    Base class of the four measures. Subclasses set ``measure_id`` and
    implement ``_value``; instances carry their parameters and are callables
    on ``DensityMatrix`` values.
    """

    measure_id = None
    requires_positive_definite = False

    def __call__(self, rho) -> float:
        if self.requires_positive_definite and not rho.is_positive_definite():
            raise NotPositiveDefiniteError(
                f"{self.measure_id} measure is defined on positive definite "
                "states only",
                magnitude=float(-rho.eigenvalues()[0]),
            )
        return self._value(rho)

    def _value(self, rho) -> float:
        raise NotImplementedError

    @property
    def parameters(self) -> dict:
        return {}

    @classmethod
    def grid(cls, **grids) -> List["ImaginarityMeasure"]:
        """
        Instances over the parameter grid. Keyword arguments ``alpha_grid``,
        ``z_ceiling``, ``q_grid`` and ``lambda_grid`` replace the settings;
        measures ignore the grids they have no parameter for.
        """
        return [cls()]

    def __eq__(self, other):
        return type(self) is type(other) and self.parameters == other.parameters

    def __hash__(self):
        return hash((type(self), tuple(sorted(self.parameters.items()))))

    def __repr__(self):
        if not self.parameters:
            return self.measure_id
        args = ", ".join(f"{k}={v:g}" for k, v in self.parameters.items())
        return f"{self.measure_id}({args})"

    def evaluate(self, rho) -> MeasureValue:
        try:
            value = self(rho)
        except NotPositiveDefiniteError:
            return MeasureValue(
                self.measure_id,
                self.parameters,
                None,
                "undefined (not positive definite)",
            )
        # reported values within the faithfulness tolerance are exact zeros
        if abs(value) <= settings.IMAGINARITY_FAITHFULNESS_TOL:
            value = 0.0
        return MeasureValue(self.measure_id, self.parameters, value)


def measure_class(measure_id):
    try:
        path = settings.IMAGINARITY_MEASURES[measure_id]
    except KeyError:
        known = ", ".join(sorted(settings.IMAGINARITY_MEASURES))
        raise DomainError(f"unknown measure {measure_id!r}; known measures: {known}")
    return get_module_class(path)


def get_measure(measure_id, **parameters) -> ImaginarityMeasure:
    # "lambda" is accepted as the spelling of the operator measure's parameter
    if "lambda" in parameters:
        parameters["lam"] = parameters.pop("lambda")
    return measure_class(measure_id)(**parameters)


def measure_grid(measure_id, **grids) -> List[ImaginarityMeasure]:
    return measure_class(measure_id).grid(**grids)


def evaluate_report(rho, label, selection) -> MeasureReport:
    return MeasureReport(label, [measure.evaluate(rho) for measure in selection])
