"""
The two worked qubit examples: the orderings between measures they claim,
checked against an independent high-precision evaluation.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

import numpy as np

from imaginarity import oracle
from imaginarity.helpers import OrderingViolationError, format_number
from imaginarity.measures.base import get_measure
from imaginarity.properties.base import PropertyReport
from imaginarity.states import DensityMatrix

logger = logging.getLogger(__name__)

ORACLE_TOLERANCE = 1e-10

# entries as exact (re, im) pairs, scaled by 1/10
RHO_0 = ((("4", "0"), ("3", "-1")), (("3", "1"), ("6", "0")))
# the printed matrix is not Hermitian; this is its Hermitian correction
DELTA_0 = ((("6", "0"), ("1", "1")), (("1", "-1"), ("4", "0")))

EXAMPLES = (
    (
        "rho_0",
        RHO_0,
        (
            ("tsallis", {"q": 0.3}),
            ("renyi-az", {"alpha": 0.5, "z": 0.5}),
            ("tsallis", {"q": 0.5}),
        ),
    ),
    (
        "delta_0",
        DELTA_0,
        (
            ("operator", {"lambda": 0.3}),
            ("renyi-az", {"alpha": 0.5, "z": 0.5}),
            ("tsallis", {"q": 0.5}),
        ),
    ),
)


def example_state(rows) -> DensityMatrix:
    M = np.array([[complex(float(re), float(im)) for re, im in row] for row in rows])
    return DensityMatrix(M / 10)


@dataclass(frozen=True)
class ExampleQuantity:
    label: str
    measure_id: str
    parameters: dict
    value: float
    reference: float

    @property
    def deviation(self) -> float:
        return abs(self.value - self.reference)

    def to_dict(self):
        return {
            "state": self.label,
            "measure": self.measure_id,
            "parameters": self.parameters,
            "value": self.value,
            "oracle": self.reference,
            "deviation": self.deviation,
        }


@dataclass
class ExampleReport:
    quantities: List[ExampleQuantity] = field(default_factory=list)
    tolerance: float = ORACLE_TOLERANCE

    @property
    def mismatches(self) -> List[ExampleQuantity]:
        return [q for q in self.quantities if q.deviation > self.tolerance]

    def as_property_report(self) -> PropertyReport:
        report = PropertyReport("examples", len(self.quantities), self.tolerance)
        for quantity in self.quantities:
            margin = -quantity.deviation
            report.worst_margin = min(report.worst_margin, margin)
        report.failures = len(self.mismatches)
        if self.mismatches:
            first = self.mismatches[0]
            report.failing = f"{first.label} {first.measure_id}{first.parameters}"
        return report

    def to_dict(self):
        return {
            "quantities": [q.to_dict() for q in self.quantities],
            "tolerance": self.tolerance,
        }

    def table(self) -> str:
        lines = []
        for q in self.quantities:
            params = ", ".join(f"{k}={v:g}" for k, v in q.parameters.items())
            lines.append(
                f"{q.label:<8} {q.measure_id}({params}) = {format_number(q.value)}"
                f"  oracle {format_number(q.reference)}"
            )
        return "\n".join(lines)


def reproduce_examples() -> ExampleReport:
    """
    Evaluate every quantity of both examples, compare each with the oracle
    and assert the claimed strict orderings.

    Raises ``OrderingViolationError`` when an ordering fails; oracle
    mismatches are reported, not raised.
    """
    report = ExampleReport()
    for label, rows, chain in EXAMPLES:
        rho = example_state(rows)
        values = []
        for measure_id, parameters in chain:
            value = get_measure(measure_id, **parameters)(rho)
            reference = oracle.evaluate(measure_id, rows, Fraction(1, 10), **parameters)
            quantity = ExampleQuantity(label, measure_id, parameters, value, reference)
            if quantity.deviation > report.tolerance:
                logger.warning(
                    "%s %s%s deviates from the oracle by %.3e",
                    label,
                    measure_id,
                    parameters,
                    quantity.deviation,
                )
            report.quantities.append(quantity)
            values.append(value)
        for (lower_id, lower_params), (upper_id, upper_params), lower, upper in zip(
            chain, chain[1:], values, values[1:]
        ):
            if not lower < upper:
                raise OrderingViolationError(
                    f"{label}: expected {lower_id}{lower_params} = "
                    f"{format_number(lower)} < {upper_id}{upper_params} = "
                    f"{format_number(upper)}"
                )
    return report
