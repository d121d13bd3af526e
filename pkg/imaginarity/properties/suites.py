import logging

from imaginarity.helpers import UnknownCheckError
from imaginarity.properties.axioms import MEASURE_IDS, run_axiom_suite
from imaginarity.properties.examples import reproduce_examples
from imaginarity.properties.theorems import CATALOG, GROUPS, run_theorem_suite

logger = logging.getLogger(__name__)

AXIOM_PREFIX = "axioms:"


def known_suites():
    return sorted(
        {
            *CATALOG,
            *GROUPS,
            "axioms",
            "examples",
            "all",
            *(AXIOM_PREFIX + measure_id for measure_id in MEASURE_IDS),
        }
    )


def expand_suites(selection):
    """
    Resolve suite names (catalog ids, groups, ``axioms``, ``axioms:<measure>``,
    ``examples`` and ``all``) into an ordered list without duplicates.
    """
    expanded = []

    def visit(name):
        if name == "all":
            for group in ("axioms", "lemmas", "theorems", "identities", "examples"):
                visit(group)
        elif name == "axioms":
            for measure_id in MEASURE_IDS:
                visit(AXIOM_PREFIX + measure_id)
        elif name in GROUPS:
            for member in GROUPS[name]:
                visit(member)
        elif (
            name in CATALOG
            or name == "examples"
            or (
                name.startswith(AXIOM_PREFIX)
                and name[len(AXIOM_PREFIX) :] in MEASURE_IDS
            )
        ):
            if name not in expanded:
                expanded.append(name)
        else:
            raise UnknownCheckError(
                f"unknown suite {name!r}; known suites: {', '.join(known_suites())}"
            )

    for name in selection:
        visit(name)
    return expanded


def run_suites(selection, config):
    """Run every selected suite and return the list of ``PropertyReport``."""
    reports = []
    for name in expand_suites(selection):
        if name == "examples":
            reports.append(reproduce_examples().as_property_report())
        elif name.startswith(AXIOM_PREFIX):
            reports.extend(run_axiom_suite(name[len(AXIOM_PREFIX) :], config))
        else:
            reports.append(run_theorem_suite(name, config))
    failed = sum(1 for report in reports if not report.passed)
    logger.info("ran %d checks, %d failed", len(reports), failed)
    return reports
