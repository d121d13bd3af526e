from imaginarity.properties.axioms import MEASURE_IDS, axiom_checks, run_axiom_suite
from imaginarity.properties.base import (
    Check,
    PropertyConfig,
    PropertyReport,
    RegenerateTrial,
    summary_table,
    trial_seed,
)
from imaginarity.properties.examples import ExampleReport, reproduce_examples
from imaginarity.properties.suites import expand_suites, known_suites, run_suites
from imaginarity.properties.theorems import (
    CATALOG,
    GROUPS,
    get_check,
    run_theorem_suite,
)
