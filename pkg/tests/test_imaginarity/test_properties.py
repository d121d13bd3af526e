import math
from unittest import mock

from imaginarity.channels import MeasurementOutcomes
from imaginarity.conf import override_settings
from imaginarity.helpers import DomainError, UnknownCheckError
from imaginarity.properties import (
    CATALOG,
    GROUPS,
    MEASURE_IDS,
    Check,
    PropertyConfig,
    PropertyReport,
    RegenerateTrial,
    axiom_checks,
    expand_suites,
    get_check,
    known_suites,
    run_axiom_suite,
    run_suites,
    run_theorem_suite,
    summary_table,
    trial_seed,
)
from imaginarity.properties.axioms import Faithfulness, StrongMonotonicity
from imaginarity.properties.base import Trial
from imaginarity.states import plus_i_state

from .utils import BaseTestCase


def small_config(**overrides):
    values = {
        "dims": (2, 3),
        "trials": 8,
        "seed": 3,
        "alpha_grid": (0.25, 0.5, 0.8),
        "q_grid": (0.3, 0.7),
        "lambda_grid": (0.3, 0.7),
    }
    values.update(overrides)
    return PropertyConfig(**values)


class ScriptedCheck(Check):
    check_id = "scripted"

    def __init__(self, margins):
        self.margins = margins

    def margin(self, trial):
        margin = self.margins[trial.index % len(self.margins)]
        if margin is RegenerateTrial:
            raise RegenerateTrial("scripted")
        return margin


class NotingCheck(ScriptedCheck):
    def margin(self, trial):
        if trial.index % 3 == 0:
            trial.note_discrepancy("noted")
        return super().margin(trial)


class PropertyConfigTestCase(BaseTestCase):
    def test_defaults_from_settings(self):
        config = PropertyConfig()
        self.assertEqual(config.trials, 24)
        self.assertEqual(config.dims, (2, 3))
        self.assertEqual(config.seed, 7)
        with override_settings(IMAGINARITY_PROPERTY_TRIALS=5):
            self.assertEqual(PropertyConfig().trials, 5)

    def test_validation(self):
        for overrides in (
            {"trials": 0},
            {"dims": ()},
            {"dims": (0, 2)},
            {"tolerance": 0},
            {"workers": 0},
        ):
            with self.subTest(**overrides):
                self.assertRaises(DomainError, small_config, **overrides)

    def test_measures(self):
        config = small_config()
        self.assertEqual(len(config.measures("tsallis")), 2)
        self.assertEqual(len(config.measures("renyi-az")), 9)


class TrialSeedTestCase(BaseTestCase):
    def test_deterministic(self):
        self.assertEqual(trial_seed(0, "theorem-5", 3), trial_seed(0, "theorem-5", 3))

    def test_distinct(self):
        seeds = {
            trial_seed(0, "theorem-5", 3),
            trial_seed(1, "theorem-5", 3),
            trial_seed(0, "theorem-8", 3),
            trial_seed(0, "theorem-5", 4),
            trial_seed(0, "theorem-5", 3, attempt=1),
        }
        self.assertEqual(len(seeds), 5)


class CheckRunnerTestCase(BaseTestCase):
    def test_counts(self):
        report = ScriptedCheck([0.5, -1.0, None, 1e-12]).run(small_config(trials=8))
        self.assertEqual(report.trials, 8)
        self.assertEqual(report.failures, 2)
        self.assertEqual(report.vacuous, 2)
        self.assertEqual(report.worst_margin, -1.0)
        self.assertFalse(report.passed)
        self.assertTrue(report.failing.startswith("trial 1 "))
        self.assertEqual(len(self.log["warning"]), 2)

    def test_tolerance(self):
        report = ScriptedCheck([-1e-9]).run(small_config(tolerance=1e-8))
        self.assertTrue(report.passed)
        self.assertEqual(report.worst_margin, -1e-9)

    def test_skipped(self):
        with override_settings(IMAGINARITY_REGENERATE_ATTEMPTS=3):
            report = ScriptedCheck([RegenerateTrial, 0.1]).run(small_config(trials=4))
        self.assertEqual(report.skipped, 2)
        self.assertEqual(report.regenerated, 6)
        self.assertTrue(report.passed)

    def test_discrepancies(self):
        report = NotingCheck([0.1]).run(small_config(trials=7))
        self.assertTrue(report.passed)
        self.assertEqual(report.discrepancies, 3)
        self.assertEqual(report.to_dict()["discrepancies"], 3)

    def test_empty_grid(self):
        check = ScriptedCheck([0.0])
        check.points = lambda config: []
        self.assertRaises(DomainError, check.run, small_config())

    def test_report_dict(self):
        document = PropertyReport("scripted", 3, 1e-8).to_dict()
        self.assertIsNone(document["worst_margin"])
        self.assertEqual(document["failures"], 0)

    def test_summary_table(self):
        reports = [
            PropertyReport("good", 3, 1e-8, worst_margin=0.25),
            PropertyReport("bad", 3, 1e-8, failures=1, worst_margin=-0.5),
        ]
        lines = summary_table(reports).splitlines()
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[0].startswith("check"))
        self.assertTrue(lines[1].endswith("ok"))
        self.assertTrue(lines[2].endswith("FAIL"))

    def test_summary_table_exact_margin(self):
        report = PropertyReport("exact", 3, 1e-8, worst_margin=-0.0)
        line = summary_table([report]).splitlines()[1]
        self.assertEqual(line.split(), ["exact", "3", "0", "0", "0", "ok"])


class DeterminismTestCase(BaseTestCase):
    def test_same_seed_same_reports(self):
        config = small_config()
        first = [
            r.to_dict() for r in run_suites(["theorem-5", "axioms:tsallis"], config)
        ]
        second = [
            r.to_dict() for r in run_suites(["theorem-5", "axioms:tsallis"], config)
        ]
        self.assertEqual(first, second)

    def test_workers_do_not_change_reports(self):
        serial = run_theorem_suite("theorem-3-3", small_config()).to_dict()
        parallel = run_theorem_suite("theorem-3-3", small_config(workers=3)).to_dict()
        self.assertEqual(serial, parallel)


class SuiteSelectionTestCase(BaseTestCase):
    def test_groups(self):
        self.assertEqual(expand_suites(["lemma-1"]), ["lemma-1-1", "lemma-1-2"])
        self.assertEqual(
            expand_suites(["theorem-2"]),
            ["theorem-2-1", "theorem-2-2", "theorem-2-2-factorization"],
        )

    def test_no_duplicates(self):
        self.assertEqual(
            expand_suites(["lemma-1-1", "lemma-1", "lemma-1-1"]),
            ["lemma-1-1", "lemma-1-2"],
        )

    def test_all(self):
        expanded = expand_suites(["all"])
        self.assertEqual(expanded[0], "axioms:umegaki")
        self.assertEqual(expanded[-1], "examples")
        self.assertEqual(
            set(expanded) - {"examples"} - set(CATALOG),
            {f"axioms:{m}" for m in MEASURE_IDS},
        )
        self.assertEqual(len(expanded), len(set(expanded)))

    def test_every_catalog_id_is_grouped(self):
        members = set(expand_suites(list(GROUPS)))
        self.assertEqual(members, set(CATALOG))

    def test_unknown(self):
        with self.assertRaises(UnknownCheckError) as raised:
            expand_suites(["theorem-9"])
        self.assertIn("theorem-9", str(raised.exception))
        self.assertRaises(UnknownCheckError, expand_suites, ["axioms:coherence"])
        self.assertRaises(UnknownCheckError, get_check, "theorem-9")

    def test_known_suites(self):
        suites = known_suites()
        for name in (
            "all", "axioms", "examples", "lemmas", "axioms:operator", "theorem-6"
        ):
            self.assertIn(name, suites)

    def test_examples_suite(self):
        (report,) = run_suites(["examples"], small_config())
        self.assertEqual(report.check_id, "examples")
        self.assertTrue(report.passed)


class AxiomSuiteTestCase(BaseTestCase):
    def test_check_ids(self):
        ids = [check.check_id for check in axiom_checks("renyi-az")]
        self.assertEqual(
            ids,
            [
                "axioms:renyi-az:faithfulness",
                "axioms:renyi-az:monotonicity",
                "axioms:renyi-az:strong-monotonicity",
                "axioms:renyi-az:convexity",
                "axioms:renyi-az:direct-sum",
            ],
        )

    def test_every_measure_passes(self):
        config = small_config(trials=6)
        for measure_id in MEASURE_IDS:
            for report in run_axiom_suite(measure_id, config):
                with self.subTest(check=report.check_id):
                    self.assertTrue(report.passed, report.failing)
                    self.assertEqual(report.skipped, 0)
                    self.assertEqual(report.discrepancies, 0)

    def test_dimension_one_is_trivial(self):
        config = small_config(dims=(1,), trials=4)
        for measure_id in MEASURE_IDS:
            for report in run_axiom_suite(measure_id, config):
                with self.subTest(check=report.check_id):
                    self.assertTrue(report.passed, report.failing)
                    self.assertLessEqual(-report.worst_margin, config.tolerance)


class CatalogTestCase(BaseTestCase):
    def test_every_check_passes(self):
        config = small_config(trials=6)
        for check_id in sorted(CATALOG):
            with self.subTest(check=check_id):
                report = run_theorem_suite(check_id, config)
                self.assertTrue(report.passed, report.failing)
                self.assertFalse(math.isnan(report.worst_margin))

    def test_trials_scale(self):
        report = run_theorem_suite("lemma-1-1", small_config(trials=4))
        self.assertEqual(report.trials, 10)

    def test_exact_checks_use_equality_tolerance(self):
        config = small_config(trials=2, equality_tolerance=1e-9, tolerance=1e-6)
        self.assertEqual(run_theorem_suite("theorem-4-1", config).tolerance, 1e-9)
        self.assertEqual(run_theorem_suite("theorem-4-2", config).tolerance, 1e-6)

    def test_conditional_check_counts_vacuous_trials(self):
        report = run_theorem_suite("theorem-6", small_config(trials=12))
        self.assertEqual(report.trials, 12)
        self.assertLessEqual(report.vacuous, 12)
        self.assertTrue(report.passed)

    def test_vanishing_on_non_real_state_is_counted(self):
        check = Faithfulness("umegaki")
        with mock.patch.object(check, "value", return_value=0.0):
            report = check.run(small_config(dims=(2,), trials=4))
        self.assertTrue(report.passed)
        self.assertEqual(report.discrepancies, 2)
        self.assertEqual(len(self.log["warning"]), 2)

    def test_strong_monotonicity_renormalizes_kept_outcomes(self):
        check = StrongMonotonicity("tsallis")
        config = small_config(dims=(2,))
        trial = Trial(config, 0, 11, 2, config.measures("tsallis")[0])
        kept = plus_i_state()
        outcomes = MeasurementOutcomes(((0.5, kept),), dropped_mass=0.5)

        def value(measure, rho):
            return 0.6 if rho is kept else 0.8

        with override_settings(IMAGINARITY_DROPPED_MASS_LIMIT=0.9):
            with mock.patch(
                "imaginarity.properties.axioms.selective_measurement",
                return_value=outcomes,
            ):
                with mock.patch.object(check, "value", side_effect=value):
                    self.assertAlmostEqual(check.margin(trial), 0.2)
