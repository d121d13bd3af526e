import csv
import io
import json
import os
from contextlib import redirect_stdout
from unittest import mock

from imaginarity.cli import main
from imaginarity.parsers import read_kraus, read_state
from imaginarity.properties import CATALOG, Check
from imaginarity.properties.examples import EXAMPLES
from imaginarity.states import is_real_state

from .utils import BaseTestCase, data_path


class AlwaysFails(Check):
    check_id = "theorem-4-1"

    def margin(self, trial):
        return -1.0


class CommandTestCase(BaseTestCase):
    def run_cli(self, *argv):
        stdout = io.StringIO()
        with redirect_stdout(stdout):
            code = main(list(argv))
        return code, stdout.getvalue()

    def output(self, name):
        with open(os.path.join(self.output_dir, name), encoding="utf-8") as f:
            return f.read()


class MeasureCommandTestCase(CommandTestCase):
    def test_table(self):
        code, out = self.run_cli("measure", data_path("rho_0.json"))
        self.assertEqual(code, 0)
        self.assertIn("renyi-az(alpha=0.5, z=0.5)", out)
        self.assertIn("operator(lambda=0.5)", out)
        self.assertIn("0.0202041028867", out)

    def test_csv(self):
        code, out = self.run_cli(
            "measure",
            data_path("rho_0.json"),
            "--renyi",
            "--alpha",
            "0.3",
            "--format",
            "csv",
        )
        self.assertEqual(code, 0)
        rows = list(csv.reader(io.StringIO(out)))
        self.assertEqual(rows[0], ["measure-id", "alpha", "z", "q", "lambda", "value"])
        self.assertEqual(rows[1][:5], ["renyi-az", "0.3", "0.7", "", ""])
        self.assertEqual(len(rows), 2)

    def test_undefined_operator_in_full_report(self):
        code, out = self.run_cli(
            "measure", data_path("plus_i.json"), "--all", "--format", "json"
        )
        self.assertEqual(code, 0)
        values = {v["measure"]: v for v in json.loads(out)["values"]}
        self.assertIsNone(values["operator"]["value"])
        self.assertEqual(
            values["operator"]["note"], "undefined (not positive definite)"
        )
        self.assertAlmostEqual(values["tsallis"]["value"], 1.0)

    def test_requested_operator_on_singular_state(self):
        code, out = self.run_cli("measure", data_path("plus_i.json"), "--operator")
        self.assertEqual(code, 3)
        self.assertEqual(out, "")

    def test_invalid_state(self):
        code, _ = self.run_cli("measure", data_path("not_hermitian.json"))
        self.assertEqual(code, 3)

    def test_unreadable_documents(self):
        self.assertEqual(self.run_cli("measure", data_path("ragged.json"))[0], 2)
        self.assertEqual(self.run_cli("measure", data_path("missing.json"))[0], 2)
        self.assertEqual(self.run_cli("measure", data_path("non_finite.json"))[0], 2)

    def test_parameter_domain(self):
        code, _ = self.run_cli(
            "measure",
            data_path("rho_0.json"),
            "--renyi",
            "--alpha",
            "0.3",
            "--z",
            "0.5",
        )
        self.assertEqual(code, 4)
        self.assertEqual(
            self.run_cli("measure", data_path("rho_0.json"), "--q", "1.5")[0], 4
        )

    def test_grid(self):
        code, out = self.run_cli(
            "measure",
            data_path("mixed_3.json"),
            "--tsallis",
            "--grid",
            "--format",
            "csv",
        )
        self.assertEqual(code, 0)
        rows = list(csv.reader(io.StringIO(out)))[1:]
        self.assertEqual(len(rows), 5)
        self.assertEqual([row[-1] for row in rows], ["0"] * 5)

    def test_real_state_prints_zeros(self):
        argv = ("random", "real-state", "--dim", "3", "--seed", "5", "--out", "r.json")
        self.assertEqual(self.run_cli(*argv)[0], 0)
        code, out = self.run_cli(
            "measure",
            os.path.join(self.output_dir, "r.json"),
            "--renyi",
            "--alpha",
            "0.3",
            "--format",
            "csv",
        )
        self.assertEqual(code, 0)
        rows = list(csv.reader(io.StringIO(out)))
        self.assertEqual(rows[1], ["renyi-az", "0.3", "0.7", "", "", "0"])

    def test_out(self):
        code, out = self.run_cli(
            "measure",
            data_path("rho_0.json"),
            "--format",
            "json",
            "--out",
            "rho_0.out.json",
        )
        self.assertEqual((code, out), (0, ""))
        self.assertEqual(
            json.loads(self.output("rho_0.out.json"))["label"], data_path("rho_0.json")
        )

    def test_usage_error(self):
        with self.assertRaises(SystemExit) as raised:
            self.run_cli("measure")
        self.assertEqual(raised.exception.code, 2)


class ScanCommandTestCase(CommandTestCase):
    def test_byte_identical(self):
        state = data_path("delta_0.json")
        self.assertEqual(self.run_cli("scan", state, "--out", "first.csv")[0], 0)
        self.assertEqual(self.run_cli("scan", state, "--out", "second.csv")[0], 0)
        self.assertEqual(self.output("first.csv"), self.output("second.csv"))

    def test_rows_are_sorted(self):
        code, out = self.run_cli("scan", data_path("rho_0.json"))
        self.assertEqual(code, 0)
        rows = list(csv.reader(io.StringIO(out)))[1:]
        ids = [row[0] for row in rows]
        self.assertEqual(ids, sorted(ids))
        self.assertEqual(ids.count("umegaki"), 1)

    def test_renyi_rows_grow_with_z(self):
        code, out = self.run_cli(
            "scan", data_path("rho_0.json"), "--measure", "renyi-az"
        )
        self.assertEqual(code, 0)
        by_alpha = {}
        for row in list(csv.reader(io.StringIO(out)))[1:]:
            by_alpha.setdefault(row[1], []).append((float(row[2]), float(row[-1])))
        self.assertEqual(len(by_alpha), 5)
        for alpha, points in by_alpha.items():
            values = [value for _, value in sorted(points)]
            with self.subTest(alpha=alpha):
                self.assertEqual(len(values), 3)
                self.assertTrue(
                    all(low <= high + 1e-12 for low, high in zip(values, values[1:]))
                )

    def test_example_ordering_in_rows(self):
        code, out = self.run_cli("scan", data_path("rho_0.json"))
        self.assertEqual(code, 0)
        rows = list(csv.reader(io.StringIO(out)))[1:]
        values = {tuple(row[:5]): float(row[-1]) for row in rows}
        tsallis = values[("tsallis", "", "", "0.3", "")]
        renyi = values[("renyi-az", "0.5", "0.5", "", "")]
        self.assertLess(tsallis, renyi)

    def test_explicit_grids(self):
        code, out = self.run_cli(
            "scan",
            data_path("rho_0.json"),
            "--measure",
            "tsallis",
            "--q",
            "0.2,0.4",
            "--measure",
            "renyi-az",
            "--alpha",
            "0.3",
            "--z",
            "min,0.9",
        )
        self.assertEqual(code, 0)
        rows = list(csv.reader(io.StringIO(out)))[1:]
        self.assertEqual(
            [row[:5] for row in rows],
            [
                ["renyi-az", "0.3", "0.7", "", ""],
                ["renyi-az", "0.3", "0.9", "", ""],
                ["tsallis", "", "", "0.2", ""],
                ["tsallis", "", "", "0.4", ""],
            ],
        )

    def test_undefined_operator_values_are_blank(self):
        code, out = self.run_cli(
            "scan", data_path("plus_i.json"), "--measure", "operator"
        )
        self.assertEqual(code, 0)
        rows = list(csv.reader(io.StringIO(out)))[1:]
        self.assertTrue(rows)
        self.assertTrue(all(row[-1] == "" for row in rows))


class VerifyCommandTestCase(CommandTestCase):
    def test_passing_suite(self):
        code, out = self.run_cli("verify", "--suite", "theorem-4", "--trials", "3")
        self.assertEqual(code, 0)
        self.assertIn("theorem-4-1", out)
        self.assertIn("theorem-4-2", out)
        self.assertNotIn("FAIL", out)

    def test_json(self):
        code, out = self.run_cli(
            "verify",
            "--suite",
            "theorem-3-1",
            "--trials",
            "2",
            "--seed",
            "5",
            "--format",
            "json",
        )
        self.assertEqual(code, 0)
        document = json.loads(out)
        self.assertEqual(document["config"]["seed"], 5)
        self.assertEqual(document["config"]["trials"], 2)
        self.assertEqual([r["check"] for r in document["reports"]], ["theorem-3-1"])

    def test_deterministic_output(self):
        argv = (
            "verify", "--suite", "axioms:umegaki", "--trials", "3", "--format", "json"
        )
        self.assertEqual(self.run_cli(*argv), self.run_cli(*argv))

    def test_failed_check(self):
        with mock.patch.dict(CATALOG, {"theorem-4-1": AlwaysFails()}):
            code, out = self.run_cli(
                "verify", "--suite", "theorem-4-1", "--trials", "2"
            )
        self.assertEqual(code, 1)
        self.assertIn("FAIL", out)

    def test_unknown_suite(self):
        self.assertEqual(self.run_cli("verify", "--suite", "theorem-9")[0], 4)

    def test_bad_config(self):
        self.assertEqual(
            self.run_cli("verify", "--suite", "theorem-4-1", "--trials", "0")[0], 4
        )


class ExamplesCommandTestCase(CommandTestCase):
    def test_examples(self):
        code, out = self.run_cli("examples")
        self.assertEqual(code, 0)
        self.assertIn("rho_0", out)
        self.assertIn("delta_0", out)
        self.assertEqual(len(out.strip().splitlines()), 6)

    def test_json(self):
        code, out = self.run_cli("examples", "--format", "json")
        self.assertEqual(code, 0)
        self.assertEqual(len(json.loads(out)["quantities"]), 6)

    def test_ordering_violation(self):
        reversed_examples = tuple(
            (label, rows, tuple(reversed(chain))) for label, rows, chain in EXAMPLES
        )
        with mock.patch("imaginarity.properties.examples.EXAMPLES", reversed_examples):
            code, out = self.run_cli("examples")
        self.assertEqual((code, out), (1, ""))


class RandomCommandTestCase(CommandTestCase):
    def test_states_are_reproducible(self):
        for kind in ("state", "real-state", "pd-state"):
            with self.subTest(kind=kind):
                self.run_cli(
                    "random", kind, "--dim", "3", "--seed", "5", "--out", "a.json"
                )
                self.run_cli(
                    "random", kind, "--dim", "3", "--seed", "5", "--out", "b.json"
                )
                self.assertEqual(self.output("a.json"), self.output("b.json"))
                rho = read_state(os.path.join(self.output_dir, "a.json"))
                self.assertEqual(rho.dim, 3)
                if kind == "real-state":
                    self.assertTrue(is_real_state(rho))

    def test_operations(self):
        code, _ = self.run_cli(
            "random", "real-op", "--dim", "2", "--n-kraus", "3", "--out", "op.json"
        )
        self.assertEqual(code, 0)
        channel = read_kraus(os.path.join(self.output_dir, "op.json"))
        self.assertEqual(len(channel), 3)
        code, out = self.run_cli("random", "cptp", "--dim", "2", "--seed", "1")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["dim_in"], 2)

    def test_rank(self):
        code, out = self.run_cli("random", "state", "--dim", "3", "--rank", "1")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["dim"], 3)
        self.assertEqual(
            self.run_cli("random", "state", "--dim", "2", "--rank", "3")[0], 4
        )
