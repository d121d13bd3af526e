import json
import os

import numpy as np

from imaginarity.channels import random_cptp
from imaginarity.helpers import CompletenessError, NotHermitianError, ParseError
from imaginarity.parsers import (
    dump_kraus,
    dump_state,
    parse_kraus,
    parse_state,
    read_kraus,
    read_state,
    write_kraus,
    write_state,
)
from imaginarity.states import random_density

from .utils import BaseTestCase, data_path, rho_0


class StateDocumentTestCase(BaseTestCase):
    def test_read(self):
        rho = read_state(data_path("rho_0.json"))
        self.assertEqual(rho.dim, 2)
        self.assertMatrixClose(rho.matrix, rho_0().matrix, tol=1e-15)

    def test_bit_exact(self):
        rho = random_density(4, seed=21)
        self.assertEqual(parse_state(dump_state(rho)), rho)

    def test_write(self):
        path = os.path.join(self.output_dir, "state.json")
        rho = random_density(3, 2, seed=2)
        write_state(path, rho)
        self.assertEqual(read_state(path), rho)

    def test_layout(self):
        document = json.loads(dump_state(rho_0()))
        self.assertEqual(document["dim"], 2)
        self.assertEqual(document["matrix"][1][0], [0.3, 0.1])

    def test_not_hermitian(self):
        with self.assertRaises(NotHermitianError) as raised:
            read_state(data_path("not_hermitian.json"))
        self.assertAlmostEqual(raised.exception.magnitude, 0.2)

    def test_ragged(self):
        self.assertRaises(ParseError, read_state, data_path("ragged.json"))

    def test_non_finite(self):
        with self.assertRaises(ParseError) as raised:
            read_state(data_path("non_finite.json"))
        self.assertIn("matrix[0][1] must be finite", str(raised.exception))

    def test_missing_file(self):
        self.assertRaises(ParseError, read_state, data_path("missing.json"))

    def test_malformed(self):
        documents = [
            "not json",
            "[1, 2]",
            '{"matrix": [[[1, 0]]]}',
            '{"dim": 1}',
            '{"dim": 0, "matrix": []}',
            '{"dim": true, "matrix": [[[1, 0]]]}',
            '{"dim": 1, "matrix": [[[1, 0, 0]]]}',
            '{"dim": 1, "matrix": [[["1", 0]]]}',
            '{"dim": 1, "matrix": [[1]]}',
            '{"dim": 2, "matrix": [[[1, 0], [0, 0]]]}',
            '{"dim": 1, "matrix": [[[NaN, 0]]]}',
            '{"dim": 1, "matrix": [[[1, -Infinity]]]}',
        ]
        for text in documents:
            with self.subTest(text=text):
                self.assertRaises(ParseError, parse_state, text)

    def test_tolerances_pass_through(self):
        text = json.dumps({"dim": 1, "matrix": [[[1.0 + 1e-9, 0.0]]]})
        self.assertEqual(parse_state(text, trace_tol=1e-8).dim, 1)


class KrausDocumentTestCase(BaseTestCase):
    def test_bit_exact(self):
        channel = random_cptp(3, 2, seed=9)
        parsed = parse_kraus(dump_kraus(channel))
        for K, L in zip(channel.operators, parsed.operators):
            np.testing.assert_array_equal(K, L)

    def test_write(self):
        path = os.path.join(self.output_dir, "kraus.json")
        write_kraus(path, random_cptp(2, 3, seed=1))
        self.assertEqual(len(read_kraus(path)), 3)

    def test_malformed(self):
        documents = [
            '{"dim_in": 1, "operators": [[[[1, 0]]]]}',
            '{"dim_in": 1, "dim_out": 1, "operators": []}',
            '{"dim_in": 1, "dim_out": 1, "operators": [[[1, 0]]]}',
            '{"dim_in": 2, "dim_out": 1, "operators": [[[[1, 0]]]]}',
        ]
        for text in documents:
            with self.subTest(text=text):
                self.assertRaises(ParseError, parse_kraus, text)

    def test_incomplete(self):
        text = '{"dim_in": 1, "dim_out": 1, "operators": [[[[0.5, 0]]]]}'
        self.assertRaises(CompletenessError, parse_kraus, text)
