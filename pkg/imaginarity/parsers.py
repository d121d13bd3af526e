"""
State and Kraus documents.

A state document is ``{"dim": d, "matrix": rows}`` and a Kraus document is
``{"dim_in": n, "dim_out": m, "operators": [rows, ...]}``; every matrix entry
is a two-element ``[re, im]`` array. Floats are written with their shortest
round-trip representation, so ``parse(dump(x))`` is bit-exact.
"""

import json
import math
from pathlib import Path

import numpy as np

from imaginarity.channels import KrausSet
from imaginarity.helpers import ParseError
from imaginarity.states import DensityMatrix


def _load(text, what):
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{what} document is not valid JSON: {e}")
    if not isinstance(document, dict):
        raise ParseError(f"{what} document must be an object")
    return document


def _field(document, name, what):
    try:
        return document[name]
    except KeyError:
        raise ParseError(f"{what} document is missing the '{name}' field")


def _dimension(value, name):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ParseError(f"'{name}' must be a positive integer, got {value!r}")
    return value


def _entry(value, where):
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
        )
    ):
        raise ParseError(f"{where} must be a [re, im] pair of numbers, got {value!r}")
    if not all(math.isfinite(x) for x in value):
        raise ParseError(f"{where} must be finite, got {value!r}")
    return complex(float(value[0]), float(value[1]))


def parse_matrix(rows, n_rows, n_cols, where="matrix") -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != n_rows:
        raise ParseError(f"{where} must have {n_rows} rows")
    M = np.empty((n_rows, n_cols), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n_cols:
            raise ParseError(f"{where}[{i}] must have {n_cols} entries")
        for j, value in enumerate(row):
            M[i, j] = _entry(value, f"{where}[{i}][{j}]")
    return M


def dump_matrix(M) -> list:
    rows = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in rows]


def parse_state(text, **tolerances) -> DensityMatrix:
    document = _load(text, "state")
    dim = _dimension(_field(document, "dim", "state"), "dim")
    M = parse_matrix(_field(document, "matrix", "state"), dim, dim)
    return DensityMatrix(M, **tolerances)


def dump_state(rho: DensityMatrix) -> str:
    return json.dumps({"dim": rho.dim, "matrix": dump_matrix(rho.matrix)}) + "\n"


def parse_kraus(text) -> KrausSet:
    document = _load(text, "kraus")
    dim_in = _dimension(_field(document, "dim_in", "kraus"), "dim_in")
    dim_out = _dimension(_field(document, "dim_out", "kraus"), "dim_out")
    operators = _field(document, "operators", "kraus")
    if not isinstance(operators, list) or not operators:
        raise ParseError("'operators' must be a non-empty list of matrices")
    return KrausSet(
        tuple(
            parse_matrix(K, dim_out, dim_in, where=f"operators[{index}]")
            for index, K in enumerate(operators)
        )
    )


def dump_kraus(channel: KrausSet) -> str:
    document = {
        "dim_in": channel.dim_in,
        "dim_out": channel.dim_out,
        "operators": [dump_matrix(K) for K in channel.operators],
    }
    return json.dumps(document) + "\n"


def read_state(path, **tolerances) -> DensityMatrix:
    return parse_state(_read(path), **tolerances)


def write_state(path, rho: DensityMatrix):
    Path(path).write_text(dump_state(rho), encoding="utf-8")


def read_kraus(path) -> KrausSet:
    return parse_kraus(_read(path))


def write_kraus(path, channel: KrausSet):
    Path(path).write_text(dump_kraus(channel), encoding="utf-8")


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}")
