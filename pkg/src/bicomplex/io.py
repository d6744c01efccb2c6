"""JSON interchange for bicomplex scalars, vectors, matrices and measures.

A bicomplex scalar is ``[x0, x1, x2, x3]``, a hyperbolic scalar ``[h1, h2]``
and a complex number ``[re, im]``.  A matrix file looks like::

    {"n": 2,
     "entries": [[[1, 0, 0, 0], [0, 0, 0, 0]],
                 [[0, 0, 0, 0], [2, 0, 0, 0]]],
     "vector": [[1, 0, 0, 0], [1, 0, 0, 0]]}

``vector`` is optional.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import ParseError
from .hilbert import BCVector
from .measure import BCFunctionSamples
from .operators import BCMatrix
from .scalars import Bicomplex, Hyperbolic


def _reject_constant(name):
    raise ParseError(f"non-finite number {name!r} is not allowed")


def loads(text: str):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def load(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def _real(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ParseError(f"{where}: number is not finite")
    return value


def parse_bicomplex(obj, where: str = "value") -> Bicomplex:
    if not isinstance(obj, list) or len(obj) != 4:
        got = len(obj) if isinstance(obj, list) else type(obj).__name__
        raise ParseError(f"{where}: expected a 4-element array [x0, x1, x2, x3], got {got}")
    return Bicomplex(*(_real(v, f"{where}[{i}]") for i, v in enumerate(obj)))


def parse_hyperbolic(obj, where: str = "value") -> Hyperbolic:
    if not isinstance(obj, list) or len(obj) != 2:
        raise ParseError(f"{where}: expected a 2-element array [h1, h2]")
    return Hyperbolic(_real(obj[0], f"{where}[0]"), _real(obj[1], f"{where}[1]"))


def parse_vector(obj, where: str = "vector", n: Optional[int] = None) -> BCVector:
    if isinstance(obj, dict) and "vector" in obj:
        obj = obj["vector"]
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"{where}: expected a non-empty array of 4-tuples")
    if n is not None and len(obj) != n:
        raise ParseError(f"{where}: expected {n} entries, got {len(obj)}")
    return BCVector([parse_bicomplex(e, f"{where}[{i}]").to_list() for i, e in enumerate(obj)])


def parse_matrix(obj, where: str = "entries", n: Optional[int] = None) -> BCMatrix:
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"{where}: expected a non-empty array of rows")
    n = len(obj) if n is None else n
    if len(obj) != n:
        raise ParseError(f"{where}: expected {n} rows, got {len(obj)}")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{where}[{i}]: expected a row of {n} entries")
        rows.append([parse_bicomplex(e, f"{where}[{i}][{j}]").to_list() for j, e in enumerate(row)])
    return BCMatrix(np.array(rows))


def parse_matrix_file(doc) -> tuple[BCMatrix, Optional[BCVector]]:
    """Validate a matrix document; returns the matrix and the optional vector."""
    if not isinstance(doc, dict):
        raise ParseError("matrix file must be a JSON object")
    if "entries" not in doc:
        raise ParseError("matrix file is missing 'entries'")
    n = doc.get("n")
    if n is not None and (isinstance(n, bool) or not isinstance(n, int) or n < 1):
        raise ParseError(f"'n' must be a positive integer, got {n!r}")
    matrix = parse_matrix(doc["entries"], "entries", n)
    vector = None
    if doc.get("vector") is not None:
        vector = parse_vector(doc["vector"], "vector", matrix.n)
    return matrix, vector


def parse_function_samples(doc) -> BCFunctionSamples:
    if not isinstance(doc, dict) or not {"a", "b", "values"} <= doc.keys():
        raise ParseError("function samples need 'a', 'b' and 'values'")
    values = [parse_bicomplex(v, f"values[{i}]").to_list() for i, v in enumerate(doc["values"])]
    if "n" in doc and doc["n"] != len(values):
        raise ParseError(f"'n' = {doc['n']} but {len(values)} values given")
    try:
        return BCFunctionSamples(_real(doc["a"], "a"), _real(doc["b"], "b"), np.array(values))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# --------------------------------------------------------------------------
# encoding
# --------------------------------------------------------------------------

def complex_to_json(z) -> list[float]:
    return [float(np.real(z)) + 0.0, float(np.imag(z)) + 0.0]


def complex_matrix_to_json(a) -> list:
    a = np.asarray(a)
    # "+ 0.0" folds negative zeros so reports do not print -0.0
    return np.stack([a.real + 0.0, a.imag + 0.0], axis=-1).tolist()


def complex_vector_to_json(v) -> list:
    return complex_matrix_to_json(v)


def matrix_to_json(t: BCMatrix) -> dict:
    return {"n": t.n, "entries": t.to_list()}


def vector_to_json(x: BCVector) -> list:
    return x.to_list()


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)
