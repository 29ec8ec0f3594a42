"""JSON/CSV interchange formats and deterministic report emission.

Wire formats:
  matrix      {"n": int, "rows": [[...], ...]}           row-major reals
  polynomial  {"coeffs": [c_d, ..., c_0]}                 descending powers
  spectrum    {"values": [[re, im], ...]}                 bare reals also accepted
  generator   {"kind": str, "n": int, "seed": int, "margin": real}
  form        {"n": int, "m": int, "kind": str, "entries": [[...], ...]}
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from numbers import Integral, Real

import numpy as np

from .errors import InputError
from .forms import FormMatrix
from .linalg import as_matrix
from .mclass import GeneratorSpec


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from None


def _require(d, name: str):
    if not isinstance(d, dict):
        raise InputError(f"expected a JSON object with field {name!r}")
    if name not in d:
        raise InputError(f"missing field {name!r}")
    return d[name]


def _as_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise InputError(f"field {name!r} must be an integer")
    return int(value)


def _as_real(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, Real):
        raise InputError(f"field {name!r} must be a real number")
    return float(value)


def matrix_from_dict(d) -> np.ndarray:
    n = _as_int(_require(d, "n"), "n")
    rows = _require(d, "rows")
    if n < 1:
        raise InputError("field 'n' must be a positive integer")
    if not isinstance(rows, list) or len(rows) != n:
        raise InputError(f"field 'rows' must be a list of {n} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"field 'rows'[{i}] must be a list of length {n}")
    try:
        return as_matrix(rows)
    except InputError as exc:
        raise InputError(f"field 'rows': {exc}") from None


def matrix_to_dict(a) -> dict:
    m = as_matrix(a)
    return {"n": int(m.shape[0]), "rows": [[float(x) for x in row] for row in m]}


def spectrum_from_dict(d) -> np.ndarray:
    values = _require(d, "values")
    if not isinstance(values, list) or not values:
        raise InputError("field 'values' must be a nonempty list")
    out = []
    for i, v in enumerate(values):
        if isinstance(v, list):
            if len(v) != 2:
                raise InputError(f"field 'values'[{i}] must be [re, im]")
            out.append(complex(_as_real(v[0], f"values[{i}][0]"),
                               _as_real(v[1], f"values[{i}][1]")))
        else:
            out.append(complex(_as_real(v, f"values[{i}]"), 0.0))
    return np.array(out, dtype=complex)


def spectrum_to_dict(values) -> dict:
    vals = np.asarray(values, dtype=complex).ravel()
    return {"values": [[float(v.real), float(v.imag)] for v in vals]}


def poly_from_dict(d) -> np.ndarray:
    coeffs = _require(d, "coeffs")
    if not isinstance(coeffs, list) or len(coeffs) < 2:
        raise InputError("field 'coeffs' must list at least two descending-power coefficients")
    return np.array([_as_real(c, f"coeffs[{i}]") for i, c in enumerate(coeffs)])


def generator_spec_from_dict(d) -> GeneratorSpec:
    kind = _require(d, "kind")
    if not isinstance(kind, str):
        raise InputError("field 'kind' must be a string")
    n = _as_int(_require(d, "n"), "n")
    seed = _as_int(_require(d, "seed"), "seed")
    margin = _as_real(d.get("margin", 0.1), "margin")
    return GeneratorSpec(kind=kind, n=n, seed=seed, margin=margin)


def form_to_dict(form: FormMatrix) -> dict:
    return {"n": form.n, "m": form.m, "kind": form.kind,
            "entries": [[float(x) for x in row] for row in form.entries]}


def form_to_csv(form: FormMatrix, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for row in form.entries:
            writer.writerow([repr(float(x)) for x in row])


def jsonable(obj):
    """Recursively convert reports to plain JSON-serializable values."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def dumps_report(report: dict) -> str:
    """Deterministic JSON: sorted keys, fixed layout, repr-exact floats."""
    return json.dumps(jsonable(report), indent=2, sort_keys=True)
