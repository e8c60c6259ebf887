"""JSON file formats for measures, point sets and polynomials.

Measure:    {"dim": 2, "atoms": [{"angles": [a1, a2], "weight": {"re": x, "im": y}}, ...]}
Point set:  {"dim": 2, "points": [[a1, a2], ...]}
Polynomial: {"dim": 2, "coefficients": [{"k": [1, 1], "re": 1.0, "im": 0.0}, ...]}

Writers emit angles with 17 significant digits so files round-trip exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import AtomicMeasure, TorusPoint, points_array, to_points
from .errors import InvalidInputError
from .poly import AnalyticPolynomial, TrigPolynomial


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _angles(row) -> str:
    return "[" + ", ".join(_num(a) for a in row) + "]"


def measure_to_dict(mu: AtomicMeasure) -> dict:
    return {
        "dim": mu.dim,
        "atoms": [{"angles": [float(a) for a in row], "weight": {"re": float(w.real), "im": float(w.imag)}}
                  for row, w in zip(mu.angles, mu.weights)],
    }


def measure_from_dict(data: dict) -> AtomicMeasure:
    try:
        dim = int(data["dim"])
        atoms = data["atoms"]
        angles = [a["angles"] for a in atoms]
        weights = [complex(a["weight"]["re"], a["weight"].get("im", 0.0)) for a in atoms]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed measure document: {exc}") from exc
    if any(len(a) != dim for a in angles):
        raise InvalidInputError("atom angles do not match the declared dimension")
    return AtomicMeasure(dim, np.array(angles, dtype=float).reshape(-1, dim), weights)


def dumps_measure(mu: AtomicMeasure) -> str:
    atoms = ",\n    ".join(
        f'{{"angles": {_angles(row)}, "weight": {{"re": {_num(w.real)}, "im": {_num(w.imag)}}}}}'
        for row, w in zip(mu.angles, mu.weights))
    body = f"\n    {atoms}\n  " if atoms else ""
    return f'{{\n  "dim": {mu.dim},\n  "atoms": [{body}]\n}}\n'


def dumps_points(points) -> str:
    P = points_array(points)
    rows = ",\n    ".join(_angles(r) for r in P)
    return f'{{\n  "dim": {P.shape[1]},\n  "points": [\n    {rows}\n  ]\n}}\n'


def points_from_dict(data: dict) -> list[TorusPoint]:
    try:
        dim = int(data["dim"])
        rows = data["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed point-set document: {exc}") from exc
    if any(len(r) != dim for r in rows):
        raise InvalidInputError("point angles do not match the declared dimension")
    return to_points(points_array(rows))


def poly_to_dict(f: TrigPolynomial) -> dict:
    return {
        "dim": f.dim,
        "coefficients": [{"k": list(k), "re": c.real, "im": c.imag}
                         for k, c in f.coefficients.items()],
    }


def poly_from_dict(data: dict, analytic: bool = True) -> TrigPolynomial:
    cls = AnalyticPolynomial if analytic else TrigPolynomial
    try:
        dim = int(data["dim"])
        coeffs = {tuple(e["k"]): complex(e.get("re", 0.0), e.get("im", 0.0))
                  for e in data["coefficients"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed polynomial document: {exc}") from exc
    return cls(dim, coeffs)


def _load(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{path}: not valid JSON ({exc})") from exc


def read_measure(path) -> AtomicMeasure:
    return measure_from_dict(_load(path))


def write_measure(mu: AtomicMeasure, path):
    Path(path).write_text(dumps_measure(mu), encoding="utf-8")


def read_points(path) -> list[TorusPoint]:
    return points_from_dict(_load(path))


def write_points(points, path):
    Path(path).write_text(dumps_points(points), encoding="utf-8")


def read_poly(path, analytic: bool = True) -> TrigPolynomial:
    return poly_from_dict(_load(path), analytic)


def write_poly(f: TrigPolynomial, path):
    Path(path).write_text(json.dumps(poly_to_dict(f), indent=2) + "\n", encoding="utf-8")
