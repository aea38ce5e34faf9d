"""Load finite spaces from JSON or CSV files.

JSON documents look like

    {
      "points": [1, 20, "g1"],
      "matrix": [[0, 15, 0.03], [15, 0, 0.03], [0.03, 0.03, 0]],
      "witness": {"f": "ln", "alpha": 0.7},
      "map": "oscillating-orbit"
    }

witness and map are optional. A map is either the id of a bundled
example (its map is reused as-is) or {"affine": [a, b]} meaning
x -> a*x + b on numeric labels, with the image snapped to the nearest
label; snapping beyond the tolerance fails at application time, since
that means the map leaves the carrier.

CSV files carry a header row of labels followed by the square matrix,
one row per line, with no witness or map.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, SpaceFormatError
from .fclass import lookup_function
from .fspace import FiniteSpace, Witness

_SNAP_TOL = 1e-9


def _parse_cell(text: str, where: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise SpaceFormatError(f"{where}: {text!r} is not a number") from None


def _parse_label(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def _check_matrix(rows, n_labels: int) -> np.ndarray:
    if len(rows) != n_labels:
        raise SpaceFormatError(f"{n_labels} labels but {len(rows)} matrix rows")
    for i, row in enumerate(rows):
        if len(row) != n_labels:
            raise SpaceFormatError(f"matrix row {i} has {len(row)} entries, expected {n_labels}")
        for j, v in enumerate(row):
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise SpaceFormatError(f"matrix entry ({i}, {j}) is {v!r}, not a number")
            if not math.isfinite(v):
                raise SpaceFormatError(f"matrix entry ({i}, {j}) is {v}; entries must be finite")
    return np.array(rows, dtype=float)


def _affine_map(a: float, b: float, space: FiniteSpace) -> Callable:
    numeric = [lab for lab in space.labels if isinstance(lab, (int, float))]
    if not numeric:
        raise SpaceFormatError("affine map needs numeric labels, found none")

    def T(x):
        if not isinstance(x, (int, float)):
            raise DomainError(f"affine map is undefined at non-numeric point {x!r}")
        y = a * x + b
        best = min(numeric, key=lambda lab: abs(lab - y))
        if abs(best - y) > _SNAP_TOL:
            raise DomainError(
                f"affine image {y!r} of {x!r} is not in the carrier "
                f"(nearest label {best!r} is {abs(best - y):.3g} away)"
            )
        return best

    return T


def _build_map(entry, space: FiniteSpace) -> Callable:
    if isinstance(entry, str):
        from . import corpus

        ex = corpus.build_example(entry)
        if ex.map is None:
            raise SpaceFormatError(f"example {entry!r} has no map to borrow")
        return ex.map
    if isinstance(entry, dict) and set(entry) == {"affine"}:
        coeffs = entry["affine"]
        if (
            not isinstance(coeffs, (list, tuple))
            or len(coeffs) != 2
            or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in coeffs)
        ):
            raise SpaceFormatError('map "affine" takes two numeric coefficients [a, b]')
        return _affine_map(float(coeffs[0]), float(coeffs[1]), space)
    raise SpaceFormatError(
        f'map must be an example id or {{"affine": [a, b]}}, got {entry!r}'
    )


def _load_json(text: str, path: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpaceFormatError(f"{path}: invalid JSON ({e})") from None
    if not isinstance(doc, dict):
        raise SpaceFormatError(f"{path}: top level must be an object")
    unknown = set(doc) - {"points", "matrix", "witness", "map"}
    if unknown:
        raise SpaceFormatError(f"{path}: unknown keys {sorted(unknown)}")
    if "points" not in doc or "matrix" not in doc:
        raise SpaceFormatError(f'{path}: needs "points" and "matrix" keys')
    labels = doc["points"]
    if not isinstance(labels, list) or not labels:
        raise SpaceFormatError(f'{path}: "points" must be a non-empty list')
    for lab in labels:
        if not isinstance(lab, (int, float, str)) or isinstance(lab, bool):
            raise SpaceFormatError(f"{path}: label {lab!r} must be a number or string")
    if not isinstance(doc["matrix"], list):
        raise SpaceFormatError(f'{path}: "matrix" must be a list of rows')
    m = _check_matrix(doc["matrix"], len(labels))
    space = FiniteSpace(labels=tuple(labels), dist=m)

    witness = None
    if "witness" in doc:
        w = doc["witness"]
        if not isinstance(w, dict) or set(w) != {"f", "alpha"}:
            raise SpaceFormatError(f'{path}: witness must be {{"f": name, "alpha": number}}')
        if not isinstance(w["alpha"], (int, float)) or isinstance(w["alpha"], bool):
            raise SpaceFormatError(f"{path}: witness alpha must be a number")
        witness = Witness(lookup_function(w["f"], "generator"), float(w["alpha"]))

    T = _build_map(doc["map"], space) if "map" in doc else None
    return space, witness, T


def _load_csv(text: str, path: str):
    rows = [r for r in csv.reader(text.splitlines()) if any(c.strip() for c in r)]
    if len(rows) < 2:
        raise SpaceFormatError(f"{path}: need a header row and at least one matrix row")
    labels = tuple(_parse_label(c) for c in rows[0])
    matrix = [
        [_parse_cell(c, f"{path}: row {i + 1}, column {j}") for j, c in enumerate(row)]
        for i, row in enumerate(rows[1:])
    ]
    m = _check_matrix(matrix, len(labels))
    return FiniteSpace(labels=labels, dist=m), None, None


def load_space_file(path) -> tuple[FiniteSpace, Optional[Witness], Optional[Callable]]:
    """Read a space file, returning (space, witness or None, map or None).

    The format is sniffed: content starting with '{' is JSON, anything
    else is CSV. Structural problems raise SpaceFormatError naming the
    offending row or key; metric axiom violations (negative entries,
    broken symmetry) survive loading so that verification can report
    them as findings rather than parse failures.
    """
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise SpaceFormatError(f"cannot read {path}: {e}") from None
    if not text.strip():
        raise SpaceFormatError(f"{path} is empty")
    if text.lstrip().startswith("{"):
        return _load_json(text, str(path))
    return _load_csv(text, str(path))
