"""Readers and writers for matrices, shapes and custom groups.

Matrices: CSV (one row per line, comma separated, ``#`` comments and
blank lines ignored) or JSON array-of-arrays.  Floats are written with
17 significant digits so every value round-trips exactly.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InputError


def _to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _to_jsonable(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj, indent: int | None = 2) -> str:
    """Deterministic JSON: sorted keys, shortest round-trip float repr."""
    return json.dumps(_to_jsonable(obj), indent=indent, sort_keys=True, allow_nan=False)


def _parse_csv(text: str, path) -> np.ndarray:
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            row = [float(tok) for tok in line.split(",")]
        except ValueError as exc:
            raise InputError(path, lineno, f"non-numeric entry ({exc})") from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError(path, lineno, f"expected {width} columns, found {len(row)}")
        if not all(np.isfinite(row)):
            raise InputError(path, lineno, "non-finite entry")
        rows.append(row)
    if not rows:
        raise InputError(path, None, "no matrix rows found")
    return np.array(rows, dtype=float)


def _parse_json_matrix(data, path) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise InputError(path, None, "expected a non-empty JSON array of rows")
    width = None
    for i, row in enumerate(data):
        if not isinstance(row, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in row
        ):
            raise InputError(path, None, f"row {i} is not an array of numbers")
        if width is None:
            width = len(row)
        elif len(row) != width or width == 0:
            raise InputError(path, None, f"row {i} has {len(row)} entries, expected {width}")
    A = np.array(data, dtype=float)
    if not np.all(np.isfinite(A)):
        raise InputError(path, None, "non-finite entry")
    return A


def _load_json(text, path):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(path, exc.lineno, f"invalid JSON ({exc.msg})") from None


def read_matrix(path) -> np.ndarray:
    """Load a matrix from ``.json`` or CSV (anything else)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(path, None, f"cannot read file ({exc.strerror})") from None
    if path.suffix.lower() == ".json" or text.lstrip().startswith("["):
        return _parse_json_matrix(_load_json(text, path), path)
    return _parse_csv(text, path)


def matrix_to_csv(T) -> str:
    A = np.atleast_2d(np.asarray(T, dtype=float))
    return "".join(",".join(f"{v:.17g}" for v in row) + "\n" for row in A)


def write_matrix(path, T) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(dumps(np.atleast_2d(np.asarray(T, dtype=float)).tolist(), indent=None) + "\n")
    else:
        path.write_text(matrix_to_csv(T))


def read_matrix_list(path) -> list[np.ndarray]:
    """A JSON list of square matrices (custom group generators or elements)."""
    path = Path(path)
    try:
        data = _load_json(path.read_text(), path)
    except OSError as exc:
        raise InputError(path, None, f"cannot read file ({exc.strerror})") from None
    if not isinstance(data, list) or not data:
        raise InputError(path, None, "expected a non-empty JSON list of matrices")
    mats = [_parse_json_matrix(m, path) for m in data]
    d = mats[0].shape[0]
    for i, m in enumerate(mats):
        if m.shape != (d, d):
            raise InputError(path, None, f"matrix {i} has shape {m.shape}, expected {(d, d)}")
    return mats


def read_json(path):
    path = Path(path)
    try:
        return _load_json(path.read_text(), path)
    except OSError as exc:
        raise InputError(path, None, f"cannot read file ({exc.strerror})") from None
