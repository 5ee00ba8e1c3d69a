"""CSV ingestion for point coordinates and precomputed distance matrices.

Formats accepted:

* coordinates: one row per point, numeric columns, optional trailing label
  column.  A header row is auto-detected: the first row is treated as a
  header when any field other than the last fails to parse as a number.
* distances: a square, all-numeric N x N table (no labels).

All parse errors carry the 1-based row/column position of the offending
field.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .model import DistanceMatrix, PointSet, Space, SYMMETRY_TOL

__all__ = ["ParseError", "load_points", "load_distance_matrix", "load_data_input"]


class ParseError(ValueError):
    """A CSV field could not be interpreted; knows where it came from."""

    def __init__(self, path: str | Path, row: int, column: int, message: str):
        self.path = str(path)
        self.row = row
        self.column = column
        super().__init__(f"{self.path}:{row}:{column}: {message}")


def _parse_float(field: str, path: str | Path, row: int, column: int) -> float:
    try:
        value = float(field)
    except ValueError:
        raise ParseError(path, row, column, f"not a number: {field!r}") from None
    if not math.isfinite(value):
        raise ParseError(path, row, column, f"non-finite value: {field!r}")
    return value


def _read_rows(path: str | Path) -> list[tuple[int, list[str]]]:
    """Non-empty CSV rows with their 1-based line numbers."""
    rows: list[tuple[int, list[str]]] = []
    with open(path, newline="", encoding="utf-8") as handle:
        for lineno, fields in enumerate(csv.reader(handle), start=1):
            if not fields or all(not f.strip() for f in fields):
                continue
            rows.append((lineno, [f.strip() for f in fields]))
    if not rows:
        raise ParseError(path, 1, 1, "file contains no data rows")
    return rows


def _is_number(field: str) -> bool:
    try:
        float(field)
    except ValueError:
        return False
    return True


def _looks_like_header(fields: list[str]) -> bool:
    # A data row may carry one trailing non-numeric label; a header has a
    # non-numeric field somewhere before the last column (or is a single
    # non-numeric field).
    if len(fields) == 1:
        return not _is_number(fields[0])
    return any(not _is_number(f) for f in fields[:-1])


def load_points(path: str | Path, space: Space) -> PointSet:
    """Load a coordinates CSV, auto-detecting header and label column."""
    rows = _read_rows(path)
    if _looks_like_header(rows[0][1]):
        rows = rows[1:]
        if not rows:
            raise ParseError(path, 1, 1, "file contains a header but no data rows")

    width = len(rows[0][1])
    # Trailing label column iff the first data row's last field is non-numeric.
    has_labels = width >= 2 and not _is_number(rows[0][1][-1])
    numeric_width = width - 1 if has_labels else width

    coords = np.empty((len(rows), numeric_width))
    labels: list[str] = []
    for r, (lineno, fields) in enumerate(rows):
        if len(fields) != width:
            raise ParseError(
                path, lineno, len(fields) or 1,
                f"expected {width} columns, got {len(fields)}",
            )
        for c in range(numeric_width):
            coords[r, c] = _parse_float(fields[c], path, lineno, c + 1)
        if has_labels:
            labels.append(fields[-1])
    return PointSet(coords, space, labels=tuple(labels) if has_labels else None)


def load_distance_matrix(path: str | Path, space: Space = Space.DATA) -> DistanceMatrix:
    """Load a precomputed square distance matrix from CSV."""
    lineno, values = _read_numeric_table(path)
    if values.shape[0] != values.shape[1]:
        raise ParseError(
            path, lineno, 1,
            f"distance matrix must be square, got {values.shape[0]} rows "
            f"x {values.shape[1]} columns",
        )
    try:
        return DistanceMatrix(values, space)
    except ValueError as exc:
        raise ParseError(path, 1, 1, str(exc)) from None


def _read_numeric_table(path: str | Path) -> tuple[int, np.ndarray]:
    """All-numeric table; returns the last line number and the array."""
    rows = _read_rows(path)
    if _looks_like_header(rows[0][1]):
        rows = rows[1:]
        if not rows:
            raise ParseError(path, 1, 1, "file contains a header but no data rows")
    width = len(rows[0][1])
    values = np.empty((len(rows), width))
    for r, (lineno, fields) in enumerate(rows):
        if len(fields) != width:
            raise ParseError(
                path, lineno, len(fields) or 1,
                f"expected {width} columns, got {len(fields)}",
            )
        for c, field in enumerate(fields):
            values[r, c] = _parse_float(field, path, lineno, c + 1)
    return rows[-1][0], values


def load_data_input(path: str | Path, kind: str = "auto") -> PointSet | DistanceMatrix:
    """Load the data-side input, which may be coordinates or distances.

    ``kind`` is ``"coords"``, ``"distances"`` or ``"auto"``.  Auto-detection
    treats a square all-numeric table as a distance matrix when it also has
    a (near-)zero diagonal and is symmetric within tolerance; anything else
    is read as coordinates.  Pass an explicit kind to override.
    """
    if kind == "coords":
        return load_points(path, Space.DATA)
    if kind == "distances":
        return load_distance_matrix(path, Space.DATA)
    if kind != "auto":
        raise ValueError(f"unknown input kind {kind!r}")

    points = load_points(path, Space.DATA)
    values = points.coords
    n, d = values.shape
    if points.labels is None and n == d and n >= 2:
        diag_ok = np.abs(np.diagonal(values)).max() <= SYMMETRY_TOL
        sym_ok = np.abs(values - values.T).max() <= SYMMETRY_TOL
        if diag_ok and sym_ok:
            return DistanceMatrix(values, Space.DATA)
    return points
