"""Readers and schema validation for the analysis CLI's output files.

Three input formats are understood, all produced by the analysis CLI:

* feature records — one JSON object per file with ``schema_version``,
  ``problem``, ``suite``, and a ``features`` mapping (nulls allowed);
* coverage matrices — CSV with header ``feature,<suite>,...`` and one
  row per feature (empty cells mean "not comparable");
* grid layers — long-form CSV per layer with header ``x1,x2,<layer>``,
  the second variable varying fastest.

Any deviation raises :class:`SchemaError` naming the offending key so
callers can fail with a precise message.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

SCHEMA_VERSION = 1

GRID_LAYERS = ("violation", "feasibility", "dominance", "nondominated")

_RECORD_FIELDS = ("schema_version", "problem", "suite", "features")


class SchemaError(ValueError):
    """An input file does not match its documented schema.

    ``key`` names the offending field, header, or file so the error can
    be reported precisely.
    """

    def __init__(self, key: str, message: str):
        super().__init__(message)
        self.key = key


def load_feature_records(directory: str | Path) -> list[dict]:
    """Load every feature-record JSON file in ``directory``.

    Files are read in name order.  Each must carry the supported
    ``schema_version`` and the identity/feature fields; feature values
    may be null.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise SchemaError(str(directory), f"records directory not found: {directory}")
    records = []
    for path in sorted(directory.glob("*.json")):
        try:
            payload = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise SchemaError(path.name, f"invalid JSON in {path}: {exc}") from exc
        for field in _RECORD_FIELDS:
            if field not in payload:
                raise SchemaError(field, f"{path} is missing required field {field!r}")
        if payload["schema_version"] != SCHEMA_VERSION:
            raise SchemaError(
                "schema_version",
                f"{path} has unsupported schema_version: "
                f"{payload['schema_version']!r} (expected {SCHEMA_VERSION})",
            )
        if not isinstance(payload["features"], dict):
            raise SchemaError("features", f"{path} field 'features' must be a mapping")
        records.append(payload)
    if not records:
        raise SchemaError(str(directory), f"no feature records in {directory}")
    return records


def feature_values(
    records: list[dict], feature: str
) -> tuple[list[str], dict[str, list[float]], dict[str, list[str]]]:
    """Group one feature's non-null values by suite.

    Returns the suites in first-appearance order, the values per suite,
    and the contributing problem names per suite (parallel lists).
    Requesting a feature absent from every record is a schema error.
    """
    if not any(feature in r["features"] for r in records):
        raise SchemaError(feature, f"feature {feature!r} not present in any record")
    suites: list[str] = []
    values: dict[str, list[float]] = {}
    problems: dict[str, list[str]] = {}
    for record in records:
        suite = record["suite"]
        if suite not in values:
            suites.append(suite)
            values[suite] = []
            problems[suite] = []
        value = record["features"].get(feature)
        if value is not None:
            values[suite].append(float(value))
            problems[suite].append(record["problem"])
    return suites, values, problems


def record_feature_names(records: list[dict]) -> list[str]:
    """All feature keys with at least one non-null value, in record order."""
    names: list[str] = []
    for record in records:
        for key, value in record["features"].items():
            if value is not None and key not in names:
                names.append(key)
    return names


def read_coverage_csv(path: str | Path) -> tuple[list[str], list[str], np.ndarray]:
    """Read a coverage matrix CSV into (features, suites, cells).

    Cells are floats with NaN for empty (not comparable) entries.
    """
    path = Path(path)
    if not path.is_file():
        raise SchemaError(str(path), f"coverage CSV not found: {path}")
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or not rows[0] or rows[0][0] != "feature":
        raise SchemaError("feature", f"{path} is not a coverage CSV (header must start with 'feature')")
    suites = rows[0][1:]
    if not suites:
        raise SchemaError("feature", f"{path} has no suite columns")
    features = []
    cells = []
    for row in rows[1:]:
        if len(row) != len(suites) + 1:
            raise SchemaError(row[0] if row else "feature", f"{path} row {row!r} has the wrong width")
        features.append(row[0])
        cells.append([float(cell) if cell else np.nan for cell in row[1:]])
    return features, suites, np.array(cells, dtype=float).reshape(len(features), len(suites))


def _read_grid_csv(path: Path, layer: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["x1", "x2", layer]:
        raise SchemaError(layer, f"{path} is not a {layer!r} grid CSV (expected header x1,x2,{layer})")
    data = np.array([[float(c) for c in row] for row in rows[1:]], dtype=float)
    if data.size == 0:
        raise SchemaError(layer, f"{path} has no data rows")
    x1 = np.unique(data[:, 0])
    x2 = np.unique(data[:, 1])
    if len(x1) * len(x2) != len(data):
        raise SchemaError(layer, f"{path} does not cover a full grid")
    values = np.full((len(x1), len(x2)), np.nan)
    i = np.searchsorted(x1, data[:, 0])
    j = np.searchsorted(x2, data[:, 1])
    values[i, j] = data[:, 2]
    return x1, x2, values


def read_grid_layers(
    directory: str | Path, problem: str
) -> tuple[np.ndarray, np.ndarray, dict[str, np.ndarray]]:
    """Read the four grid-layer CSVs of ``problem`` from ``directory``.

    Returns the two axes plus a mapping of layer name to a 2-D array
    indexed ``[i, j]`` for position ``(x1[i], x2[j])``.  All four layers
    must exist and share identical axes.
    """
    directory = Path(directory)
    axes: tuple[np.ndarray, np.ndarray] | None = None
    layers: dict[str, np.ndarray] = {}
    for layer in GRID_LAYERS:
        path = directory / f"{problem}-{layer}.csv"
        if not path.is_file():
            raise SchemaError(layer, f"missing grid layer CSV: {path}")
        x1, x2, values = _read_grid_csv(path, layer)
        if axes is None:
            axes = (x1, x2)
        elif len(axes[0]) != len(x1) or len(axes[1]) != len(x2) or not (
            np.array_equal(axes[0], x1) and np.array_equal(axes[1], x2)
        ):
            raise SchemaError(layer, f"{path} axes differ from the other layers")
        layers[layer] = values
    assert axes is not None
    return axes[0], axes[1], layers
