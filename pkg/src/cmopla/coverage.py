"""Feature normalization and cross-suite coverage matrices.

Raw feature values live on wildly different scales, so suite comparison
first min-max normalizes every feature over the union of all loaded
records, then scores how well one suite's value set covers a target
set: one minus the mean distance from each target value to its nearest
candidate value.  A coverage of 1 means every target value is matched
exactly; 0 means the sets sit at opposite ends of the feature's range.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .record import FEATURE_KEYS, SCHEMA_VERSION, FeatureRecord

TARGET_ALL = "all"


def feature_bounds(records: list[FeatureRecord]) -> tuple[dict, list[str]]:
    """Per-feature (min, max) over the union of all records' non-null values.

    Returns ``(bounds, excluded)`` where ``excluded`` lists features with
    no non-null value anywhere; those carry ``None`` bounds and drop out
    of coverage.  Meaningful normalization wants at least two distinct
    values per feature; a single value (or a constant feature) yields
    degenerate bounds, which the normalizer maps to the midpoint 0.5.
    """
    if not records:
        raise ValueError("no records to normalize")
    bounds: dict = {}
    excluded: list[str] = []
    for key in FEATURE_KEYS:
        values = [r.features[key] for r in records if r.features[key] is not None]
        if not values:
            bounds[key] = None
            excluded.append(key)
        else:
            bounds[key] = (float(min(values)), float(max(values)))
    return bounds, excluded


def normalize_value(value, lo_hi) -> float | None:
    """Min-max map a single value into [0, 1]; degenerate ranges hit 0.5."""
    if value is None or lo_hi is None:
        return None
    lo, hi = lo_hi
    if hi == lo:
        return 0.5
    return (float(value) - lo) / (hi - lo)


@dataclass(frozen=True)
class NormalizedRecord:
    """A record's identity plus its features mapped into [0, 1]."""

    problem: str
    suite: str
    dim: int
    seed: int
    features: dict


def normalize_features(
    records: list[FeatureRecord],
) -> tuple[list[NormalizedRecord], dict, list[str]]:
    """Normalize every record over the union of all records' bounds.

    Returns ``(normalized, bounds, excluded)``.  Nulls stay null, and
    entirely-null features are excluded rather than fabricated.
    """
    bounds, excluded = feature_bounds(records)
    normalized = [
        NormalizedRecord(
            problem=r.problem,
            suite=r.suite,
            dim=r.dim,
            seed=r.seed,
            features={k: normalize_value(r.features[k], bounds[k]) for k in FEATURE_KEYS},
        )
        for r in records
    ]
    return normalized, bounds, excluded


def coverage(target_values, candidate_values) -> float | None:
    """1 − mean over targets of the distance to the nearest candidate.

    Null entries contribute to neither side; if either side is empty
    after null filtering the cell is undefined (``None``).
    """
    T = np.asarray([v for v in target_values if v is not None], dtype=np.float64)
    S = np.asarray([v for v in candidate_values if v is not None], dtype=np.float64)
    if T.size == 0 or S.size == 0:
        return None
    nearest = np.min(np.abs(T[:, None] - S[None, :]), axis=1)
    return float(1.0 - nearest.mean())


@dataclass(frozen=True)
class CoverageMatrix:
    """Coverage cells for features (rows) against candidate suites (columns)."""

    target: str
    features: tuple
    suites: tuple
    cells: tuple  # rows aligned with features; entries aligned with suites
    excluded: tuple

    def cell(self, feature: str, suite: str) -> float | None:
        return self.cells[self.features.index(feature)][self.suites.index(suite)]


def coverage_matrix(records: list[FeatureRecord], target: str = TARGET_ALL) -> CoverageMatrix:
    """Score every suite's coverage of the target set, feature by feature.

    ``target`` is either a suite name or ``"all"``, in which case each
    suite is contrasted against the union of every record — its own
    included, so a suite always fully covers its own contribution.
    """
    suites: list[str] = []
    for r in records:
        if r.suite not in suites:
            suites.append(r.suite)
    if len(suites) < 2:
        raise ValueError(f"coverage needs records from at least 2 suites, got {suites}")
    if target != TARGET_ALL and target not in suites:
        raise ValueError(f"target suite {target!r} not among loaded suites {suites}")

    normalized, _, excluded = normalize_features(records)
    rows = tuple(k for k in FEATURE_KEYS if k not in excluded)
    cells = []
    for key in rows:
        if target == TARGET_ALL:
            target_vals = [r.features[key] for r in normalized]
        else:
            target_vals = [r.features[key] for r in normalized if r.suite == target]
        row = []
        for suite in suites:
            suite_vals = [r.features[key] for r in normalized if r.suite == suite]
            row.append(coverage(target_vals, suite_vals))
        cells.append(tuple(row))
    return CoverageMatrix(
        target=target,
        features=rows,
        suites=tuple(suites),
        cells=tuple(cells),
        excluded=tuple(excluded),
    )


def write_coverage_csv(matrix: CoverageMatrix, path) -> Path:
    """Write the matrix as ``feature,<suite>,...`` rows; null cells are empty."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["feature", *matrix.suites])
        for key, row in zip(matrix.features, matrix.cells):
            writer.writerow(
                [key, *("" if v is None else format(v, ".12g") for v in row)]
            )
    return path


def read_coverage_csv(path) -> CoverageMatrix:
    """Parse a coverage CSV back into a matrix (target/excluded not stored)."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if not header or header[0] != "feature":
            raise ValueError(f"{path} is not a coverage CSV (header {header!r})")
        suites = tuple(header[1:])
        features = []
        cells = []
        for row in reader:
            features.append(row[0])
            cells.append(tuple(None if v == "" else float(v) for v in row[1:]))
    return CoverageMatrix(
        target=TARGET_ALL,
        features=tuple(features),
        suites=suites,
        cells=tuple(cells),
        excluded=(),
    )


def write_bounds_audit(bounds: dict, excluded: list, path) -> Path:
    """Write the normalization bounds JSON used to audit a coverage run."""
    path = Path(path)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "bounds": {
            k: None if b is None else {"min": b[0], "max": b[1]} for k, b in bounds.items()
        },
        "excluded": list(excluded),
    }
    path.write_text(json.dumps(payload, indent=2, allow_nan=False) + "\n")
    return path
