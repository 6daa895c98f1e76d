"""Full-factorial 2-D landscape scans exported as long-form CSVs.

A grid scan evaluates every lattice point of a two-variable problem and
derives the four per-point layers a landscape picture is built from:
constraint violation, the feasibility mask, the dominance ratio over
the whole grid, and the grid's nondominated mask.  Each layer is
written as its own ``x1,x2,value`` CSV so downstream tools can consume
them independently.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import ndimage

from .pareto import dominance_ratio
from .problems.base import ProblemInstance
from .sampling import grid
from .validation import check_positive_int

GRID_LAYERS = ("violation", "feasibility", "dominance", "nondominated")

_EIGHT_CONNECTED = np.ones((3, 3), dtype=int)


def feasible_component_count(mask: np.ndarray) -> int:
    """Number of 8-connected true regions in a 2-D boolean mask."""
    mask = np.asarray(mask)
    if mask.ndim != 2:
        raise ValueError(f"mask must be 2-D, got shape {mask.shape}")
    _, count = ndimage.label(mask, structure=_EIGHT_CONNECTED)
    return int(count)


@dataclass(frozen=True)
class GridScan:
    """All layers of one scan, shaped (resolution, resolution).

    Layer arrays are indexed ``[i, j]`` where ``i`` walks the first
    variable's axis and ``j`` the second's, matching the row order of
    the emitted CSVs (second variable varying fastest).
    """

    problem: str
    resolution: int
    x1_axis: np.ndarray
    x2_axis: np.ndarray
    violation: np.ndarray
    feasibility: np.ndarray
    dominance: np.ndarray
    nondominated: np.ndarray

    @property
    def n_feasible_components(self) -> int:
        return feasible_component_count(self.feasibility)


def grid_scan(problem: ProblemInstance, resolution: int) -> GridScan:
    """Evaluate every lattice point of a 2-D problem and derive all layers."""
    if problem.dim != 2:
        raise ValueError(
            f"grid scans are defined for 2-variable problems, got dim {problem.dim}"
        )
    check_positive_int(resolution, name="resolution")
    if resolution < 2:
        raise ValueError(f"resolution must be at least 2, got {resolution}")
    X = grid(resolution, problem.lower, problem.upper)
    ev = problem.evaluate(X)
    ratio = dominance_ratio(ev.f)
    shape = (resolution, resolution)
    return GridScan(
        problem=problem.id,
        resolution=resolution,
        x1_axis=np.linspace(problem.lower[0], problem.upper[0], resolution),
        x2_axis=np.linspace(problem.lower[1], problem.upper[1], resolution),
        violation=ev.v.reshape(shape),
        feasibility=ev.is_feasible.reshape(shape),
        dominance=ratio.reshape(shape),
        nondominated=(ratio == 0.0).reshape(shape),
    )


def _write_layer(path: Path, scan: GridScan, name: str, values: np.ndarray) -> None:
    flat = values.ravel()
    x1 = np.repeat(scan.x1_axis, scan.resolution)
    x2 = np.tile(scan.x2_axis, scan.resolution)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x1", "x2", name])
        for a, b, v in zip(x1, x2, flat):
            if values.dtype == bool:
                cell = "1" if v else "0"
            else:
                cell = format(v, ".12g")
            writer.writerow([format(a, ".12g"), format(b, ".12g"), cell])


def write_grid_csvs(scan: GridScan, out_dir) -> dict[str, Path]:
    """Write one ``<problem>-<layer>.csv`` per layer; returns layer → path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    layers = {
        "violation": scan.violation,
        "feasibility": scan.feasibility,
        "dominance": scan.dominance,
        "nondominated": scan.nondominated,
    }
    paths: dict[str, Path] = {}
    for name, values in layers.items():
        path = out_dir / f"{scan.problem}-{name}.csv"
        _write_layer(path, scan, name, values)
        paths[name] = path
    return paths


def read_grid_csv(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read one layer CSV back as ``(x1_axis, x2_axis, values)`` arrays."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if len(header) != 3 or header[:2] != ["x1", "x2"]:
            raise ValueError(f"{path} is not a grid-layer CSV (header {header!r})")
        rows = [(float(a), float(b), float(v)) for a, b, v in reader]
    x1 = sorted({r[0] for r in rows})
    x2 = sorted({r[1] for r in rows})
    values = np.full((len(x1), len(x2)), np.nan)
    index1 = {v: i for i, v in enumerate(x1)}
    index2 = {v: i for i, v in enumerate(x2)}
    for a, b, v in rows:
        values[index1[a], index2[b]] = v
    return np.asarray(x1), np.asarray(x2), values
