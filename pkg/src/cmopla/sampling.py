"""Space-filling and grid samples of box-bounded search spaces.

Latin hypercube samples stratify every axis exactly: n points occupy the n
equal-width strata of each coordinate once, with uniform-random placement
inside each stratum.  Full grids include both bound endpoints.  Evaluated
samples can be exported to columnar CSV or memoized in a binary cache
keyed by problem id and plan hash.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from cmopla.problems.base import EvaluatedPoints, ProblemInstance
from cmopla.rng import derive
from cmopla.validation import check_positive_int

__all__ = [
    "SamplePlan",
    "latin_hypercube",
    "grid",
    "sample",
    "evaluate_plan",
    "save_csv",
    "load_csv",
    "unit_scale",
]

PLAN_KINDS = ("latin-hypercube", "full-grid")


@dataclass(frozen=True)
class SamplePlan:
    """Reproducible sample description.

    ``n`` counts total points for Latin hypercube plans and points per
    axis for full grids.  The same plan always reproduces the identical
    point set over fixed bounds.
    """

    kind: str
    n: int
    seed: int
    dim: int

    def __post_init__(self):
        if self.kind not in PLAN_KINDS:
            raise ValueError(f"kind must be one of {PLAN_KINDS}, got {self.kind!r}")
        check_positive_int(self.n, name="n")
        check_positive_int(self.dim, name="dim")
        if not isinstance(self.seed, (int, np.integer)) or isinstance(self.seed, bool):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")

    def plan_hash(self) -> str:
        payload = json.dumps(
            {"kind": self.kind, "n": int(self.n), "seed": int(self.seed), "dim": int(self.dim)},
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def latin_hypercube(plan: SamplePlan, lower, upper) -> np.ndarray:
    """Generate an n-point Latin hypercube sample inside [lower, upper].

    Per axis: a random permutation assigns one point to each of the n
    equal strata and a uniform draw places it inside its stratum, so
    marginal stratification is exact by construction.
    """
    lower = np.asarray(lower, dtype=np.float64)
    upper = np.asarray(upper, dtype=np.float64)
    n, dim = plan.n, plan.dim
    rng = derive(plan.seed, "sample", plan.kind, n, dim)
    X = np.empty((n, dim))
    for d in range(dim):
        strata = rng.permutation(n)
        offsets = rng.random(n)
        X[:, d] = (strata + offsets) / n
    return lower + X * (upper - lower)


def grid(points_per_axis: int, lower, upper) -> np.ndarray:
    """Full lattice with both endpoints included on every axis.

    Rows are ordered with the last axis varying fastest.
    """
    points_per_axis = int(points_per_axis)
    if points_per_axis < 2:
        raise ValueError(f"points_per_axis must be at least 2, got {points_per_axis}")
    lower = np.asarray(lower, dtype=np.float64)
    upper = np.asarray(upper, dtype=np.float64)
    axes = [np.linspace(lower[d], upper[d], points_per_axis) for d in range(len(lower))]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def sample(plan: SamplePlan, lower, upper) -> np.ndarray:
    """Materialize a plan into points."""
    if plan.kind == "latin-hypercube":
        return latin_hypercube(plan, lower, upper)
    return grid(plan.n, lower, upper)


def unit_scale(X: np.ndarray, lower, upper) -> np.ndarray:
    """Min-max scale points from [lower, upper] to the unit box."""
    lower = np.asarray(lower, dtype=np.float64)
    upper = np.asarray(upper, dtype=np.float64)
    return (np.asarray(X, dtype=np.float64) - lower) / (upper - lower)


def _cache_path(cache_dir: Path, problem: ProblemInstance, plan: SamplePlan) -> Path:
    return cache_dir / f"{problem.id}-d{problem.dim}-{plan.plan_hash()}.npz"


def evaluate_plan(
    problem: ProblemInstance, plan: SamplePlan, cache_dir: str | Path | None = None
) -> EvaluatedPoints:
    """Generate and evaluate a plan, memoizing results when a cache is given.

    Cache entries are keyed by (problem id, dimension, plan hash); a
    missing or unreadable entry is recomputed and rewritten.
    """
    if plan.dim != problem.dim:
        raise ValueError(f"plan dimension {plan.dim} != problem dimension {problem.dim}")
    path = None
    if cache_dir is not None:
        path = _cache_path(Path(cache_dir), problem, plan)
        if path.exists():
            try:
                with np.load(path) as data:
                    v = data["v"]
                    return EvaluatedPoints(
                        x=data["x"], f=data["f"], g=data["g"], v=v, is_feasible=v == 0.0
                    )
            except (OSError, ValueError, KeyError, EOFError):
                pass
    X = sample(plan, problem.lower, problem.upper)
    ev = problem.evaluate(X)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp.npz")
        np.savez_compressed(tmp, x=ev.x, f=ev.f, g=ev.g, v=ev.v)
        tmp.replace(path)
    return ev


def save_csv(path: str | Path, ev: EvaluatedPoints) -> None:
    """Write evaluated points as columnar CSV: x*, f*, g*, v."""
    dim = ev.x.shape[1]
    n_obj = ev.f.shape[1]
    n_con = ev.g.shape[1]
    header = (
        [f"x{i + 1}" for i in range(dim)]
        + [f"f{i + 1}" for i in range(n_obj)]
        + [f"g{i + 1}" for i in range(n_con)]
        + ["v"]
    )
    table = np.hstack([ev.x, ev.f, ev.g, ev.v.reshape(-1, 1)])
    np.savetxt(path, table, delimiter=",", header=",".join(header), comments="", fmt="%.17g")


def load_csv(path: str | Path) -> EvaluatedPoints:
    """Read a CSV produced by save_csv back into evaluated points."""
    with open(path) as fh:
        names = fh.readline().strip().split(",")
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    dim = sum(1 for c in names if c.startswith("x"))
    n_obj = sum(1 for c in names if c.startswith("f"))
    n_con = sum(1 for c in names if c.startswith("g"))
    x = table[:, :dim]
    f = table[:, dim : dim + n_obj]
    g = table[:, dim + n_obj : dim + n_obj + n_con]
    v = table[:, -1]
    return EvaluatedPoints(x=x, f=f, g=g, v=v, is_feasible=v == 0.0)
