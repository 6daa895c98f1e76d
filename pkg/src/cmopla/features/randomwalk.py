"""Feasible-boundary-crossing features over repeated simple random walks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..defaults import WALK_COUNT, WALK_STEP_FRACTION, WALK_STEPS
from ..problems.base import ProblemInstance
from ..rng import derive

__all__ = [
    "RandomWalkFeatures",
    "WalkConfig",
    "boundary_crossing_ratio",
    "randomwalk_features",
    "simple_random_walk",
    "summarize_ratios",
    "walk_positions",
]

_BLOCK = 1024
_MAX_REDRAWS = 100


@dataclass(frozen=True)
class WalkConfig:
    """Shared configuration of one batch of random walks."""

    steps: int = WALK_STEPS
    step_fraction: float = WALK_STEP_FRACTION
    repetitions: int = WALK_COUNT
    seed: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.steps, int) or self.steps < 2:
            raise ValueError(f"steps must be an integer >= 2, got {self.steps}")
        if not 0.0 < self.step_fraction <= 1.0:
            raise ValueError(
                f"step_fraction must be in (0, 1], got {self.step_fraction}"
            )
        if not isinstance(self.repetitions, int) or self.repetitions < 1:
            raise ValueError(
                f"repetitions must be a positive integer, got {self.repetitions}"
            )


def _reflect(x: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Mirror out-of-bounds coordinates across the violated bound."""
    y = np.where(x < lower, 2.0 * lower - x, x)
    y = np.where(y > upper, 2.0 * upper - y, y)
    return np.clip(y, lower, upper)


def walk_positions(
    problem: ProblemInstance, config: WalkConfig, run_index: int
) -> np.ndarray:
    """Generate the point sequence of one walk, bounds respected.

    Each step is drawn uniformly per axis within the maximum step size.
    An out-of-bounds candidate is redrawn up to 100 times, then the last
    candidate is reflected back inside. Each (seed, run_index) pair owns an
    independent stream, so walks can run in any order.
    """
    rng = derive(config.seed, "walk", problem.id, problem.dim, run_index)
    lower, upper = problem.lower, problem.upper
    delta = config.step_fraction * (upper - lower)
    n, dim = config.steps, problem.dim

    out = np.empty((n, dim))
    out[0] = lower + rng.random(dim) * (upper - lower)
    pos = out[0]
    i = 0
    while i < n - 1:
        block = rng.uniform(-delta, delta, (min(_BLOCK, n - 1 - i), dim))
        path = pos + np.cumsum(block, axis=0)
        bad = np.any((path < lower) | (path > upper), axis=1)
        k = int(np.argmax(bad)) if bad.any() else len(path)
        if k:
            out[i + 1 : i + 1 + k] = path[:k]
            pos = out[i + k]
            i += k
        if k == len(path):
            continue
        cand = pos + block[k]
        for _ in range(_MAX_REDRAWS):
            if np.all((cand >= lower) & (cand <= upper)):
                break
            cand = pos + rng.uniform(-delta, delta, dim)
        else:
            cand = _reflect(cand, lower, upper)
        out[i + 1] = cand
        pos = cand
        i += 1
    return out


def simple_random_walk(
    problem: ProblemInstance, config: WalkConfig, run_index: int
) -> np.ndarray:
    """Binary feasibility sequence of one walk: 0 feasible, 1 infeasible."""
    X = walk_positions(problem, config, run_index)
    return (~problem.evaluate(X).is_feasible).astype(np.int8)


def boundary_crossing_ratio(b: np.ndarray) -> float:
    """Fraction of steps whose endpoints differ in feasibility."""
    b = np.asarray(b)
    if b.ndim != 1 or len(b) < 2:
        raise ValueError("need a 1-D sequence with at least two entries")
    return float(np.abs(np.diff(b.astype(np.int64))).sum() / (len(b) - 1))


def summarize_ratios(ratios) -> tuple[float, float, float]:
    """Min, lower-middle median, and max of the per-walk ratios."""
    r = np.sort(np.asarray(ratios, dtype=float))
    return float(r[0]), float(r[(len(r) - 1) // 2]), float(r[-1])


@dataclass(frozen=True)
class RandomWalkFeatures:
    rfb_min: float
    rfb_med: float
    rfb_max: float
    ratios: tuple[float, ...]

    def feature_dict(self) -> dict[str, float]:
        return {
            "rfb_min": self.rfb_min,
            "rfb_med": self.rfb_med,
            "rfb_max": self.rfb_max,
        }


def randomwalk_features(
    problem: ProblemInstance, config: WalkConfig | None = None, *, seed: int = 0
) -> RandomWalkFeatures:
    """Summarize boundary-crossing ratios over the configured repetitions."""
    if config is None:
        config = WalkConfig(seed=seed)
    ratios = [
        boundary_crossing_ratio(simple_random_walk(problem, config, r))
        for r in range(config.repetitions)
    ]
    rfb_min, rfb_med, rfb_max = summarize_ratios(ratios)
    return RandomWalkFeatures(
        rfb_min=rfb_min,
        rfb_med=rfb_med,
        rfb_max=rfb_max,
        ratios=tuple(ratios),
    )
