"""Information content of violation-value sequences along a greedy tour."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..defaults import info_sample_size
from ..problems.base import EvaluatedPoints, ProblemInstance
from ..rng import derive
from ..sampling import SamplePlan, evaluate_plan, unit_scale

__all__ = [
    "InfoContentFeatures",
    "entropy_H",
    "eps_settling",
    "info_features",
    "lambda_grid",
    "nearest_neighbor_tour",
    "partial_information",
    "symbolize",
    "tour_slopes",
]

SETTLE_THRESHOLD = 0.05

# grid exponents -8.00, -7.75, ..., 16.00; the grid itself prepends zero
_GRID_EXPONENTS = np.arange(-32, 65) * 0.25


def lambda_grid() -> np.ndarray:
    """Ascending threshold grid: zero plus 97 quarter-decade powers of ten."""
    return np.concatenate([[0.0], np.power(10.0, _GRID_EXPONENTS)])


def nearest_neighbor_tour(
    X: np.ndarray, *, seed: int | None = None, start: int | None = None
) -> np.ndarray:
    """Greedy nearest-unvisited-neighbor ordering of the points.

    The start is drawn from the seeded stream unless given explicitly;
    distance ties go to the lowest point index.
    """
    X = np.asarray(X, dtype=float)
    n = len(X)
    if n < 2:
        raise ValueError("tour needs at least two points")
    if start is None:
        rng = derive(0 if seed is None else seed, "tour-start")
        start = int(rng.integers(n))
    if not 0 <= start < n:
        raise ValueError(f"start index {start} out of range for {n} points")
    order = np.empty(n, dtype=np.int64)
    order[0] = start
    remaining = np.ones(n, dtype=bool)
    remaining[start] = False
    current = start
    for i in range(1, n):
        d2 = np.sum((X - X[current]) ** 2, axis=1)
        d2[~remaining] = np.inf
        current = int(np.argmin(d2))
        order[i] = current
        remaining[current] = False
    return order


def tour_slopes(X: np.ndarray, v: np.ndarray, order: np.ndarray) -> np.ndarray:
    """Violation slope between consecutive tour points.

    Coincident points would divide by zero; their slope is defined as 0.
    """
    Xo = np.asarray(X, dtype=float)[order]
    vo = np.asarray(v, dtype=float)[order]
    dx = np.sqrt(np.sum(np.diff(Xo, axis=0) ** 2, axis=1))
    dv = np.diff(vo)
    return np.divide(dv, dx, out=np.zeros_like(dv), where=dx > 0.0)


def symbolize(slopes: np.ndarray, lam: float) -> np.ndarray:
    """Map slopes to {-1, 0, 1}: down below -lam, flat within, up above."""
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    slopes = np.asarray(slopes, dtype=float)
    out = np.zeros(len(slopes), dtype=np.int8)
    out[slopes < -lam] = -1
    out[slopes > lam] = 1
    return out


def entropy_H(symbols: np.ndarray) -> float:
    """Shannon entropy, base 6, of the six mixed consecutive-symbol blocks.

    Probabilities divide by the block count; empty classes contribute zero.
    """
    symbols = np.asarray(symbols)
    if len(symbols) < 2:
        raise ValueError("need at least two symbols to form a block")
    keys = (symbols[:-1] + 1) * 3 + (symbols[1:] + 1)
    counts = np.bincount(keys, minlength=9)
    mixed = counts[[1, 2, 3, 5, 6, 7]]
    p = mixed[mixed > 0] / len(keys)
    if len(p) == 0:
        return 0.0
    return float(-np.sum(p * (np.log(p) / np.log(6.0))))


def partial_information(symbols: np.ndarray) -> float:
    """Length of the flat-free, repeat-collapsed sequence over symbol count."""
    symbols = np.asarray(symbols)
    nz = symbols[symbols != 0]
    if len(nz) == 0:
        return 0.0
    changes = 1 + int(np.sum(nz[1:] != nz[:-1]))
    return changes / len(symbols)


def eps_settling(slopes: np.ndarray) -> float | None:
    """Exponent of the smallest positive grid threshold that settles entropy.

    Settling means H(lambda) < 0.05. The zero grid entry has no logarithm
    and is excluded; None when no grid threshold settles.
    """
    for k, lam in zip(_GRID_EXPONENTS, np.power(10.0, _GRID_EXPONENTS)):
        if entropy_H(symbolize(slopes, lam)) < SETTLE_THRESHOLD:
            return float(k)
    return None


@dataclass(frozen=True)
class InfoContentFeatures:
    h_max: float
    eps_s: float | None
    m0: float

    def feature_dict(self) -> dict[str, float | None]:
        return {"h_max": self.h_max, "eps_s": self.eps_s, "m0": self.m0}


def info_features(
    problem: ProblemInstance,
    seed: int = 0,
    *,
    n: int | None = None,
    sample: EvaluatedPoints | None = None,
    cache_dir: str | None = None,
) -> InfoContentFeatures:
    """Compute the three information-content features of one problem.

    A dedicated sample of 1000 points per dimension is drawn by default;
    the tour start point comes from a stream derived from the same seed.
    """
    if sample is None:
        plan = SamplePlan(
            kind="latin-hypercube",
            n=info_sample_size(problem.dim) if n is None else n,
            seed=seed,
            dim=problem.dim,
        )
        sample = evaluate_plan(problem, plan, cache_dir=cache_dir)
    Xn = unit_scale(sample.x, problem.lower, problem.upper)
    rng = derive(seed, "info-tour", problem.id, problem.dim)
    start = int(rng.integers(len(Xn)))
    order = nearest_neighbor_tour(Xn, start=start)
    slopes = tour_slopes(Xn, sample.v, order)

    h_max = max(entropy_H(symbolize(slopes, lam)) for lam in lambda_grid())
    return InfoContentFeatures(
        h_max=float(h_max),
        eps_s=eps_settling(slopes),
        m0=partial_information(symbolize(slopes, 0.0)),
    )
