"""Shared fixtures: synthetic problems with known landscapes."""

from __future__ import annotations

import numpy as np
import pytest

from cmopla.problems.base import ProblemInstance


def make_unconstrained(dim: int = 2) -> ProblemInstance:
    """Fully feasible problem: sphere objectives, zero constraints."""

    def fn(X):
        f1 = np.sum(X * X, axis=1)
        f2 = np.sum((X - 1.0) ** 2, axis=1)
        return np.column_stack([f1, f2]), None, None

    return ProblemInstance(
        id="unconstrained-sphere",
        suite="synthetic",
        dim=dim,
        n_obj=2,
        n_ieq=0,
        n_eq=0,
        lower=np.zeros(dim),
        upper=np.ones(dim),
        fn=fn,
    )


def make_halfspace(dim: int = 2, threshold: float = 0.5) -> ProblemInstance:
    """Single constraint x1 <= threshold; violation grows linearly."""

    def fn(X):
        f1 = X[:, 0]
        f2 = 1.0 - X[:, 0]
        return np.column_stack([f1, f2]), (X[:, 0] - threshold).reshape(-1, 1), None

    return ProblemInstance(
        id="halfspace",
        suite="synthetic",
        dim=dim,
        n_obj=2,
        n_ieq=1,
        n_eq=0,
        lower=np.zeros(dim),
        upper=np.ones(dim),
        fn=fn,
    )


def make_quadratic_valley(center: float = 0.3) -> ProblemInstance:
    """1-D-in-2-D problem whose violation is (x1 - center)^2."""

    def fn(X):
        f1 = X[:, 0]
        f2 = X[:, 1]
        g = (X[:, 0] - center) ** 2
        return np.column_stack([f1, f2]), g.reshape(-1, 1), None

    return ProblemInstance(
        id="quadratic-valley",
        suite="synthetic",
        dim=2,
        n_obj=2,
        n_ieq=1,
        n_eq=0,
        lower=np.zeros(2),
        upper=np.ones(2),
        fn=fn,
    )


def make_two_valleys() -> ProblemInstance:
    """Violation min((x1-0.2)^2, (x1-0.8)^2) + 0.1: two attractors, no
    feasible points."""

    def fn(X):
        f1 = X[:, 0]
        f2 = X[:, 1]
        g = np.minimum((X[:, 0] - 0.2) ** 2, (X[:, 0] - 0.8) ** 2) + 0.1
        return np.column_stack([f1, f2]), g.reshape(-1, 1), None

    return ProblemInstance(
        id="two-valleys",
        suite="synthetic",
        dim=2,
        n_obj=2,
        n_ieq=1,
        n_eq=0,
        lower=np.zeros(2),
        upper=np.ones(2),
        fn=fn,
    )


def make_violation_transforms() -> ProblemInstance:
    """f1 is a strictly increasing transform of the violation, f2 strictly
    decreasing, so the rank correlations are exactly +1 and -1."""

    def fn(X):
        g = X[:, 0] - 0.2
        v = np.maximum(0.0, g)
        f1 = np.exp(v)
        f2 = -v
        return np.column_stack([f1, f2]), g.reshape(-1, 1), None

    return ProblemInstance(
        id="violation-transforms",
        suite="synthetic",
        dim=2,
        n_obj=2,
        n_ieq=1,
        n_eq=0,
        lower=np.zeros(2),
        upper=np.ones(2),
        fn=fn,
    )


def make_nan_patch() -> ProblemInstance:
    """Violation is x1 - 0.2 but evaluates to NaN where x1 > 0.9."""

    def fn(X):
        f1 = X[:, 0]
        f2 = X[:, 1]
        g = np.where(X[:, 0] > 0.9, np.nan, X[:, 0] - 0.2)
        return np.column_stack([f1, f2]), g.reshape(-1, 1), None

    return ProblemInstance(
        id="nan-patch",
        suite="synthetic",
        dim=2,
        n_obj=2,
        n_ieq=1,
        n_eq=0,
        lower=np.zeros(2),
        upper=np.ones(2),
        fn=fn,
    )


def make_all_nan() -> ProblemInstance:
    """Every evaluation produces a NaN violation."""

    def fn(X):
        f = np.column_stack([X[:, 0], X[:, 1]])
        return f, np.full((len(X), 1), np.nan), None

    return ProblemInstance(
        id="all-nan",
        suite="synthetic",
        dim=2,
        n_obj=2,
        n_ieq=1,
        n_eq=0,
        lower=np.zeros(2),
        upper=np.ones(2),
        fn=fn,
    )


@pytest.fixture
def unconstrained() -> ProblemInstance:
    return make_unconstrained()


@pytest.fixture
def halfspace() -> ProblemInstance:
    return make_halfspace()
