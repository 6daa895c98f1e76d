"""Experimental parameter defaults keyed by problem dimension."""

from __future__ import annotations

from .problems.registry import SUPPORTED_DIMS
from .sampling import SamplePlan

# global sample size |X_S| and clustering radius per dimension
SAMPLE_SIZE = {2: 25000, 3: 100000, 4: 250000, 5: 250000}
CLUSTER_EPS = {2: 0.02, 3: 0.04, 4: 0.12, 5: 0.12}
MIN_SAMPLES = 5

# information-content sample |X_I| scales linearly with dimension
INFO_SAMPLE_PER_DIM = 1000

# random-walk configuration: runs, steps per run, step size as range fraction
WALK_COUNT = 30
WALK_STEPS = 10000
WALK_STEP_FRACTION = 0.01

# adaptive-walk start sample |X_A| per dimension
ADAPTIVE_SAMPLE_SIZE = {2: 10000, 3: 25000, 4: 50000, 5: 50000}


def _check_dim(dim: int) -> int:
    if dim not in SUPPORTED_DIMS:
        raise ValueError(f"dim must be one of {SUPPORTED_DIMS}, got {dim}")
    return dim


def default_plan(dim: int, seed: int, kind: str = "latin-hypercube") -> SamplePlan:
    """Global sampling plan at the experimental defaults for this dimension."""
    _check_dim(dim)
    return SamplePlan(kind=kind, n=SAMPLE_SIZE[dim], seed=seed, dim=dim)


def default_eps(dim: int) -> float:
    _check_dim(dim)
    return CLUSTER_EPS[dim]


def info_sample_size(dim: int) -> int:
    return INFO_SAMPLE_PER_DIM * _check_dim(dim)


def adaptive_sample_size(dim: int) -> int:
    _check_dim(dim)
    return ADAPTIVE_SAMPLE_SIZE[dim]
