"""Landscape analysis toolkit for constrained multiobjective optimization.

The package characterizes constrained multiobjective problems through four
families of exploratory landscape features (space-filling design, information
content, random walks, adaptive walks) plus a feature-space coverage metric
for comparing benchmark suites.
"""

from cmopla.coverage import CoverageMatrix, coverage, coverage_matrix
from cmopla.features import (
    BasinFeatures,
    InfoContentFeatures,
    LocalSearchConfig,
    RandomWalkFeatures,
    SpacefillFeatures,
    WalkConfig,
    basin_features,
    info_features,
    randomwalk_features,
    spacefill_features,
)
from cmopla.gridscan import GridScan, grid_scan
from cmopla.problems import EvaluatedPoints, ProblemInstance, get_problem, registry
from cmopla.record import FEATURE_KEYS, FeatureRecord, load_records
from cmopla.sampling import SamplePlan

__version__ = "0.1.0"

__all__ = [
    "BasinFeatures",
    "CoverageMatrix",
    "EvaluatedPoints",
    "FEATURE_KEYS",
    "FeatureRecord",
    "GridScan",
    "InfoContentFeatures",
    "LocalSearchConfig",
    "ProblemInstance",
    "RandomWalkFeatures",
    "SamplePlan",
    "SpacefillFeatures",
    "WalkConfig",
    "basin_features",
    "coverage",
    "coverage_matrix",
    "get_problem",
    "grid_scan",
    "info_features",
    "load_records",
    "randomwalk_features",
    "registry",
    "spacefill_features",
    "__version__",
]
