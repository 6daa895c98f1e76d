"""Landscape feature families computed from evaluated samples and walks."""

from .adaptivewalk import (
    BasinFeatures,
    LocalSearchConfig,
    basin_features,
    descend,
    local_search,
)
from .infocontent import InfoContentFeatures, info_features
from .randomwalk import RandomWalkFeatures, WalkConfig, randomwalk_features
from .spacefill import SpacefillFeatures, spacefill_features, spearman

__all__ = [
    "BasinFeatures",
    "InfoContentFeatures",
    "LocalSearchConfig",
    "RandomWalkFeatures",
    "SpacefillFeatures",
    "WalkConfig",
    "basin_features",
    "descend",
    "info_features",
    "local_search",
    "randomwalk_features",
    "spacefill_features",
    "spearman",
]
