"""Batch figure rendering over landscape-analysis output files.

Renders violin plots of feature distributions, coverage heat maps, and
three-panel 2-D landscape images from the feature-record JSON, coverage
CSV, and grid-layer CSV files that the analysis CLI writes.  Everything
is driven by those documented file formats; nothing is recomputed.
"""

from cmopfig.figures import (
    HeatmapMeta,
    LandscapeMeta,
    ViolinMeta,
    build_heatmap,
    build_landscape,
    build_violin,
)
from cmopfig.io import SchemaError, load_feature_records, read_coverage_csv, read_grid_layers

__version__ = "0.1.0"

__all__ = [
    "HeatmapMeta",
    "LandscapeMeta",
    "SchemaError",
    "ViolinMeta",
    "build_heatmap",
    "build_landscape",
    "build_violin",
    "load_feature_records",
    "read_coverage_csv",
    "read_grid_layers",
    "__version__",
]
