"""Figure builders: violin distributions, coverage heat maps, landscapes.

Each builder returns a matplotlib ``Figure`` plus a small metadata record
describing what was drawn, so tests and callers can check structure
without parsing pixels.  Builders are deterministic: fixed figure sizes,
axis ranges computed from the data, and a fixed seed for dot jitter.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from scipy.stats import gaussian_kde

from cmopfig.io import SchemaError, feature_values

BANDWIDTH_FOOTER = "Density bandwidth: Scott's rule"

_DPI = 100
_HALF_WIDTH = 0.38
_OVERLAY_HALF_WIDTH = 0.44


@dataclass(frozen=True)
class ViolinMeta:
    """Structure of one violin figure: columns, dot counts, silhouettes."""

    feature: str
    suites: tuple[str, ...]
    points_per_suite: tuple[int, ...]
    silhouettes: tuple[str, ...]
    overlay: str | None


@dataclass(frozen=True)
class HeatmapMeta:
    """Structure of one coverage heat map."""

    features: tuple[str, ...]
    suites: tuple[str, ...]
    n_rows: int
    n_cols: int


@dataclass(frozen=True)
class LandscapeMeta:
    """Structure of one three-panel landscape image."""

    problem: str
    resolution: int
    panels: int


def _density_silhouette(values: np.ndarray) -> tuple[np.ndarray, np.ndarray] | None:
    """Evaluate a Scott's-rule density over a padded value span.

    Returns (y, half_widths scaled to 1) or None when a density is not
    defined (fewer than two points, or zero spread).
    """
    if len(values) < 2 or np.ptp(values) == 0.0:
        return None
    pad = 0.15 * np.ptp(values)
    y = np.linspace(values.min() - pad, values.max() + pad, 200)
    density = gaussian_kde(values, bw_method="scott")(y)
    return y, density / density.max()


def build_violin(
    records: list[dict], feature: str, overlay: str | None = None
) -> tuple[plt.Figure, ViolinMeta]:
    """Draw one feature's per-suite distributions.

    Each suite gets a column with its problems as dots and, where a
    density is defined, a mirrored silhouette.  With ``overlay``, that
    suite's distribution is additionally drawn in light gray behind
    every column as a shared reference.
    """
    suites, values, _problems = feature_values(records, feature)
    if overlay is not None and overlay not in suites:
        raise SchemaError(overlay, f"overlay suite {overlay!r} not present in the records")

    width = max(4.0, 1.6 * len(suites) + 1.2)
    fig, ax = plt.subplots(figsize=(width, 4.4), dpi=_DPI)
    rng = np.random.default_rng(0)

    overlay_shape = (
        _density_silhouette(np.asarray(values[overlay])) if overlay is not None else None
    )
    silhouettes = []
    for idx, suite in enumerate(suites):
        if overlay_shape is not None:
            y, half = overlay_shape
            ax.fill_betweenx(
                y,
                idx - _OVERLAY_HALF_WIDTH * half,
                idx + _OVERLAY_HALF_WIDTH * half,
                color="0.88",
                zorder=1,
            )
        vals = np.asarray(values[suite], dtype=float)
        shape = _density_silhouette(vals)
        if shape is not None:
            y, half = shape
            ax.fill_betweenx(
                y,
                idx - _HALF_WIDTH * half,
                idx + _HALF_WIDTH * half,
                color="tab:blue",
                alpha=0.45,
                zorder=2,
            )
            silhouettes.append(suite)
        if len(vals):
            jitter = rng.uniform(-0.08, 0.08, size=len(vals))
            ax.plot(
                idx + jitter, vals, linestyle="", marker="o", markersize=3.5,
                color="tab:blue", zorder=3,
            )

    plotted = [v for suite in suites for v in values[suite]]
    if plotted:
        lo, hi = min(plotted), max(plotted)
        pad = 0.05 * (hi - lo) if hi > lo else 0.5
        ax.set_ylim(lo - pad, hi + pad)
    ax.set_xlim(-0.6, len(suites) - 0.4)
    ax.set_xticks(range(len(suites)))
    ax.set_xticklabels(suites, rotation=20, ha="right")
    ax.set_ylabel(feature)
    ax.set_title(feature)
    fig.text(0.5, 0.015, BANDWIDTH_FOOTER, ha="center", fontsize=8, color="0.35")
    fig.subplots_adjust(bottom=0.22)

    meta = ViolinMeta(
        feature=feature,
        suites=tuple(suites),
        points_per_suite=tuple(len(values[s]) for s in suites),
        silhouettes=tuple(silhouettes),
        overlay=overlay,
    )
    return fig, meta


def build_heatmap(
    features: list[str], suites: list[str], cells: np.ndarray
) -> tuple[plt.Figure, HeatmapMeta]:
    """Draw a coverage matrix as a heat map, one row per feature.

    Empty (NaN) cells render light gray to stay distinguishable from
    low coverage.
    """
    cells = np.asarray(cells, dtype=float)
    if cells.shape != (len(features), len(suites)):
        raise SchemaError("feature", "cells shape does not match features x suites")
    fig, ax = plt.subplots(
        figsize=(1.1 * len(suites) + 3.0, 0.28 * len(features) + 1.8), dpi=_DPI
    )
    cmap = plt.get_cmap("viridis").copy()
    cmap.set_bad("0.85")
    image = ax.imshow(
        np.ma.masked_invalid(cells), cmap=cmap, vmin=0.0, vmax=1.0, aspect="auto"
    )
    ax.set_xticks(range(len(suites)))
    ax.set_xticklabels(suites, rotation=30, ha="right")
    ax.set_yticks(range(len(features)))
    ax.set_yticklabels(features, fontsize=7)
    fig.colorbar(image, ax=ax, label="coverage")
    ax.set_title("Feature-space coverage")
    fig.tight_layout()
    meta = HeatmapMeta(
        features=tuple(features),
        suites=tuple(suites),
        n_rows=len(features),
        n_cols=len(suites),
    )
    return fig, meta


def build_landscape(
    problem: str, x1: np.ndarray, x2: np.ndarray, layers: dict[str, np.ndarray]
) -> tuple[plt.Figure, LandscapeMeta]:
    """Draw the three-panel landscape image of one 2-variable problem.

    Panels: dominance ratio with the nondominated set in black; the
    violation landscape with the feasible region in white; the problem
    landscape with feasible points shaded blue by dominance ratio and
    infeasible points in pink.
    """
    extent = (float(x1[0]), float(x1[-1]), float(x2[0]), float(x2[-1]))
    dominance = layers["dominance"]
    feasible = layers["feasibility"] == 1.0
    violation = layers["violation"]
    nondominated = layers["nondominated"] == 1.0

    fig, axes = plt.subplots(1, 3, figsize=(12.6, 4.2), dpi=_DPI)

    im0 = axes[0].imshow(
        dominance.T, origin="lower", extent=extent, cmap="viridis",
        vmin=0.0, vmax=1.0, aspect="auto",
    )
    ii, jj = np.nonzero(nondominated)
    axes[0].plot(x1[ii], x2[jj], linestyle="", marker=".", markersize=2, color="black")
    axes[0].set_title("dominance ratio")
    fig.colorbar(im0, ax=axes[0], shrink=0.85)

    vcmap = plt.get_cmap("magma_r").copy()
    vcmap.set_bad("white")
    masked_v = np.ma.masked_where(feasible, violation)
    im1 = axes[1].imshow(
        masked_v.T, origin="lower", extent=extent, cmap=vcmap, aspect="auto"
    )
    axes[1].set_title("violation landscape")
    fig.colorbar(im1, ax=axes[1], shrink=0.85)

    blues = plt.get_cmap("Blues")
    rgb = np.empty(dominance.shape + (3,))
    rgb[~feasible] = (0.98, 0.78, 0.82)
    rgb[feasible] = blues(1.0 - dominance[feasible])[:, :3]
    axes[2].imshow(
        np.transpose(rgb, (1, 0, 2)), origin="lower", extent=extent, aspect="auto"
    )
    axes[2].set_title("problem landscape")

    for ax in axes:
        ax.set_xlabel("x1")
    axes[0].set_ylabel("x2")
    fig.suptitle(problem)
    fig.tight_layout()
    meta = LandscapeMeta(problem=problem, resolution=len(x1), panels=3)
    return fig, meta
