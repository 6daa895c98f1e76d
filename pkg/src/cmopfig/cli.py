"""Standalone figure renderer over the analysis CLI's output files.

One command, three figure kinds:

* ``render --kind violin --records <dir> [--feature K]... [--overlay SUITE]``
  draws per-suite feature distributions; without ``--feature`` every
  feature carrying data is rendered into the output directory.
* ``render --kind heatmap --matrix coverage.csv`` draws the coverage
  matrix.
* ``render --kind landscape --grids <dir> --problem <id>`` draws the
  three-panel landscape image from that problem's grid-layer CSVs.

Inputs are only read, never recomputed.  Schema violations exit nonzero
naming the offending key; unexpected rendering failures exit 3.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from cmopfig.figures import build_heatmap, build_landscape, build_violin
from cmopfig.io import (
    SchemaError,
    load_feature_records,
    read_coverage_csv,
    read_grid_layers,
    record_feature_names,
)

CONFIG_ERROR = 2
RENDER_ERROR = 3

_DPI = 100


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _save(fig, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    click.echo(f"wrote {path}")


def _render_violin(
    records_dir: str, features: tuple[str, ...], overlay: str | None, out: str
) -> None:
    records = load_feature_records(records_dir)
    names = list(features) if features else record_feature_names(records)
    if not names:
        _fail(CONFIG_ERROR, "records contain no feature values to plot")
    out_path = Path(out)
    single_file = len(names) == 1 and out_path.suffix and not out_path.is_dir()
    for name in names:
        fig, _meta = build_violin(records, name, overlay=overlay)
        target = out_path if single_file else out_path / f"violin-{name}.png"
        _save(fig, target)


def _render_heatmap(matrix: str, out: str) -> None:
    features, suites, cells = read_coverage_csv(matrix)
    fig, _meta = build_heatmap(features, suites, cells)
    _save(fig, Path(out))


def _render_landscape(grids: str, problem: str, out: str) -> None:
    x1, x2, layers = read_grid_layers(grids, problem)
    fig, _meta = build_landscape(problem, x1, x2, layers)
    _save(fig, Path(out))


@click.command(name="render")
@click.option("--kind", type=click.Choice(["violin", "heatmap", "landscape"]), required=True, help="Figure kind.")
@click.option("--records", "records_dir", default=None, help="Feature-record directory (violin).")
@click.option("--matrix", default=None, help="Coverage CSV path (heatmap).")
@click.option("--grids", default=None, help="Grid-layer CSV directory (landscape).")
@click.option("--problem", default=None, help="Problem id whose grid layers to draw (landscape).")
@click.option("--feature", "features", multiple=True, help="Feature to plot (violin; repeatable; default: all with data).")
@click.option("--overlay", default=None, help="Suite drawn in light gray behind every column (violin).")
@click.option("--out", required=True, help="Output image file, or directory for multi-feature violin runs.")
def render(
    kind: str,
    records_dir: str | None,
    matrix: str | None,
    grids: str | None,
    problem: str | None,
    features: tuple[str, ...],
    overlay: str | None,
    out: str,
) -> None:
    """Render one figure kind from analysis output files."""
    try:
        if kind == "violin":
            if records_dir is None:
                _fail(CONFIG_ERROR, "--records is required for --kind violin")
            _render_violin(records_dir, features, overlay, out)
        elif kind == "heatmap":
            if matrix is None:
                _fail(CONFIG_ERROR, "--matrix is required for --kind heatmap")
            _render_heatmap(matrix, out)
        else:
            if grids is None or problem is None:
                _fail(CONFIG_ERROR, "--grids and --problem are required for --kind landscape")
            _render_landscape(grids, problem, out)
    except SchemaError as exc:
        _fail(CONFIG_ERROR, f"{exc} [key: {exc.key}]")
    except SystemExit:
        raise
    except Exception as exc:  # noqa: BLE001 - surfaced as a rendering error
        _fail(RENDER_ERROR, f"rendering failed: {exc}")


if __name__ == "__main__":
    render()
