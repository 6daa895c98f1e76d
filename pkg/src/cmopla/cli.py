"""Command-line interface for landscape analysis of constrained problems.

Four commands cover the full workflow: ``list`` prints the problem
registry, ``features`` extracts feature records, ``gridscan`` rasterizes
a 2-variable problem into audit grids, and ``coverage`` compares feature
distributions between suites.  Outputs are JSON records and CSV tables
so downstream tools can consume them without bindings.

Exit codes: 0 on success, 2 for configuration errors (unknown ids,
invalid dimensions, missing inputs), 3 for failures while computing.
"""

from __future__ import annotations

import fnmatch
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from cmopla.coverage import coverage_matrix, feature_bounds, write_bounds_audit, write_coverage_csv
from cmopla.defaults import (
    MIN_SAMPLES,
    WALK_COUNT,
    WALK_STEP_FRACTION,
    WALK_STEPS,
    adaptive_sample_size,
    default_eps,
    info_sample_size,
)
from cmopla.features import (
    WalkConfig,
    basin_features,
    info_features,
    randomwalk_features,
    spacefill_features,
)
from cmopla.gridscan import grid_scan, write_grid_csvs
from cmopla.problems import SUPPORTED_DIMS, get_problem, problem_ids, registry
from cmopla.record import FAMILY_KEYS, FeatureRecord, load_records, utc_timestamp
from cmopla.sampling import SamplePlan

CONFIG_ERROR = 2
COMPUTE_ERROR = 3

FAMILIES = tuple(FAMILY_KEYS)

_LIST_COLUMNS = ("id", "suite", "n_obj", "n_ieq", "n_eq")

_CACHE_ENVVAR = "CMOP_CACHE_DIR"


def _fail(code: int, message: str) -> None:
    """Print ``message`` to stderr and exit with ``code``."""
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _resolve_cache(cache: str | None) -> str | None:
    """CLI flag wins; otherwise fall back to the cache environment variable."""
    if cache is not None:
        return cache
    import os

    return os.environ.get(_CACHE_ENVVAR) or None


def _select_problems(problems: tuple[str, ...], suite_globs: tuple[str, ...]) -> list[str]:
    """Resolve ``--problem``/``--suite`` selections into registry ids.

    Both accept shell-style globs; matching is case-insensitive.  Ids are
    returned in registry order without duplicates.  A ``--problem`` value
    that matches nothing is a configuration error; a ``--suite`` value
    that matches nothing selects nothing (mirroring the empty table that
    ``list`` prints for an unknown suite).
    """
    known = problem_ids()
    meta = registry()
    chosen: list[str] = []

    def _add(pid: str) -> None:
        if pid not in chosen:
            chosen.append(pid)

    for pattern in problems:
        hits = [pid for pid in known if fnmatch.fnmatch(pid.lower(), pattern.lower())]
        if not hits:
            _fail(CONFIG_ERROR, f"unknown problem id or pattern {pattern!r}")
        for pid in hits:
            _add(pid)
    for pattern in suite_globs:
        for pid in known:
            if fnmatch.fnmatch(meta[pid]["suite"].lower(), pattern.lower()):
                _add(pid)
    return chosen


def _effective_params(
    dim: int,
    samples: int | None,
    eps: float | None,
    walks: int | None,
    steps: int | None,
    families: tuple[str, ...],
) -> dict:
    """Fill in per-dimension defaults and echo every knob a record used."""
    return {
        "samples": int(samples) if samples is not None else _spacefill_default(dim),
        "eps": float(eps) if eps is not None else default_eps(dim),
        "min_samples": MIN_SAMPLES,
        "info_samples": info_sample_size(dim),
        "walks": int(walks) if walks is not None else WALK_COUNT,
        "steps": int(steps) if steps is not None else WALK_STEPS,
        "walk_step_fraction": WALK_STEP_FRACTION,
        "adaptive_samples": adaptive_sample_size(dim),
        "families": list(families),
    }


def _spacefill_default(dim: int) -> int:
    from cmopla.defaults import SAMPLE_SIZE

    return SAMPLE_SIZE[dim]


def _feature_job(job: tuple) -> tuple[str, int, dict[str, dict]]:
    """Compute the requested feature families for one (problem, dim) pair.

    Runs in a worker process, so the argument is one picklable tuple and
    the result carries plain dicts only.
    """
    pid, dim, seed, params, cache_dir = job
    problem = get_problem(pid, dim)
    families: dict[str, dict] = {}
    wanted = params["families"]
    if "spacefill" in wanted:
        plan = SamplePlan(kind="latin-hypercube", n=params["samples"], seed=seed, dim=dim)
        families["spacefill"] = spacefill_features(
            problem,
            plan,
            eps=params["eps"],
            min_samples=params["min_samples"],
            cache_dir=cache_dir,
            seed=seed,
        ).feature_dict()
    if "infocontent" in wanted:
        families["infocontent"] = info_features(
            problem, seed=seed, n=params["info_samples"], cache_dir=cache_dir
        ).feature_dict()
    if "randomwalk" in wanted:
        config = WalkConfig(
            steps=params["steps"],
            step_fraction=params["walk_step_fraction"],
            repetitions=params["walks"],
            seed=seed,
        )
        families["randomwalk"] = randomwalk_features(problem, config).feature_dict()
    if "adaptivewalk" in wanted:
        plan = SamplePlan(
            kind="latin-hypercube", n=params["adaptive_samples"], seed=seed, dim=dim
        )
        families["adaptivewalk"] = basin_features(
            problem,
            plan,
            eps=params["eps"],
            min_samples=params["min_samples"],
            seed=seed,
            cache_dir=cache_dir,
        ).feature_dict()
    return pid, dim, families


@click.group()
def main() -> None:
    """Characterize constrained multiobjective problems by landscape features."""


@main.command(name="list")
@click.option("--suite", "suite_glob", default=None, help="Only list this suite (globs allowed).")
@click.option("--json", "as_json", is_flag=True, help="Print the registry as a JSON array.")
def cmd_list(suite_glob: str | None, as_json: bool) -> None:
    """Print the built-in problem registry."""
    meta = registry()
    rows = [meta[pid] for pid in problem_ids()]
    if suite_glob is not None:
        rows = [row for row in rows if fnmatch.fnmatch(row["suite"].lower(), suite_glob.lower())]
    if as_json:
        click.echo(json.dumps(rows, indent=2))
        return
    header = tuple(col.upper() for col in _LIST_COLUMNS)
    table = [header] + [tuple(str(row[col]) for col in _LIST_COLUMNS) for row in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(header))]
    for line in table:
        click.echo("  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip())


@main.command(name="features")
@click.option("--problem", "problems", multiple=True, help="Problem id (repeatable, globs allowed).")
@click.option("--suite", "suite_globs", multiple=True, help="Whole suite (repeatable, globs allowed).")
@click.option("--dim", "dims", multiple=True, type=int, default=(2,), show_default=True, help="Search-space dimension (repeatable).")
@click.option("--seed", type=int, default=0, show_default=True, help="Master seed for all sampling.")
@click.option("--samples", type=int, default=None, help="Space-filling design size (default depends on --dim).")
@click.option("--eps", type=float, default=None, help="Clustering radius in the unit-scaled space (default depends on --dim).")
@click.option("--walks", type=int, default=None, help=f"Number of random-walk repetitions (default {WALK_COUNT}).")
@click.option("--steps", type=int, default=None, help=f"Steps per random walk (default {WALK_STEPS}).")
@click.option("--only", "only", multiple=True, help="Restrict to one feature family (repeatable).")
@click.option("--out", type=click.Path(file_okay=False), default=".", show_default=True, help="Directory for record JSON files.")
@click.option("--cache", default=None, help=f"Evaluation cache directory (fallback: ${_CACHE_ENVVAR}).")
@click.option("--workers", type=int, default=1, show_default=True, help="Concurrent per-problem jobs.")
def cmd_features(
    problems: tuple[str, ...],
    suite_globs: tuple[str, ...],
    dims: tuple[int, ...],
    seed: int,
    samples: int | None,
    eps: float | None,
    walks: int | None,
    steps: int | None,
    only: tuple[str, ...],
    out: str,
    cache: str | None,
    workers: int,
) -> None:
    """Compute feature records and write one JSON file per problem and dimension."""
    if not problems and not suite_globs:
        _fail(CONFIG_ERROR, "select problems with --problem and/or --suite")
    if seed < 0:
        _fail(CONFIG_ERROR, f"seed must be non-negative, got {seed}")
    if workers < 1:
        _fail(CONFIG_ERROR, f"workers must be at least 1, got {workers}")

    families: tuple[str, ...] = FAMILIES
    if only:
        wanted = []
        for item in only:
            for name in item.split(","):
                name = name.strip()
                if name not in FAMILIES:
                    _fail(
                        CONFIG_ERROR,
                        f"unknown feature family {name!r}; known: {', '.join(FAMILIES)}",
                    )
                if name not in wanted:
                    wanted.append(name)
        families = tuple(name for name in FAMILIES if name in wanted)

    unique_dims: list[int] = []
    for dim in dims:
        if dim not in SUPPORTED_DIMS:
            _fail(
                CONFIG_ERROR,
                f"unsupported dimension {dim}; supported: {', '.join(map(str, SUPPORTED_DIMS))}",
            )
        if dim not in unique_dims:
            unique_dims.append(dim)

    pids = _select_problems(problems, suite_globs)
    if not pids:
        click.echo("nothing selected", err=True)
        return

    jobs = []
    for pid in pids:
        for dim in unique_dims:
            try:
                get_problem(pid, dim)
            except (KeyError, ValueError) as exc:
                _fail(CONFIG_ERROR, str(exc))
            params = _effective_params(dim, samples, eps, walks, steps, families)
            jobs.append((pid, dim, seed, params, _resolve_cache(cache)))

    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_feature_job, jobs))
        else:
            results = [_feature_job(job) for job in jobs]
    except Exception as exc:  # noqa: BLE001 - surfaced as a computation error
        _fail(COMPUTE_ERROR, f"feature computation failed: {exc}")

    for job, (pid, dim, computed) in zip(jobs, results):
        problem = get_problem(pid, dim)
        record = FeatureRecord.from_families(
            problem=pid,
            suite=problem.suite,
            dim=dim,
            seed=seed,
            params=job[3],
            families=computed,
            created=utc_timestamp(),
        )
        path = out_dir / f"{pid}-d{dim}-s{seed}.json"
        record.save(path)
        click.echo(f"wrote {path}")


@main.command(name="gridscan")
@click.option("--problem", "pid", required=True, help="Problem id (must support 2 variables).")
@click.option("--dim", type=int, default=2, show_default=True, help="Must be 2: grids are rasters over two variables.")
@click.option("--samples", "resolution", type=int, default=501, show_default=True, help="Grid resolution (points per axis).")
@click.option("--out", type=click.Path(file_okay=False), default=".", show_default=True, help="Directory for the four layer CSVs.")
@click.option("--json", "as_json", is_flag=True, help="Print the summary as JSON.")
def cmd_gridscan(pid: str, dim: int, resolution: int, out: str, as_json: bool) -> None:
    """Rasterize a 2-variable problem into violation, feasibility, dominance, and nondominated grids."""
    if dim != 2:
        _fail(CONFIG_ERROR, "grid scans are defined for 2-variable problems")
    if resolution < 2:
        _fail(CONFIG_ERROR, f"resolution must be at least 2, got {resolution}")
    try:
        problem = get_problem(pid, 2)
    except (KeyError, ValueError) as exc:
        _fail(CONFIG_ERROR, str(exc))
    try:
        scan = grid_scan(problem, resolution)
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = write_grid_csvs(scan, out_dir)
    except Exception as exc:  # noqa: BLE001 - surfaced as a computation error
        _fail(COMPUTE_ERROR, f"grid scan failed: {exc}")
    if as_json:
        click.echo(
            json.dumps(
                {
                    "problem": scan.problem,
                    "resolution": scan.resolution,
                    "feasible_components": scan.n_feasible_components,
                    "files": {name: str(path) for name, path in paths.items()},
                },
                indent=2,
            )
        )
        return
    click.echo(
        f"{scan.problem}: {scan.resolution}x{scan.resolution} grid, "
        f"feasible components: {scan.n_feasible_components}"
    )
    for name, path in paths.items():
        click.echo(f"wrote {path}")


@main.command(name="coverage")
@click.argument("records_dir", type=click.Path(file_okay=False))
@click.option("--suite", "target", default="all", show_default=True, help="Target whose coverage is measured ('all' = union of records).")
@click.option("--out", type=click.Path(file_okay=False), default=".", show_default=True, help="Directory for the coverage CSV and audit JSON.")
@click.option("--json", "as_json", is_flag=True, help="Print the coverage matrix as JSON.")
def cmd_coverage(records_dir: str, target: str, out: str, as_json: bool) -> None:
    """Score how well each suite covers the target's normalized feature values."""
    try:
        records = load_records(records_dir)
    except ValueError as exc:
        _fail(CONFIG_ERROR, str(exc))
    if not records:
        _fail(CONFIG_ERROR, f"no feature records in {records_dir}")
    try:
        matrix = coverage_matrix(records, target=target)
        bounds, excluded = feature_bounds(records)
    except ValueError as exc:
        _fail(CONFIG_ERROR, str(exc))

    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = write_coverage_csv(matrix, out_dir / "coverage.csv")
    audit_path = write_bounds_audit(bounds, excluded, out_dir / "normalization-audit.json")

    for name in matrix.excluded:
        click.echo(f"excluded (all null): {name}", err=True)
    null_cells = sum(cell is None for row in matrix.cells for cell in row)
    if null_cells:
        click.echo(f"null cells: {null_cells}", err=True)

    if as_json:
        click.echo(
            json.dumps(
                {
                    "target": matrix.target,
                    "suites": list(matrix.suites),
                    "features": list(matrix.features),
                    "cells": [list(row) for row in matrix.cells],
                    "excluded": list(matrix.excluded),
                },
                indent=2,
            )
        )
    click.echo(f"wrote {csv_path}")
    click.echo(f"wrote {audit_path}")


if __name__ == "__main__":
    main()
