"""Basin-of-attraction features from gradient-based adaptive walks.

Every point of an adaptive sample is driven downhill on the aggregate
constraint violation by a deterministic projected-descent local search.
The resulting terminal points are clustered with the shared density
clustering step; each cluster is one basin of attraction, sized by the
fraction of starts it captures.  Basins whose best terminal violation is
within the feasibility tolerance count as feasible basins.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from cmopla.dbscan import DBSCAN
from cmopla.defaults import MIN_SAMPLES, adaptive_sample_size, default_eps
from cmopla.features.spacefill import lower_median
from cmopla.pareto import nondominated_mask
from cmopla.problems.base import ProblemInstance
from cmopla.sampling import SamplePlan, evaluate_plan, unit_scale
from cmopla.validation import check_array_2d, check_positive_float, check_positive_int

__all__ = [
    "FEASIBILITY_TOLERANCE",
    "LocalSearchConfig",
    "feasibility_tolerance_check",
    "descend",
    "local_search",
    "BasinFeatures",
    "basin_features",
]

FEASIBILITY_TOLERANCE = 1e-10

_ALPHA_INIT = 1.0
_ALPHA_MAX = 1e12
_ALPHA_MIN = 1e-18


def feasibility_tolerance_check(v):
    """True where a violation value is feasible up to the numeric tolerance.

    Violations are sums of non-negative terms, so negative inputs signal a
    broken caller and raise.  Accepts scalars or arrays; non-finite values
    are never feasible.
    """
    arr = np.asarray(v, dtype=np.float64)
    with np.errstate(invalid="ignore"):
        if np.any(arr < 0.0):
            raise ValueError("violation values must be non-negative")
        out = arr <= FEASIBILITY_TOLERANCE
    if arr.ndim == 0:
        return bool(out)
    return out


@dataclass(frozen=True)
class LocalSearchConfig:
    """Settings for the violation-descent local search.

    ``max_iterations`` caps the number of trial steps per start.  The
    finite-difference step is ``fd_step_fraction`` times the per-axis
    bound range.  A start converges once an accepted step is shorter
    than ``step_tolerance``, or by a relative first-order stationarity
    test: the gradient scaled by the bound range has infinity-norm at
    or below ``gradient_tolerance`` times the current violation.  The
    relative form mirrors the gradient tolerances quasi-Newton bound
    solvers use — it stalls starts on the near-flat high-violation
    plateaus where such solvers declare convergence, yet never cuts a
    descent short near a feasible region, where the violation itself
    vanishes.  Trial steps are length-limited to ``max_step_fraction`` of the
    bound range per axis so trajectories track the violation gradient
    flow instead of leaping across ridges, which would merge basins
    that the flow keeps separate.
    """

    max_iterations: int = 500
    fd_step_fraction: float = 1e-8
    step_tolerance: float = 1e-10
    max_step_fraction: float = 0.005
    gradient_tolerance: float = 1e-6

    def __post_init__(self):
        check_positive_int(self.max_iterations, name="max_iterations")
        check_positive_float(self.fd_step_fraction, name="fd_step_fraction")
        check_positive_float(self.max_step_fraction, name="max_step_fraction")
        for name in ("step_tolerance", "gradient_tolerance"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or value < 0:
                raise ValueError(f"{name} must be a non-negative number, got {value!r}")


def _forward_gradients(
    problem: ProblemInstance, X: np.ndarray, v: np.ndarray, h: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """One-sided finite-difference gradients of the violation at each row.

    Probes step forward by ``h`` per axis, falling back to a backward
    probe where the forward one would leave the box; an axis whose probe
    collapses onto the base point gets gradient zero.  Returns the
    gradients and a mask of rows whose probes produced non-finite
    violations.
    """
    k, dim = X.shape
    probes = np.repeat(X, dim, axis=0)
    rows = np.arange(k * dim)
    cols = np.tile(np.arange(dim), k)
    base_vals = X.ravel()
    forward = base_vals + h[cols]
    probe_vals = np.where(forward <= problem.upper[cols], forward, base_vals - h[cols])
    probes[rows, cols] = probe_vals
    pv = problem.violation(probes)
    bad = (~np.isfinite(pv)).reshape(k, dim).any(axis=1)
    denom = probe_vals - base_vals
    diffs = pv - np.repeat(v, dim)
    safe = denom != 0.0
    grad = np.zeros(k * dim)
    np.divide(diffs, denom, out=grad, where=safe)
    return grad.reshape(k, dim), bad


def descend(
    problem: ProblemInstance,
    X0: np.ndarray,
    config: LocalSearchConfig | None = None,
    *,
    v0: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Run the violation-descent local search from every row of ``X0``.

    All starts advance in lock step but evolve independently, so batched
    results match one-at-a-time runs bitwise.  Each iteration proposes
    ``clip(x - alpha * grad)`` with the step length-limited per axis; a
    strict violation decrease is accepted and doubles the effective step
    scale, a rejection halves it and reuses the cached gradient.  Starts
    stop on convergence (accepted step below the step tolerance or a
    scaled gradient below the gradient tolerance), step-size underflow,
    or the iteration cap, and the best
    iterate so far is their terminal.  Already-feasible starts are their
    own terminals.  A start whose violation evaluates to a non-finite
    value anywhere is aborted and flagged.

    Returns ``(terminals, terminal_violation, aborted)``; aborted rows
    carry NaN terminal violation.
    """
    if config is None:
        config = LocalSearchConfig()
    X0 = check_array_2d(X0, name="X0")
    n, dim = X0.shape
    if dim != problem.dim:
        raise ValueError(f"X0 has dimension {dim}, problem has {problem.dim}")
    lower, upper = problem.lower, problem.upper
    if v0 is None:
        v0 = problem.violation(X0) if n else np.empty(0)
    v0 = np.asarray(v0, dtype=np.float64)

    terminals = X0.astype(np.float64).copy()
    term_v = v0.copy()
    aborted = ~np.isfinite(v0)
    term_v[aborted] = np.nan

    x = terminals.copy()
    v = v0.copy()
    alpha = np.full(n, _ALPHA_INIT)
    grad = np.zeros((n, dim))
    need_grad = np.ones(n, dtype=bool)
    trials = np.zeros(n, dtype=np.int64)
    active = ~aborted & (v0 > 0.0)
    h = config.fd_step_fraction * problem.range
    cap = config.max_step_fraction * problem.range

    def _finish(idx: np.ndarray) -> None:
        terminals[idx] = x[idx]
        term_v[idx] = v[idx]
        active[idx] = False

    def _abort(idx: np.ndarray) -> None:
        terminals[idx] = x[idx]
        term_v[idx] = np.nan
        aborted[idx] = True
        active[idx] = False

    while active.any():
        gi = np.flatnonzero(active & need_grad)
        if gi.size:
            g, bad = _forward_gradients(problem, x[gi], v[gi], h)
            grad[gi] = g
            need_grad[gi] = False
            _abort(gi[bad])
            scaled = (np.abs(g) * problem.range).max(axis=1)
            flat = gi[~bad & (scaled <= config.gradient_tolerance * v[gi])]
            _finish(flat)

        act = np.flatnonzero(active)
        if act.size == 0:
            break
        raw = alpha[act, None] * grad[act]
        scale = np.maximum((np.abs(raw) / cap).max(axis=1), 1.0)
        alpha_eff = alpha[act] / scale
        cand = np.clip(x[act] - alpha_eff[:, None] * grad[act], lower, upper)
        cv = problem.violation(cand)
        trials[act] += 1
        finite = np.isfinite(cv)
        accepted = finite & (cv < v[act])

        ai = act[accepted]
        if ai.size:
            step = np.linalg.norm(cand[accepted] - x[ai], axis=1)
            x[ai] = cand[accepted]
            v[ai] = cv[accepted]
            alpha[ai] = np.minimum(alpha_eff[accepted] * 2.0, _ALPHA_MAX)
            need_grad[ai] = True
            _finish(ai[step < config.step_tolerance])

        rejected = finite & ~accepted
        ri = act[rejected]
        alpha[ri] = alpha_eff[rejected] * 0.5
        _finish(ri[alpha[ri] < _ALPHA_MIN])

        _abort(act[~finite])
        _finish(np.flatnonzero(active & (trials >= config.max_iterations)))

    return terminals, term_v, aborted


def local_search(
    problem: ProblemInstance, x0: np.ndarray, config: LocalSearchConfig | None = None
) -> np.ndarray:
    """Terminal point of the violation-descent search from a single start.

    Raises if the search hits a non-finite violation, which in batched
    runs merely flags the start as aborted.
    """
    x0 = np.asarray(x0, dtype=np.float64)
    if x0.ndim != 1:
        raise ValueError(f"x0 must be 1-dimensional, got shape {x0.shape}")
    terminals, _, aborted = descend(problem, x0.reshape(1, -1), config)
    if aborted[0]:
        raise ValueError("local search aborted: violation evaluated to a non-finite value")
    return terminals[0]


@dataclass(frozen=True)
class BasinFeatures:
    """Basin-of-attraction features plus clustering diagnostics.

    All feature fields are None when no start survives the local search.
    ``basin_sizes`` and ``v_per_basin`` are ordered by cluster label;
    sizes use the full start count as denominator, so cluster mass plus
    ``noise_mass`` plus ``aborted_mass`` is exactly one.
    """

    n_basin: int | None
    basin_min: float | None
    basin_med: float | None
    basin_max: float | None
    fbasin_min: float | None
    fbasin_med: float | None
    fbasin_max: float | None
    union_fbasin: float | None
    v_basin_med: float | None
    v_basin_max: float | None
    v_basin_of_max: float | None
    opt_basin_max: float | None
    basin_opt: float | None
    basin_sizes: tuple[float, ...]
    v_per_basin: tuple[float, ...]
    noise_mass: float | None
    aborted_mass: float
    n_starts: int
    n_aborted: int

    def feature_dict(self) -> dict[str, float | int | None]:
        return {
            "n_basin": self.n_basin,
            "basin_min": self.basin_min,
            "basin_med": self.basin_med,
            "basin_max": self.basin_max,
            "fbasin_min": self.fbasin_min,
            "fbasin_med": self.fbasin_med,
            "fbasin_max": self.fbasin_max,
            "union_fbasin": self.union_fbasin,
            "v_basin_med": self.v_basin_med,
            "v_basin_max": self.v_basin_max,
            "v_basin_of_max": self.v_basin_of_max,
            "opt_basin_max": self.opt_basin_max,
            "basin_opt": self.basin_opt,
        }


def _all_null(n_starts: int, n_aborted: int) -> BasinFeatures:
    return BasinFeatures(
        n_basin=None,
        basin_min=None,
        basin_med=None,
        basin_max=None,
        fbasin_min=None,
        fbasin_med=None,
        fbasin_max=None,
        union_fbasin=None,
        v_basin_med=None,
        v_basin_max=None,
        v_basin_of_max=None,
        opt_basin_max=None,
        basin_opt=None,
        basin_sizes=(),
        v_per_basin=(),
        noise_mass=None,
        aborted_mass=n_aborted / n_starts if n_starts else 0.0,
        n_starts=n_starts,
        n_aborted=n_aborted,
    )


def basin_features(
    problem: ProblemInstance,
    plan: SamplePlan | None = None,
    config: LocalSearchConfig | None = None,
    *,
    eps: float | None = None,
    min_samples: int = MIN_SAMPLES,
    seed: int = 0,
    cache_dir: str | Path | None = None,
    terminal_csv: str | Path | None = None,
) -> BasinFeatures:
    """Compute the thirteen basin features from an adaptive sample.

    Every sample point is descended to its terminal; terminals of
    surviving starts are clustered in the unit-scaled search space.
    Aborted starts are excluded from all statistics, and with no
    survivors every feature is None.  ``terminal_csv`` optionally dumps
    one row per surviving start (start, terminal, terminal violation,
    cluster label) for auditing.
    """
    if plan is None:
        plan = SamplePlan(
            kind="latin-hypercube",
            n=adaptive_sample_size(problem.dim),
            seed=seed,
            dim=problem.dim,
        )
    if eps is None:
        eps = default_eps(problem.dim)
    ev = evaluate_plan(problem, plan, cache_dir=cache_dir)
    n = len(ev)
    terminals, _, aborted = descend(problem, ev.x, config, v0=ev.v)
    n_aborted = int(aborted.sum())

    valid = ~aborted
    if not valid.any():
        return _all_null(n, n_aborted)

    T = terminals[valid]
    ev_t = problem.evaluate(T)
    model = DBSCAN(eps=eps, min_samples=min_samples).fit(
        unit_scale(T, problem.lower, problem.upper)
    )
    labels = model.labels_
    n_basin = int(model.n_clusters_)
    noise_mass = float((labels == -1).sum() / n)
    aborted_mass = n_aborted / n

    if n_basin == 0:
        return BasinFeatures(
            n_basin=0,
            basin_min=None,
            basin_med=None,
            basin_max=None,
            fbasin_min=None,
            fbasin_med=None,
            fbasin_max=None,
            union_fbasin=0.0,
            v_basin_med=None,
            v_basin_max=None,
            v_basin_of_max=None,
            opt_basin_max=None,
            basin_opt=None,
            basin_sizes=(),
            v_per_basin=(),
            noise_mass=noise_mass,
            aborted_mass=aborted_mass,
            n_starts=n,
            n_aborted=n_aborted,
        )

    counts = np.bincount(labels[labels >= 0], minlength=n_basin)
    sizes = counts / n
    v_per_basin = np.full(n_basin, np.inf)
    np.minimum.at(v_per_basin, labels[labels >= 0], ev_t.v[labels >= 0])

    feasible_basin = feasibility_tolerance_check(v_per_basin)
    largest = int(np.argmax(counts))

    feasible_terminal = feasibility_tolerance_check(ev_t.v)
    nd = np.zeros(len(T), dtype=bool)
    if feasible_terminal.any():
        nd[feasible_terminal] = nondominated_mask(ev_t.f[feasible_terminal])

    in_largest = labels == largest
    opt_basin_max = float(nd[in_largest].sum() / counts[largest])

    nd_per_basin = np.bincount(labels[nd & (labels >= 0)], minlength=n_basin)
    if nd_per_basin.sum() == 0:
        basin_opt = None
    else:
        basin_opt = float(sizes[int(np.argmax(nd_per_basin))])

    if feasible_basin.any():
        fsizes = sizes[feasible_basin]
        fbasin_min = float(fsizes.min())
        fbasin_med = lower_median(fsizes)
        fbasin_max = float(fsizes.max())
        union_fbasin = float(fsizes.sum())
    else:
        fbasin_min = fbasin_med = fbasin_max = None
        union_fbasin = 0.0

    feats = BasinFeatures(
        n_basin=n_basin,
        basin_min=float(sizes.min()),
        basin_med=lower_median(sizes),
        basin_max=float(sizes.max()),
        fbasin_min=fbasin_min,
        fbasin_med=fbasin_med,
        fbasin_max=fbasin_max,
        union_fbasin=union_fbasin,
        v_basin_med=lower_median(v_per_basin),
        v_basin_max=float(v_per_basin.max()),
        v_basin_of_max=float(v_per_basin[largest]),
        opt_basin_max=opt_basin_max,
        basin_opt=basin_opt,
        basin_sizes=tuple(float(s) for s in sizes),
        v_per_basin=tuple(float(b) for b in v_per_basin),
        noise_mass=noise_mass,
        aborted_mass=aborted_mass,
        n_starts=n,
        n_aborted=n_aborted,
    )
    if terminal_csv is not None:
        _dump_terminals(terminal_csv, ev.x[valid], T, ev_t.v, labels)
    return feats


def _dump_terminals(path, starts, terminals, term_v, labels) -> None:
    dim = starts.shape[1]
    header = (
        [f"x{d + 1}_start" for d in range(dim)]
        + [f"x{d + 1}_term" for d in range(dim)]
        + ["violation", "cluster"]
    )
    data = np.column_stack([starts, terminals, term_v, labels.astype(np.float64)])
    np.savetxt(
        path,
        data,
        delimiter=",",
        header=",".join(header),
        comments="",
        fmt="%.17g",
    )
