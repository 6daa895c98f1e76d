"""Space-filling-design features over a global Latin hypercube sample."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from ..dbscan import DBSCAN
from ..defaults import MIN_SAMPLES, default_eps, default_plan
from ..pareto import nondominated_mask
from ..problems.base import EvaluatedPoints, ProblemInstance
from ..sampling import SamplePlan, evaluate_plan, unit_scale

__all__ = ["SpacefillFeatures", "spacefill_features", "spearman"]


def spearman(a: np.ndarray, b: np.ndarray) -> float | None:
    """Spearman rank correlation: Pearson correlation of fractional ranks.

    Ties receive average ranks. Returns None when either vector has zero
    rank variance, where the coefficient is undefined.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or b.ndim != 1 or a.shape != b.shape:
        raise ValueError(f"expected equal-length vectors, got {a.shape} and {b.shape}")
    if len(a) < 2:
        raise ValueError("need at least two observations")
    ra = rankdata(a)
    rb = rankdata(b)
    if np.ptp(ra) == 0.0 or np.ptp(rb) == 0.0:
        return None
    # identical or mirrored rank vectors are exactly +-1 by definition;
    # bypass the general formula so no rounding drift leaks out
    if np.array_equal(ra, rb):
        return 1.0
    if np.array_equal(ra + rb, np.full(len(ra), len(ra) + 1.0)):
        return -1.0
    return float(np.clip(np.corrcoef(ra, rb)[0, 1], -1.0, 1.0))


@dataclass(frozen=True)
class SpacefillFeatures:
    """The ten design features plus bookkeeping used by invariant checks.

    Component sizes are proportions of the full sample, so feasible points
    labeled as noise contribute to rho_f but to no component. Features that
    cannot be computed are None, never 0 or NaN.
    """

    n_com: int
    com_min: float | None
    com_med: float | None
    com_max: float | None
    opt_com_max: float | None
    com_opt: float | None
    rho_f: float
    corr_min: float | None
    corr_max: float | None
    rho_bound_opt: float | None
    component_sizes: tuple[float, ...]
    noise_mass: float
    n_feasible: int

    def feature_dict(self) -> dict[str, float | int | None]:
        return {
            "n_com": self.n_com,
            "com_min": self.com_min,
            "com_med": self.com_med,
            "com_max": self.com_max,
            "opt_com_max": self.opt_com_max,
            "com_opt": self.com_opt,
            "rho_f": self.rho_f,
            "corr_min": self.corr_min,
            "corr_max": self.corr_max,
            "rho_bound_opt": self.rho_bound_opt,
        }


def lower_median(values: np.ndarray) -> float:
    """Median as the lower-middle order statistic for even counts."""
    values = np.sort(np.asarray(values, dtype=float))
    return float(values[(len(values) - 1) // 2])


def spacefill_features(
    problem: ProblemInstance,
    plan: SamplePlan | None = None,
    *,
    eps: float | None = None,
    min_samples: int = MIN_SAMPLES,
    sample: EvaluatedPoints | None = None,
    cache_dir: str | None = None,
    seed: int = 0,
) -> SpacefillFeatures:
    """Compute the design features from one evaluated sample.

    The sample defaults to the per-dimension experimental plan; pass an
    already evaluated sample to share it across feature families.
    """
    if plan is None:
        plan = default_plan(problem.dim, seed=seed)
    if eps is None:
        eps = default_eps(problem.dim)
    ev = sample if sample is not None else evaluate_plan(problem, plan, cache_dir=cache_dir)
    n = len(ev)
    feasible = ev.is_feasible
    n_feasible = int(feasible.sum())
    rho_f = n_feasible / n

    corrs = [spearman(ev.f[:, m], ev.v) for m in range(ev.f.shape[1])]
    defined = [c for c in corrs if c is not None]
    corr_min = min(defined) if defined else None
    corr_max = max(defined) if defined else None

    if n_feasible == 0:
        return SpacefillFeatures(
            n_com=0,
            com_min=None,
            com_med=None,
            com_max=None,
            opt_com_max=None,
            com_opt=None,
            rho_f=0.0,
            corr_min=corr_min,
            corr_max=corr_max,
            rho_bound_opt=None,
            component_sizes=(),
            noise_mass=0.0,
            n_feasible=0,
        )

    Xf = unit_scale(ev.x[feasible], problem.lower, problem.upper)
    model = DBSCAN(eps=eps, min_samples=min_samples).fit(Xf)
    labels = model.labels_
    n_com = model.n_clusters_

    nd = nondominated_mask(ev.f[feasible])

    if n_com == 0:
        return SpacefillFeatures(
            n_com=0,
            com_min=None,
            com_med=None,
            com_max=None,
            opt_com_max=None,
            com_opt=None,
            rho_f=rho_f,
            corr_min=corr_min,
            corr_max=corr_max,
            rho_bound_opt=_boundary_share(nd, labels, model.is_core_),
            component_sizes=(),
            noise_mass=n_feasible / n,
            n_feasible=n_feasible,
        )

    counts = np.bincount(labels[labels >= 0], minlength=n_com)
    sizes = counts / n
    largest = int(np.argmax(counts))
    nd_in_largest = int(np.sum(nd & (labels == largest)))
    opt_com_max = nd_in_largest / counts[largest]

    nd_per_cluster = np.bincount(labels[(labels >= 0) & nd], minlength=n_com)
    if nd_per_cluster.sum() == 0:
        com_opt = None
    else:
        com_opt = float(sizes[int(np.argmax(nd_per_cluster))])

    return SpacefillFeatures(
        n_com=n_com,
        com_min=float(sizes.min()),
        com_med=lower_median(sizes),
        com_max=float(sizes.max()),
        opt_com_max=float(opt_com_max),
        com_opt=com_opt,
        rho_f=rho_f,
        corr_min=corr_min,
        corr_max=corr_max,
        rho_bound_opt=_boundary_share(nd, labels, model.is_core_),
        component_sizes=tuple(float(s) for s in sizes),
        noise_mass=float(np.sum(labels < 0) / n),
        n_feasible=n_feasible,
    )


def _boundary_share(nd: np.ndarray, labels: np.ndarray, is_core: np.ndarray) -> float | None:
    """Share of nondominated points that are border members of a cluster.

    Noise-labeled nondominated points stay in the denominator but can never
    count as border points. None when there are no nondominated points.
    """
    total = int(nd.sum())
    if total == 0:
        return None
    border = nd & (labels >= 0) & ~is_core
    return float(border.sum() / total)
