"""Nondominated filtering and dominance-ratio computation over point sets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_BLOCK = 2048

__all__ = [
    "DominanceSummary",
    "dominance_ratio",
    "dominance_summary",
    "nondominated_filter",
    "nondominated_mask",
]


@dataclass(frozen=True)
class DominanceSummary:
    """Per-point dominance structure of one set of objective vectors.

    ``nondominated_mask[i]`` is true exactly when ``dominance_ratio[i] == 0``
    because both are computed over the same set.
    """

    nondominated_mask: np.ndarray
    dominance_ratio: np.ndarray


def _objectives(points) -> np.ndarray:
    f = getattr(points, "f", None)
    arr = np.asarray(points if f is None else f, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"objective array must be 2-D, got shape {arr.shape}")
    return arr


def nondominated_mask(F: np.ndarray) -> np.ndarray:
    """Boolean mask of points not dominated by any other point in F.

    A point dominates another when it is no worse in every objective and
    strictly better in at least one; duplicates never dominate each other.
    Points are processed in lexicographic order, where a dominator can only
    precede the points it dominates, so one forward pass over an archive of
    survivors is exact.
    """
    F = np.asarray(F, dtype=float)
    n = len(F)
    if n == 0:
        return np.zeros(0, dtype=bool)
    order = np.lexsort(F.T[::-1])
    Fs = F[order]
    keep = np.zeros(n, dtype=bool)
    archive = np.empty((0, F.shape[1]))
    for s in range(0, n, _BLOCK):
        B = Fs[s : s + _BLOCK]
        alive = np.ones(len(B), dtype=bool)
        for t in range(0, len(archive), _BLOCK):
            A = archive[t : t + _BLOCK]
            le = (A[None, :, :] <= B[:, None, :]).all(axis=2)
            eq = (A[None, :, :] == B[:, None, :]).all(axis=2)
            alive &= ~(le & ~eq).any(axis=1)
            if not alive.any():
                break
        idx = np.flatnonzero(alive)
        if len(idx):
            Ba = B[idx]
            le = (Ba[:, None, :] <= Ba[None, :, :]).all(axis=2)
            eq = (Ba[:, None, :] == Ba[None, :, :]).all(axis=2)
            dom = le & ~eq
            dom &= np.triu(np.ones(dom.shape, dtype=bool), k=1)
            alive[idx[dom.any(axis=0)]] = False
        if alive.any():
            archive = np.vstack([archive, B[alive]])
        keep[order[s : s + len(B)]] = alive
    return keep


def _dominator_counts_pairwise(F: np.ndarray) -> np.ndarray:
    counts = np.zeros(len(F), dtype=np.int64)
    for s in range(0, len(F), _BLOCK):
        B = F[s : s + _BLOCK]
        for t in range(0, len(F), _BLOCK):
            C = F[t : t + _BLOCK]
            le = (C[None, :, :] <= B[:, None, :]).all(axis=2)
            eq = (C[None, :, :] == B[:, None, :]).all(axis=2)
            counts[s : s + len(B)] += le.sum(axis=1) - eq.sum(axis=1)
    return counts


def _dominator_counts_biobjective(F: np.ndarray) -> np.ndarray:
    # A point's dominators are the points at or below it in both
    # objectives, minus its exact duplicates.  Over unique rows in
    # lexicographic order that is a weighted count of earlier rows with
    # second objective at or below mine, which a Fenwick tree over the
    # dense second-objective ranks answers in O(n log n).
    uniq, inverse, weight = np.unique(
        F, axis=0, return_inverse=True, return_counts=True
    )
    rank2 = np.searchsorted(np.unique(uniq[:, 1]), uniq[:, 1]) + 1
    size = int(rank2.max())
    tree = np.zeros(size + 1, dtype=np.int64)
    out = np.empty(len(uniq), dtype=np.int64)
    for k in range(len(uniq)):
        i = int(rank2[k])
        total = 0
        while i > 0:
            total += tree[i]
            i -= i & (-i)
        out[k] = total
        i = int(rank2[k])
        w = int(weight[k])
        while i <= size:
            tree[i] += w
            i += i & (-i)
    return out[inverse]


def dominance_ratio(points) -> np.ndarray:
    """Fraction of other points dominating each point, ignoring feasibility.

    Bi-objective inputs use an exact sort-and-count path in O(n log n);
    other objective counts fall back to the full pairwise scan in
    fixed-size blocks, exact but quadratic in the point count.
    """
    F = _objectives(points)
    n = len(F)
    if n <= 1:
        return np.zeros(n)
    if F.shape[1] == 2:
        counts = _dominator_counts_biobjective(F)
    else:
        counts = _dominator_counts_pairwise(F)
    return counts / (n - 1)


def nondominated_filter(points, feasible_only: bool) -> np.ndarray:
    """Mask of points not dominated within the considered set.

    With ``feasible_only`` the considered set is the feasible subset and
    infeasible points are masked false; otherwise all points are compared on
    objectives alone. Plain objective arrays are treated as all feasible.
    """
    F = _objectives(points)
    feasible = getattr(points, "is_feasible", None)
    if feasible is None:
        feasible = np.ones(len(F), dtype=bool)
    mask = np.zeros(len(F), dtype=bool)
    if feasible_only:
        sub = np.flatnonzero(feasible)
        if len(sub):
            mask[sub] = nondominated_mask(F[sub])
    else:
        mask = nondominated_mask(F)
    return mask


def dominance_summary(points) -> DominanceSummary:
    """Dominance ratios plus the implied rank-zero mask for one point set."""
    ratio = dominance_ratio(points)
    return DominanceSummary(nondominated_mask=ratio == 0.0, dominance_ratio=ratio)
