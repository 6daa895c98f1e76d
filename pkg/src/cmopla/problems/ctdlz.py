"""Constrained DTLZ variants (C-DTLZ and DC-DTLZ), bi-objective configuration.

Objective bases follow the DTLZ family with k = D - 1 distance variables;
constraints follow the published constrained variants.  All constraints are
reported in g(x) <= 0 form.
"""

from __future__ import annotations

import numpy as np

from cmopla.problems.base import ProblemInstance

__all__ = ["make_ctdlz", "CTDLZ_IDS"]

CTDLZ_IDS = ("C1-DTLZ1", "C2-DTLZ2", "C3-DTLZ4", "DC1-DTLZ1")


def _g_dtlz1(Xm: np.ndarray) -> np.ndarray:
    k = Xm.shape[1]
    z = Xm - 0.5
    return 100.0 * (k + np.sum(z * z - np.cos(20.0 * np.pi * z), axis=1))


def _g_dtlz2(Xm: np.ndarray) -> np.ndarray:
    z = Xm - 0.5
    return np.sum(z * z, axis=1)


def _f_dtlz1(X: np.ndarray) -> np.ndarray:
    g = _g_dtlz1(X[:, 1:])
    f1 = 0.5 * X[:, 0] * (1.0 + g)
    f2 = 0.5 * (1.0 - X[:, 0]) * (1.0 + g)
    return np.column_stack([f1, f2])


def _f_dtlz2(X: np.ndarray, alpha: float = 1.0) -> np.ndarray:
    g = _g_dtlz2(X[:, 1:])
    theta = 0.5 * np.pi * np.power(X[:, 0], alpha)
    f1 = (1.0 + g) * np.cos(theta)
    f2 = (1.0 + g) * np.sin(theta)
    return np.column_stack([f1, f2])


def _c1_dtlz1(X: np.ndarray):
    F = _f_dtlz1(X)
    # feasible: f2/0.6 + f1/0.5 <= 1
    G = (F[:, 1] / 0.6 + F[:, 0] / 0.5 - 1.0).reshape(-1, 1)
    return F, G, None


def _c2_dtlz2(X: np.ndarray):
    F = _f_dtlz2(X)
    M = F.shape[1]
    r = 0.2 if M == 2 else (0.4 if M == 3 else 0.5)
    # feasible: within radius r of one of the M axis poles e_i or the
    # central point (1/sqrt(M), ..., 1/sqrt(M)) on the unit sphere
    sq = F * F
    total = sq.sum(axis=1)
    pole = np.min(total[:, None] - sq + (F - 1.0) ** 2, axis=1) - r * r
    center = np.sum((F - 1.0 / np.sqrt(M)) ** 2, axis=1) - r * r
    G = np.minimum(pole, center).reshape(-1, 1)
    return F, G, None


def _c3_dtlz4(X: np.ndarray):
    F = _f_dtlz2(X, alpha=100.0)
    sq = F * F
    total = sq.sum(axis=1)
    # feasible outside each ellipsoid: f_i^2/4 + sum_{j != i} f_j^2 >= 1
    G = 1.0 - (sq / 4.0 + (total[:, None] - sq))
    return F, G, None


def _dc1_dtlz1(X: np.ndarray):
    F = _f_dtlz1(X)
    G = (0.5 - np.cos(3.0 * np.pi * X[:, 0])).reshape(-1, 1)
    return F, G, None


_DEFS = {
    "C1-DTLZ1": (_c1_dtlz1, 1),
    "C2-DTLZ2": (_c2_dtlz2, 1),
    "C3-DTLZ4": (_c3_dtlz4, 2),
    "DC1-DTLZ1": (_dc1_dtlz1, 1),
}


def make_ctdlz(pid: str, dim: int) -> ProblemInstance:
    fn, n_ieq = _DEFS[pid]
    return ProblemInstance(
        id=pid,
        suite="C-DTLZ" if pid.startswith("C") else "DC-DTLZ",
        dim=dim,
        n_obj=2,
        n_ieq=n_ieq,
        n_eq=0,
        lower=np.zeros(dim),
        upper=np.ones(dim),
        fn=fn,
    )
