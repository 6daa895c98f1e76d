"""DAS-CMOP problems 1-9 with an adjustable difficulty triplet.

The triplet (eta, zeta, gamma) tunes diversity, feasibility, and
convergence hardness.  The registry uses (0.5, 0.5, 0.5).  Problems 1-6
are bi-objective with 11 constraints: one sine term over x1, one band over
the distance value g, and nine rotated-ellipse exclusions in objective
space.  Problems 7-9 are tri-objective with 7 constraints (one sine term,
one g band, five spherical exclusions).  All constraints are reported in
g(x) <= 0 form.
"""

from __future__ import annotations

import numpy as np

from cmopla.problems.base import ProblemInstance

__all__ = ["make_dascmop", "DASCMOP_IDS", "DEFAULT_TRIPLET"]

DASCMOP_IDS = tuple(f"DAS-CMOP{i}" for i in range(1, 10))
DEFAULT_TRIPLET = (0.5, 0.5, 0.5)

# objective-space exclusion centers for the bi-objective problems
_PK = np.array([0.0, 1.0, 0.0, 1.0, 2.0, 0.0, 1.0, 2.0, 3.0])
_QK = np.array([1.5, 0.5, 2.5, 1.5, 0.5, 3.5, 2.5, 1.5, 0.5])
_AK2 = 0.3
_BK2 = 1.2
_THETA = -0.25 * np.pi


def _difficulty(triplet):
    eta, zeta, gamma = triplet
    a = 20.0
    b = 2.0 * eta - 1.0
    d = 0.5 if zeta > 0 else 0.0
    e = d - np.log(zeta) if zeta > 0 else 1e30
    r = 0.5 * gamma
    return a, b, d, e, r


def _curve(x1: np.ndarray) -> np.ndarray:
    return np.cos(0.5 * np.pi * x1)


def _g_sum(X: np.ndarray) -> np.ndarray:
    # squared distance to the curve through the position variable
    s = _curve(X[:, 0:1])
    return np.sum((X[:, 1:] - s) ** 2, axis=1)


def _g_sum_multi(X: np.ndarray) -> np.ndarray:
    # multimodal counterpart used by problems 4-6
    z = X[:, 1:] - _curve(X[:, 0:1])
    return np.sum(z * z - np.cos(20.0 * np.pi * z) + 1.0, axis=1)


def _constraints_2d(x1, f1, f2, g, triplet):
    a, b, d, e, r = _difficulty(triplet)
    # feasible: |sin(a pi x1)| >= b; vacuous at the default eta
    cols = [b - np.abs(np.sin(a * np.pi * x1))]
    cols.append((e - g) * (g - d))  # feasible: g <= d or g >= e
    df1 = f1[:, None] - _PK[None, :]
    df2 = f2[:, None] - _QK[None, :]
    c, s = np.cos(_THETA), np.sin(_THETA)
    e1 = (df1 * c - df2 * s) ** 2 / _AK2 + (df1 * s + df2 * c) ** 2 / _BK2
    cols.append(r - e1)  # feasible: outside each ellipse
    return np.column_stack([np.asarray(col).reshape(len(x1), -1) for col in cols])


def _make_biobj(front, gfun):
    def fn(X: np.ndarray, triplet):
        g = gfun(X)
        x1 = X[:, 0]
        f1 = x1 + g
        f2 = front(x1) + g
        G = _constraints_2d(x1, f1, f2, g, triplet)
        return np.column_stack([f1, f2]), G, None

    return fn


def _make_triobj(gfun):
    # objective-space exclusion centers along the tri-objective front
    centers = np.array(
        [
            [1.0, 1.0, 1.0],
            [0.0, 1.5, 1.5],
            [1.5, 0.0, 1.5],
            [1.5, 1.5, 0.0],
            [0.8, 0.8, 1.6],
        ]
    )

    def fn(X: np.ndarray, triplet):
        a, b, d, e, r = _difficulty(triplet)
        g = gfun(X)
        x1 = X[:, 0]
        x2 = X[:, 1]
        f1 = np.cos(0.5 * np.pi * x1) * np.cos(0.5 * np.pi * x2) + g
        f2 = np.cos(0.5 * np.pi * x1) * np.sin(0.5 * np.pi * x2) + g
        f3 = np.sin(0.5 * np.pi * x1) + g
        F = np.column_stack([f1, f2, f3])
        cols = [b - np.abs(np.sin(a * np.pi * x1)), (e - g) * (g - d)]
        d2 = ((F[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        cols.append(r - d2)
        G = np.column_stack([np.asarray(col).reshape(len(x1), -1) for col in cols])
        return F, G, None

    return fn


def _g_sum3(X: np.ndarray) -> np.ndarray:
    s = _curve(X[:, 0:1])
    return np.sum((X[:, 2:] - s) ** 2, axis=1)


def _g_sum3_multi(X: np.ndarray) -> np.ndarray:
    z = X[:, 2:] - _curve(X[:, 0:1])
    return np.sum(z * z - np.cos(20.0 * np.pi * z) + 1.0, axis=1)


_FRONTS = {
    1: lambda x1: 1.0 - x1 * x1,
    2: lambda x1: 1.0 - np.sqrt(x1),
    3: lambda x1: 1.0 - np.sqrt(x1) + 0.5 * np.abs(np.sin(5.0 * np.pi * x1)),
}

_DEFS = {}
for _i in (1, 2, 3):
    _DEFS[f"DAS-CMOP{_i}"] = (_make_biobj(_FRONTS[_i], _g_sum), 2, 11)
for _i in (4, 5, 6):
    _DEFS[f"DAS-CMOP{_i}"] = (_make_biobj(_FRONTS[_i - 3], _g_sum_multi), 2, 11)
_DEFS["DAS-CMOP7"] = (_make_triobj(_g_sum3), 3, 7)
_DEFS["DAS-CMOP8"] = (_make_triobj(_g_sum3), 3, 7)
_DEFS["DAS-CMOP9"] = (_make_triobj(_g_sum3_multi), 3, 7)


def make_dascmop(pid: str, dim: int, triplet=DEFAULT_TRIPLET) -> ProblemInstance:
    fn, n_obj, n_ieq = _DEFS[pid]
    triplet = tuple(float(t) for t in triplet)

    def bound_fn(X, _fn=fn, _t=triplet):
        return _fn(X, _t)

    return ProblemInstance(
        id=pid,
        suite="DAS-CMOP",
        dim=dim,
        n_obj=n_obj,
        n_ieq=n_ieq,
        n_eq=0,
        lower=np.zeros(dim),
        upper=np.ones(dim),
        fn=bound_fn,
    )
