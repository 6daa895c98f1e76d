"""CTP problems 1-8.

f1 = x1 with x1 in [0, 1]; the remaining variables feed a Rastrigin-style
distance function g with minimum 1 at x_i = 0, x_i in [-5, 5].

CTP1 uses J exponential constraints whose (a_j, b_j) parameters come from
the published recursive bisection procedure.  CTP2-8 use the angle
parameterized constraint

    cos(theta) (f2 - e) - sin(theta) f1 >=
        a * |sin(b pi (sin(theta) (f2 - e) + cos(theta) f1)^c)|^d

with the published per-problem parameter table; CTP8 combines two of them.
"""

from __future__ import annotations

import numpy as np

from cmopla.problems.base import ProblemInstance

__all__ = ["make_ctp", "ctp1_params", "CTP_IDS"]

CTP_IDS = tuple(f"CTP{i}" for i in range(1, 9))

# (theta, a, b, c, d, e) per constraint
_CTP_PARAMS = {
    "CTP2": [(-0.2 * np.pi, 0.2, 10.0, 1.0, 6.0, 1.0)],
    "CTP3": [(-0.2 * np.pi, 0.1, 10.0, 1.0, 0.5, 1.0)],
    "CTP4": [(-0.2 * np.pi, 0.75, 10.0, 1.0, 0.5, 1.0)],
    "CTP5": [(-0.2 * np.pi, 0.1, 10.0, 2.0, 0.5, 1.0)],
    "CTP6": [(0.1 * np.pi, 40.0, 0.5, 1.0, 2.0, -2.0)],
    "CTP7": [(-0.05 * np.pi, 40.0, 5.0, 1.0, 6.0, 0.0)],
    "CTP8": [
        (0.1 * np.pi, 40.0, 0.5, 1.0, 2.0, -2.0),
        (-0.05 * np.pi, 40.0, 2.0, 1.0, 6.0, 0.0),
    ],
}


def ctp1_params(n_constraints: int = 2) -> list[tuple[float, float]]:
    """Compute CTP1 (a_j, b_j) by the published recursive procedure."""
    a, b = 1.0, 1.0
    delta = 1.0 / (n_constraints + 1.0)
    x = delta
    out = []
    for _ in range(n_constraints):
        y = a * np.exp(-b * x)
        a = 0.5 * (a + y)
        b = -np.log(y / a) / x
        out.append((a, b))
        x += delta
    return out


def _g_rastrigin(Xm: np.ndarray) -> np.ndarray:
    k = Xm.shape[1]
    return 1.0 + 10.0 * k + np.sum(Xm * Xm - 10.0 * np.cos(2.0 * np.pi * Xm), axis=1)


def _make_ctp1_fn(params: list[tuple[float, float]]):
    def fn(X: np.ndarray):
        g = _g_rastrigin(X[:, 1:])
        f1 = X[:, 0]
        f2 = g * np.exp(-f1 / g)
        F = np.column_stack([f1, f2])
        G = np.column_stack([a * np.exp(-b * f1) - f2 for a, b in params])
        return F, G, None

    return fn


def _make_ctp_angle_fn(params):
    def fn(X: np.ndarray):
        g = _g_rastrigin(X[:, 1:])
        f1 = X[:, 0]
        f2 = g * (1.0 - f1 / g)
        F = np.column_stack([f1, f2])
        cols = []
        for theta, a, b, c, d, e in params:
            lhs = np.cos(theta) * (f2 - e) - np.sin(theta) * f1
            t = np.sin(theta) * (f2 - e) + np.cos(theta) * f1
            rhs = a * np.abs(np.sin(b * np.pi * np.power(t, c))) ** d
            cols.append(rhs - lhs)
        return F, np.column_stack(cols), None

    return fn


def make_ctp(pid: str, dim: int) -> ProblemInstance:
    if pid == "CTP1":
        fn = _make_ctp1_fn(ctp1_params(2))
        n_ieq = 2
    else:
        params = _CTP_PARAMS[pid]
        fn = _make_ctp_angle_fn(params)
        n_ieq = len(params)
    lower = np.full(dim, -5.0)
    upper = np.full(dim, 5.0)
    lower[0], upper[0] = 0.0, 1.0
    return ProblemInstance(
        id=pid,
        suite="CTP",
        dim=dim,
        n_obj=2,
        n_ieq=n_ieq,
        n_eq=0,
        lower=lower,
        upper=upper,
        fn=fn,
    )
