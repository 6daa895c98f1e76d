"""MW problems 1-14, bi-objective configuration, unit box bounds.

Position variable x1 drives the front; the remaining variables feed one of
three distance functions.  Constraints carve bands, petals, and shells
around the front in objective space.  All constraints are reported in
g(x) <= 0 form.
"""

from __future__ import annotations

import numpy as np

from cmopla.problems.base import ProblemInstance

__all__ = ["make_mw", "MW_IDS"]

MW_IDS = tuple(f"MW{i}" for i in range(1, 15))


def _g1(X: np.ndarray) -> np.ndarray:
    # minimum 1 at x_i = (i-1)/(2n) for the distance variables i = 2..n
    n = X.shape[1]
    i = np.arange(2, n + 1, dtype=np.float64)
    z = X[:, 1:] - (i - 1.0) / (2.0 * n)
    return 1.0 + np.sum(1.0 - np.exp(-10.0 * z * z), axis=1)


def _g2(X: np.ndarray) -> np.ndarray:
    # minimum 1 at x_i = (i-1)/n for the distance variables i = 2..n
    n = X.shape[1]
    i = np.arange(2, n + 1, dtype=np.float64)
    z = X[:, 1:] - (i - 1.0) / n
    return 1.0 + np.sum(1.0 - np.exp(-10.0 * z * z), axis=1)


def _g2m(X: np.ndarray) -> np.ndarray:
    # multimodal variant of _g2: cosine ripples add local valleys along
    # each distance axis while keeping the global minimum 1 at z = 0
    n = X.shape[1]
    i = np.arange(2, n + 1, dtype=np.float64)
    z = X[:, 1:] - (i - 1.0) / n
    return 1.0 + np.sum((0.1 / n) * z * z + 1.5 - 1.5 * np.cos(8.0 * np.pi * z), axis=1)


def _g3(X: np.ndarray) -> np.ndarray:
    # minimum 1 along the parabolic sheet x_i = 1 - (x_{i-1} - 0.5)^2
    return 1.0 + np.sum(2.0 * (X[:, 1:] + (X[:, :-1] - 0.5) ** 2 - 1.0) ** 2, axis=1)


def _mw1(X):
    g = _g1(X)
    f1 = X[:, 0]
    f2 = g * (1.0 - 0.85 * f1 / g)
    l = np.sqrt(2.0) * f2 - np.sqrt(2.0) * f1
    G1 = f1 + f2 - 1.0 - 0.5 * np.sin(2.0 * np.pi * l) ** 8
    return np.column_stack([f1, f2]), G1.reshape(-1, 1), None


def _mw2(X):
    g = _g2(X)
    f1 = X[:, 0]
    f2 = g * (1.0 - f1 / g)
    l = np.sqrt(2.0) * f2 - np.sqrt(2.0) * f1
    G1 = f1 + f2 - 1.0 - 0.5 * np.sin(3.0 * np.pi * l) ** 8
    return np.column_stack([f1, f2]), G1.reshape(-1, 1), None


def _mw3(X):
    g = _g3(X)
    f1 = X[:, 0]
    f2 = g * (1.0 - f1 / g)
    l = np.sqrt(2.0) * f2 - np.sqrt(2.0) * f1
    G1 = f1 + f2 - 1.05 - 0.45 * np.sin(0.75 * np.pi * l) ** 6
    G2 = 0.85 - f1 - f2 + 0.3 * np.sin(0.75 * np.pi * l) ** 2
    return np.column_stack([f1, f2]), np.column_stack([G1, G2]), None


def _mw4(X):
    g = _g1(X)
    f1 = g * X[:, 0]
    f2 = g * (1.0 - X[:, 0])
    l = f2 - f1
    G1 = f1 + f2 - 1.0 - 0.4 * np.sin(2.5 * np.pi * l) ** 8
    return np.column_stack([f1, f2]), G1.reshape(-1, 1), None


def _mw5(X):
    g = _g1(X)
    f1 = g * X[:, 0]
    f2 = g * np.sqrt(np.maximum(1.0 - (f1 / g) ** 2, 0.0))
    l1 = np.arctan2(f2, f1)
    l2 = 0.5 * np.pi - l1
    r2 = f1 * f1 + f2 * f2
    G1 = r2 - (1.7 - 0.2 * np.sin(2.0 * l1)) ** 2
    G2 = (1.0 + 0.5 * np.sin(6.0 * l1**3)) ** 2 - r2
    G3 = (1.0 - 0.45 * np.sin(6.0 * l2**3)) ** 2 - r2
    return np.column_stack([f1, f2]), np.column_stack([G1, G2, G3]), None


def _mw6(X):
    g = _g2m(X)
    f1 = g * X[:, 0] * 1.0999
    f2 = g * np.sqrt(np.maximum(1.21 - (f1 / g) ** 2, 0.0))
    l = np.cos(3.3 * np.arctan2(f2, f1) ** 4) ** 10
    G1 = (f1 / (1.0 + 0.15 * l)) ** 2 + (f2 / (1.0 + 0.75 * l)) ** 2 - 1.0
    return np.column_stack([f1, f2]), G1.reshape(-1, 1), None


def _mw7(X):
    g = _g3(X)
    f1 = g * X[:, 0]
    f2 = g * np.sqrt(np.maximum(1.0 - (f1 / g) ** 2, 0.0))
    phi = np.arctan2(f2, f1)
    r2 = f1 * f1 + f2 * f2
    G1 = r2 - (1.2 + 0.4 * np.sin(4.0 * phi) ** 16) ** 2
    G2 = (1.15 - 0.2 * np.sin(4.0 * phi) ** 8) ** 2 - r2
    return np.column_stack([f1, f2]), np.column_stack([G1, G2]), None


def _mw8(X):
    g = _g2(X)
    theta = 0.5 * np.pi * X[:, 0]
    f1 = g * np.cos(theta)
    f2 = g * np.sin(theta)
    r2 = f1 * f1 + f2 * f2
    psi = np.arcsin(np.clip(f2 / np.sqrt(r2), -1.0, 1.0))
    G1 = r2 - (1.25 - 0.5 * np.sin(6.0 * psi) ** 3) ** 2
    return np.column_stack([f1, f2]), G1.reshape(-1, 1), None


def _mw9(X):
    g = _g1(X)
    f1 = g * np.power(X[:, 0], 0.6)
    f2 = g * np.power(1.0 - X[:, 0], 0.6)
    t1 = (1.0 - 0.64 * f1 * f1 - f2) * (1.0 - 0.36 * f1 * f1 - f2)
    t2 = (1.35**2 - (f1 + 0.35) ** 2 - f2) * (1.15**2 - (f1 + 0.15) ** 2 - f2)
    G1 = np.minimum(t1, t2)
    return np.column_stack([f1, f2]), G1.reshape(-1, 1), None


def _mw10(X):
    g = _g2(X)
    f1 = g * np.power(X[:, 0], 2)
    f2 = g * (1.0 - (f1 / g) ** 2)
    G1 = -(2.0 - 4.0 * f1 * f1 - f2) * (2.0 - 8.0 * f1 * f1 - f2)
    G2 = (2.0 - 2.0 * f1 * f1 - f2) * (2.0 - 16.0 * f1 * f1 - f2)
    G3 = (1.0 - f1 * f1 - f2) * (1.2 - 1.2 * f1 * f1 - f2)
    return np.column_stack([f1, f2]), np.column_stack([G1, G2, G3]), None


def _mw11(X):
    g = _g3(X)
    f1 = g * X[:, 0] * np.sqrt(2.0)
    f2 = g * np.sqrt(np.maximum(2.0 - (f1 / g) ** 2, 0.0))
    r2 = f1 * f1 + f2 * f2
    G1 = -(3.0 - f1 * f1 - f2) * (3.0 - 2.0 * f1 * f1 - f2)
    G2 = (3.0 - 0.625 * f1 * f1 - f2) * (3.0 - 7.0 * f1 * f1 - f2)
    G3 = -(1.62 - 0.18 * f1 * f1 - f2) * (1.125 - 0.125 * f1 * f1 - f2)
    G4 = (2.25 - 0.49 * f1 * f1 - f2) * (2.25 - 4.0 * f1 * f1 - f2)
    return np.column_stack([f1, f2]), np.column_stack([G1, G2, G3, G4]), None


def _mw12(X):
    g = _g1(X)
    f1 = g * X[:, 0]
    f2 = g * (0.85 - 0.8 * (f1 / g) - 0.08 * np.abs(np.sin(3.2 * np.pi * (f1 / g))))
    G1 = (1.0 - 0.8 * f1 - f2 + 0.08 * np.sin(2.0 * np.pi * (f2 - f1 / 1.5))) * (
        1.8 - 1.125 * f1 - f2 + 0.08 * np.sin(2.0 * np.pi * (f2 / 1.8 - f1 / 1.6))
    )
    G2 = -(1.0 - 0.625 * f1 - f2 + 0.08 * np.sin(2.0 * np.pi * (f2 - f1 / 1.6))) * (
        1.4 - 0.875 * f1 - f2 + 0.08 * np.sin(2.0 * np.pi * (f2 / 1.4 - f1 / 1.6))
    )
    return np.column_stack([f1, f2]), np.column_stack([G1, G2]), None


def _mw13(X):
    g = _g2(X)
    f1 = g * 1.5 * X[:, 0]
    f2 = g * (5.0 - np.exp(f1 / g) - 0.5 * np.abs(np.sin(3.0 * np.pi * f1 / g)))
    G1 = (5.0 - np.exp(f1) - 0.5 * np.sin(3.0 * np.pi * f1) - f2) * (
        5.0 - (1.0 + 0.4 * f1) - 0.5 * np.sin(3.0 * np.pi * f1) - f2
    )
    G2 = -(5.0 - (1.0 + f1 + 0.5 * f1 * f1) - 0.5 * np.sin(3.0 * np.pi * f1) - f2) * (
        5.0 - (1.0 + 0.7 * f1) - 0.5 * np.sin(3.0 * np.pi * f1) - f2
    )
    return np.column_stack([f1, f2]), np.column_stack([G1, G2]), None


def _mw14(X):
    g = _g3(X)
    f1 = X[:, 0]
    f2 = g * (6.0 - np.exp(f1) - 1.5 * np.sin(1.1 * np.pi * f1 * f1))
    G1 = 6.1 - 1.15 * f1 - f2
    return np.column_stack([f1, f2]), G1.reshape(-1, 1), None


_DEFS = {
    "MW1": (_mw1, 1),
    "MW2": (_mw2, 1),
    "MW3": (_mw3, 2),
    "MW4": (_mw4, 1),
    "MW5": (_mw5, 3),
    "MW6": (_mw6, 1),
    "MW7": (_mw7, 2),
    "MW8": (_mw8, 1),
    "MW9": (_mw9, 1),
    "MW10": (_mw10, 3),
    "MW11": (_mw11, 4),
    "MW12": (_mw12, 2),
    "MW13": (_mw13, 2),
    "MW14": (_mw14, 1),
}


def make_mw(pid: str, dim: int) -> ProblemInstance:
    fn, n_ieq = _DEFS[pid]
    upper = np.ones(dim)
    if pid in ("MW13", "MW14"):
        upper[0] = 1.0  # front parameter already rescaled inside the evaluator
    return ProblemInstance(
        id=pid,
        suite="MW",
        dim=dim,
        n_obj=2,
        n_ieq=n_ieq,
        n_eq=0,
        lower=np.zeros(dim),
        upper=upper,
        fn=fn,
    )
