"""Constrained multiobjective problem abstraction and violation model.

A problem minimizes M objectives over a box-bounded search space subject to
I inequality constraints g_i(x) <= 0 and J equality constraints h_j(x) = 0.
Equalities are relaxed to inequalities |h_j(x)| - eta <= 0 with a tolerance
eta, after which the overall constraint violation of a point is

    v(x) = sum_i max(0, g_i(x))

over all I+J transformed constraints.  A point is feasible iff v(x) == 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from cmopla.validation import check_array_2d, check_in_bounds

__all__ = ["ProblemInstance", "EvaluatedPoints", "dominates"]

# Vectorized evaluator: X (n, D) -> (F (n, M), G (n, I) or None, H (n, J) or None)
EvalFn = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray | None, np.ndarray | None]]


@dataclass(frozen=True)
class EvaluatedPoints:
    """Batch of evaluated points.

    Attributes
    ----------
    x : ndarray, shape (n, D)
        Search vectors.
    f : ndarray, shape (n, M)
        Objective values.
    g : ndarray, shape (n, I+J)
        Constraint values in inequality form; equality constraints appear
        already transformed to |h| - eta.
    v : ndarray, shape (n,)
        Overall constraint violation, sum of positive parts of g rows.
    is_feasible : ndarray of bool, shape (n,)
        True exactly where v == 0.
    """

    x: np.ndarray
    f: np.ndarray
    g: np.ndarray
    v: np.ndarray
    is_feasible: np.ndarray

    def __len__(self) -> int:
        return self.x.shape[0]

    def point(self, i: int) -> "EvaluatedPoints":
        """Return the i-th point as a length-1 batch."""
        sl = slice(i, i + 1)
        return EvaluatedPoints(self.x[sl], self.f[sl], self.g[sl], self.v[sl], self.is_feasible[sl])


@dataclass(frozen=True)
class ProblemInstance:
    """Immutable problem definition plus its vectorized evaluator.

    Evaluations are pure: the same input matrix always produces bitwise
    identical outputs, which the caching and reproducibility guarantees
    rely on.
    """

    id: str
    suite: str
    dim: int
    n_obj: int
    n_ieq: int
    n_eq: int
    lower: np.ndarray
    upper: np.ndarray
    eta: float = 1e-4
    fn: EvalFn = field(repr=False, default=None)

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=np.float64)
        upper = np.asarray(self.upper, dtype=np.float64)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if lower.shape != (self.dim,) or upper.shape != (self.dim,):
            raise ValueError(f"bounds must have shape ({self.dim},)")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        if self.eta <= 0:
            raise ValueError(f"eta must be positive, got {self.eta}")

    @property
    def n_constraints(self) -> int:
        """Total number of constraints after equality transformation."""
        return self.n_ieq + self.n_eq

    @property
    def range(self) -> np.ndarray:
        return self.upper - self.lower

    def evaluate(self, X) -> EvaluatedPoints:
        """Evaluate points, enforcing dimension and bounds.

        Out-of-bounds input is an error rather than being clamped; every
        sampler in the package generates in-bounds points by construction.
        """
        X = check_array_2d(X, name="X")
        check_in_bounds(X, self.lower, self.upper, name="X")
        F, G, H = self.fn(X)
        F = np.asarray(F, dtype=np.float64)
        if F.shape != (X.shape[0], self.n_obj):
            raise ValueError(f"evaluator returned objectives of shape {F.shape}")
        parts = []
        if self.n_ieq:
            G = np.asarray(G, dtype=np.float64)
            if G.shape != (X.shape[0], self.n_ieq):
                raise ValueError(f"evaluator returned inequalities of shape {G.shape}")
            parts.append(G)
        if self.n_eq:
            H = np.asarray(H, dtype=np.float64)
            if H.shape != (X.shape[0], self.n_eq):
                raise ValueError(f"evaluator returned equalities of shape {H.shape}")
            parts.append(np.abs(H) - self.eta)
        if parts:
            Gall = np.hstack(parts) if len(parts) > 1 else parts[0]
        else:
            Gall = np.zeros((X.shape[0], 0))
        v = np.maximum(Gall, 0.0).sum(axis=1)
        return EvaluatedPoints(x=X, f=F, g=Gall, v=v, is_feasible=v == 0.0)

    def violation(self, X) -> np.ndarray:
        """Shortcut returning only the overall constraint violation."""
        return self.evaluate(X).v

    def describe(self) -> dict:
        """JSON-ready metadata: id, suite, D, M, constraint counts, bounds."""
        return {
            "id": self.id,
            "suite": self.suite,
            "dim": self.dim,
            "n_obj": self.n_obj,
            "n_constraints": self.n_constraints,
            "n_ieq": self.n_ieq,
            "n_eq": self.n_eq,
            "lower": self.lower.tolist(),
            "upper": self.upper.tolist(),
            "eta": self.eta,
        }


def dominates(fa: np.ndarray, fb: np.ndarray, a_feasible: bool = True) -> bool:
    """Pareto dominance with a feasible dominator.

    True iff ``a`` is feasible, f_m(a) <= f_m(b) for every objective and
    the inequality is strict for at least one.
    """
    fa = np.asarray(fa, dtype=np.float64).ravel()
    fb = np.asarray(fb, dtype=np.float64).ravel()
    if fa.shape != fb.shape:
        raise ValueError(f"objective vectors differ in length: {fa.shape} vs {fb.shape}")
    if not a_feasible:
        return False
    return bool(np.all(fa <= fb) and np.any(fa < fb))
