"""Problem definitions: abstraction, violation model, and built-in suites."""

from cmopla.problems.base import EvaluatedPoints, ProblemInstance, dominates
from cmopla.problems.registry import (
    SUPPORTED_DIMS,
    get_problem,
    problem_ids,
    registry,
    suites,
)

__all__ = [
    "EvaluatedPoints",
    "ProblemInstance",
    "dominates",
    "get_problem",
    "problem_ids",
    "registry",
    "suites",
    "SUPPORTED_DIMS",
]
