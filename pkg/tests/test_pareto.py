"""Nondominated filtering and dominance ratios against brute-force oracles."""

from __future__ import annotations

import numpy as np
import pytest

from oracles import brute_dominance_counts, brute_nondominated

from cmopla.pareto import (
    DominanceSummary,
    dominance_ratio,
    dominance_summary,
    nondominated_filter,
    nondominated_mask,
)
from cmopla.problems import get_problem
from cmopla.problems.base import EvaluatedPoints
from cmopla.sampling import grid


def _evaluated(f: np.ndarray, v: np.ndarray) -> EvaluatedPoints:
    f = np.asarray(f, dtype=float)
    v = np.asarray(v, dtype=float)
    x = np.zeros((len(f), 2))
    return EvaluatedPoints(x=x, f=f, g=v.reshape(-1, 1), v=v, is_feasible=v == 0.0)


def test_three_point_example():
    F = np.array([[1.0, 2.0], [2.0, 1.0], [2.0, 2.0]])
    np.testing.assert_array_equal(nondominated_mask(F), [True, True, False])


def test_single_point_is_nondominated():
    assert nondominated_mask(np.array([[3.0, 4.0]])).tolist() == [True]


def test_empty_input_gives_empty_mask():
    assert nondominated_mask(np.empty((0, 2))).shape == (0,)
    assert dominance_ratio(np.empty((0, 2))).shape == (0,)


def test_duplicates_are_mutually_nondominated():
    F = np.array([[1.0, 1.0], [1.0, 1.0], [2.0, 2.0]])
    np.testing.assert_array_equal(nondominated_mask(F), [True, True, False])
    np.testing.assert_allclose(dominance_ratio(F), [0.0, 0.0, 1.0])


@pytest.mark.parametrize("seed,m", [(0, 2), (1, 2), (2, 3), (3, 3), (4, 4)])
def test_mask_matches_brute_force(seed, m):
    rng = np.random.default_rng(seed)
    F = rng.random((200, m))
    F[50] = F[10]
    F = np.round(F, 1)
    np.testing.assert_array_equal(nondominated_mask(F), brute_nondominated(F))


@pytest.mark.parametrize("seed,m", [(5, 2), (6, 3)])
def test_ratio_matches_brute_force(seed, m):
    rng = np.random.default_rng(seed)
    F = np.round(rng.random((150, m)), 1)
    counts = brute_dominance_counts(F)
    np.testing.assert_allclose(dominance_ratio(F), counts / (len(F) - 1))


def test_ordered_chain_ratios():
    F = np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]])
    np.testing.assert_allclose(dominance_ratio(F), [0.0, 0.5, 1.0])


def test_incomparable_points_all_zero_ratio():
    F = np.column_stack([np.arange(20.0), -np.arange(20.0)])
    np.testing.assert_array_equal(dominance_ratio(F), np.zeros(20))
    assert nondominated_mask(F).all()


def test_filter_is_idempotent():
    rng = np.random.default_rng(11)
    F = rng.random((300, 2))
    mask = nondominated_mask(F)
    assert nondominated_mask(F[mask]).all()


def test_adding_dominated_point_changes_nothing():
    rng = np.random.default_rng(12)
    F = rng.random((100, 3))
    mask = nondominated_mask(F)
    extra = F[7] + 0.5
    F2 = np.vstack([F, extra])
    mask2 = nondominated_mask(F2)
    np.testing.assert_array_equal(mask2[:100], mask)
    assert not mask2[100]


def test_mask_equals_zero_ratio_invariant():
    rng = np.random.default_rng(13)
    F = np.round(rng.random((200, 2)), 1)
    np.testing.assert_array_equal(nondominated_mask(F), dominance_ratio(F) == 0.0)


def test_filter_feasible_only_excludes_infeasible():
    f = [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]
    v = [0.5, 0.0, 0.0]
    ev = _evaluated(f, v)
    mask = nondominated_filter(ev, feasible_only=True)
    # the infeasible point would dominate everything but is excluded
    assert mask.tolist() == [False, True, False]
    unconstrained = nondominated_filter(ev, feasible_only=False)
    assert unconstrained.tolist() == [True, False, False]


def test_filter_with_no_feasible_points_is_all_false():
    ev = _evaluated([[1.0, 2.0], [2.0, 1.0]], [0.3, 0.4])
    assert nondominated_filter(ev, feasible_only=True).tolist() == [False, False]


def test_filter_accepts_plain_arrays():
    F = np.array([[1.0, 2.0], [2.0, 1.0], [2.0, 2.0]])
    mask = nondominated_filter(F, feasible_only=False)
    assert mask.tolist() == [True, True, False]


def test_summary_fields_are_consistent():
    rng = np.random.default_rng(14)
    F = np.round(rng.random((120, 2)), 1)
    summary = dominance_summary(F)
    assert isinstance(summary, DominanceSummary)
    np.testing.assert_array_equal(
        summary.nondominated_mask, summary.dominance_ratio == 0.0
    )
    assert summary.dominance_ratio.min() >= 0.0
    assert summary.dominance_ratio.max() <= 1.0


def test_c2dtlz2_zero_ratio_set_is_the_center_line():
    prob = get_problem("C2-DTLZ2", 2)
    res = 101
    X = grid(res, prob.lower, prob.upper)
    F = prob.evaluate(X).f
    mask = nondominated_mask(F)
    # the unconstrained rank-zero set of the underlying objectives is the
    # horizontal line x2 = 0.5, which lies exactly on this grid
    line = X[:, 1] == 0.5
    np.testing.assert_array_equal(mask, line)
    ratios = dominance_ratio(F)
    np.testing.assert_array_equal(ratios == 0.0, line)


def test_biobjective_fast_path_matches_pairwise_scan():
    from hypothesis import given, settings
    from hypothesis import strategies as st

    from cmopla.pareto import (
        _dominator_counts_biobjective,
        _dominator_counts_pairwise,
    )

    @settings(max_examples=300, deadline=None)
    @given(
        st.lists(
            st.tuples(st.integers(0, 6), st.integers(0, 6)),
            min_size=1,
            max_size=40,
        )
    )
    def check(pairs):
        F = np.asarray(pairs, dtype=float) / 3.0  # coarse grid forces ties
        np.testing.assert_array_equal(
            _dominator_counts_biobjective(F), _dominator_counts_pairwise(F)
        )

    check()


def test_biobjective_fast_path_matches_on_problem_objectives():
    prob = get_problem("MW6", 2)
    rng = np.random.default_rng(21)
    F = prob.evaluate(rng.random((3000, 2))).f
    from cmopla.pareto import (
        _dominator_counts_biobjective,
        _dominator_counts_pairwise,
    )

    np.testing.assert_array_equal(
        _dominator_counts_biobjective(F), _dominator_counts_pairwise(F)
    )
