"""Space-filling-design features: component structure and rank correlations."""

from __future__ import annotations

import dataclasses
import math

import numpy as np
import pytest

from conftest import make_two_valleys, make_unconstrained, make_violation_transforms
from oracles import spearman_distinct

from cmopla.defaults import (
    ADAPTIVE_SAMPLE_SIZE,
    CLUSTER_EPS,
    SAMPLE_SIZE,
    default_plan,
)
from cmopla.features import spacefill_features, spearman
from cmopla.problems import get_problem
from cmopla.sampling import SamplePlan


def small_plan(n: int = 3000, seed: int = 0, dim: int = 2) -> SamplePlan:
    return SamplePlan(kind="latin-hypercube", n=n, seed=seed, dim=dim)


# --- spearman -----------------------------------------------------------


def test_spearman_identity_is_one():
    a = np.array([3.0, 1.0, 4.0, 1.5, 9.0])
    assert spearman(a, a) == 1.0


def test_spearman_reversed_is_minus_one():
    a = np.array([3.0, 1.0, 4.0, 1.5, 9.0])
    assert abs(spearman(a, -a) + 1.0) < 1e-12


def test_spearman_hand_computed_example():
    r = spearman(np.array([1.0, 2.0, 3.0, 4.0]), np.array([1.0, 3.0, 2.0, 4.0]))
    assert abs(r - 0.8) < 1e-12


def test_spearman_tie_handling_uses_average_ranks():
    r = spearman(np.array([1.0, 2.0, 2.0, 4.0]), np.array([1.0, 2.0, 3.0, 4.0]))
    assert abs(r - math.sqrt(0.9)) < 1e-12


def test_spearman_zero_rank_variance_is_none():
    assert spearman(np.ones(5), np.arange(5.0)) is None
    assert spearman(np.arange(5.0), np.full(5, 2.0)) is None


def test_spearman_rejects_bad_lengths():
    with pytest.raises(ValueError):
        spearman(np.arange(3.0), np.arange(4.0))
    with pytest.raises(ValueError):
        spearman(np.array([1.0]), np.array([2.0]))


@pytest.mark.parametrize("seed", range(5))
def test_spearman_matches_distinct_value_formula(seed):
    rng = np.random.default_rng(seed)
    a = rng.permutation(40).astype(float)
    b = rng.permutation(40).astype(float)
    assert abs(spearman(a, b) - spearman_distinct(a, b)) < 1e-12


# --- component features -------------------------------------------------


def test_c2dtlz2_has_three_feasible_components():
    prob = get_problem("C2-DTLZ2", 2)
    feats = spacefill_features(prob, default_plan(2, seed=7))
    assert feats.n_com == 3
    assert feats.com_min <= feats.com_med <= feats.com_max


def test_unconstrained_problem_is_one_full_component():
    prob = make_unconstrained()
    feats = spacefill_features(prob, small_plan(), eps=0.05)
    assert feats.rho_f == 1.0
    assert feats.n_com == 1
    assert feats.com_max == 1.0
    assert feats.com_min == feats.com_med == feats.com_max
    # violation is identically zero so rank correlations are undefined
    assert feats.corr_min is None
    assert feats.corr_max is None


def test_component_sizes_account_for_all_feasible_mass():
    prob = get_problem("MW6", 2)
    plan = default_plan(2, seed=3)
    feats = spacefill_features(prob, plan)
    total = feats.noise_mass
    for size in feats.component_sizes:
        total += size
    assert abs(total - feats.rho_f) < 1e-12
    assert feats.rho_f == feats.n_feasible / plan.n


def test_zero_feasible_points_yield_sentinels_but_correlations():
    prob = make_two_valleys()
    feats = spacefill_features(prob, small_plan())
    assert feats.rho_f == 0.0
    assert feats.n_com == 0
    assert feats.com_min is None
    assert feats.com_med is None
    assert feats.com_max is None
    assert feats.opt_com_max is None
    assert feats.com_opt is None
    assert feats.rho_bound_opt is None
    assert feats.corr_min is not None
    assert feats.corr_max is not None


def test_monotone_transforms_of_violation_pin_correlations():
    prob = make_violation_transforms()
    feats = spacefill_features(prob, small_plan())
    assert abs(feats.corr_max - 1.0) < 1e-12
    assert abs(feats.corr_min + 1.0) < 1e-12


def test_com_opt_is_one_of_the_component_sizes():
    prob = get_problem("C2-DTLZ2", 2)
    feats = spacefill_features(prob, default_plan(2, seed=1))
    assert any(abs(feats.com_opt - s) < 1e-15 for s in feats.component_sizes)
    assert 0.0 <= feats.opt_com_max <= 1.0
    assert 0.0 <= feats.rho_bound_opt <= 1.0


def test_feature_dict_has_exactly_the_ten_keys_in_order():
    prob = make_unconstrained()
    feats = spacefill_features(prob, small_plan(n=500), eps=0.1)
    assert list(feats.feature_dict()) == [
        "n_com",
        "com_min",
        "com_med",
        "com_max",
        "opt_com_max",
        "com_opt",
        "rho_f",
        "corr_min",
        "corr_max",
        "rho_bound_opt",
    ]


def test_features_are_deterministic():
    prob = get_problem("MW7", 2)
    plan = small_plan(n=4000, seed=5)
    a = spacefill_features(prob, plan)
    b = spacefill_features(prob, plan)
    assert dataclasses.asdict(a) == dataclasses.asdict(b)


def test_experimental_defaults_tables():
    assert SAMPLE_SIZE == {2: 25000, 3: 100000, 4: 250000, 5: 250000}
    assert CLUSTER_EPS == {2: 0.02, 3: 0.04, 4: 0.12, 5: 0.12}
    assert ADAPTIVE_SAMPLE_SIZE == {2: 10000, 3: 25000, 4: 50000, 5: 50000}
    plan = default_plan(3, seed=11)
    assert (plan.kind, plan.n, plan.seed, plan.dim) == (
        "latin-hypercube",
        100000,
        11,
        3,
    )
