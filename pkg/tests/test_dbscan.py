"""Density clustering: exactness against brute-force and flood-fill oracles."""

from __future__ import annotations

import numpy as np
import pytest

from oracles import brute_dbscan, flood_fill_components

from cmopla.dbscan import DBSCAN, neighbor_query
from cmopla.problems import get_problem
from cmopla.sampling import grid


def test_two_tight_groups_give_two_clusters_no_noise():
    rng = np.random.default_rng(0)
    a = rng.normal(0.0, 0.003, (10, 2))
    b = rng.normal(0.5, 0.003, (10, 2))
    X = np.vstack([a, b])
    model = DBSCAN(eps=0.02, min_samples=5).fit(X)
    assert model.n_clusters_ == 2
    assert np.all(model.labels_ >= 0)
    assert len(set(model.labels_[:10])) == 1
    assert len(set(model.labels_[10:])) == 1


def test_isolated_points_below_core_threshold_are_noise():
    X = np.array([[0.0, 0.0], [0.5, 0.5], [1.0, 1.0]])
    model = DBSCAN(eps=0.02, min_samples=5).fit(X)
    assert model.n_clusters_ == 0
    assert np.all(model.labels_ == -1)
    assert not model.is_core_.any()


def test_empty_input_gives_empty_labeling():
    model = DBSCAN(eps=0.1, min_samples=5).fit(np.empty((0, 2)))
    assert model.labels_.shape == (0,)
    assert model.is_core_.shape == (0,)
    assert model.n_clusters_ == 0


def test_single_point_with_min_samples_one_is_its_own_cluster():
    model = DBSCAN(eps=0.1, min_samples=1).fit(np.array([[0.3, 0.3]]))
    assert model.n_clusters_ == 1
    assert model.labels_.tolist() == [0]
    assert model.is_core_.tolist() == [True]


def test_core_points_have_min_samples_neighbors_within_eps():
    rng = np.random.default_rng(4)
    X = rng.random((300, 2))
    eps, ms = 0.08, 5
    model = DBSCAN(eps=eps, min_samples=ms).fit(X)
    d2 = np.sum((X[:, None] - X[None, :]) ** 2, axis=2)
    counts = (d2 <= eps * eps).sum(axis=1)
    np.testing.assert_array_equal(model.is_core_, counts >= ms)


def test_clusters_with_cores_every_nonnoise_cluster_has_a_core():
    rng = np.random.default_rng(8)
    X = rng.random((400, 2)) * 0.3
    model = DBSCAN(eps=0.03, min_samples=5).fit(X)
    for k in range(model.n_clusters_):
        members = model.labels_ == k
        assert members.any()
        assert model.is_core_[members].any()


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
def test_matches_brute_force_dbscan_exactly(seed):
    rng = np.random.default_rng(seed)
    centers = rng.random((4, 2))
    X = np.vstack([c + rng.normal(0, 0.02, (40, 2)) for c in centers])
    X = np.vstack([X, rng.random((30, 2))])
    model = DBSCAN(eps=0.035, min_samples=5).fit(X)
    labels, core = brute_dbscan(X, 0.035, 5)
    np.testing.assert_array_equal(model.is_core_, core)
    np.testing.assert_array_equal(model.labels_, labels)


@pytest.mark.parametrize("dim", [1, 2, 3, 4])
def test_matches_brute_force_in_higher_dimensions(dim):
    rng = np.random.default_rng(10 + dim)
    X = rng.random((250, dim))
    eps = 0.12 if dim >= 3 else 0.06
    model = DBSCAN(eps=eps, min_samples=5).fit(X)
    labels, core = brute_dbscan(X, eps, 5)
    np.testing.assert_array_equal(model.is_core_, core)
    np.testing.assert_array_equal(model.labels_, labels)


def test_partition_is_stable_under_input_permutation():
    rng = np.random.default_rng(3)
    X = np.vstack(
        [
            rng.normal(0.2, 0.01, (50, 2)),
            rng.normal(0.8, 0.01, (50, 2)),
        ]
    )
    perm = rng.permutation(len(X))
    a = DBSCAN(eps=0.05, min_samples=5).fit(X)
    b = DBSCAN(eps=0.05, min_samples=5).fit(X[perm])
    assert a.n_clusters_ == b.n_clusters_ == 2
    partition_a = {frozenset(np.flatnonzero(a.labels_ == k)) for k in range(2)}
    partition_b = {
        frozenset(perm[np.flatnonzero(b.labels_ == k)]) for k in range(2)
    }
    assert partition_a == partition_b


def test_fit_is_deterministic():
    rng = np.random.default_rng(6)
    X = rng.random((500, 3))
    a = DBSCAN(eps=0.15, min_samples=5).fit(X)
    b = DBSCAN(eps=0.15, min_samples=5).fit(X)
    np.testing.assert_array_equal(a.labels_, b.labels_)
    np.testing.assert_array_equal(a.is_core_, b.is_core_)


def test_neighbor_query_isolated_point_returns_only_itself():
    X = np.array([[0.0, 0.0], [1.0, 1.0]])
    assert neighbor_query(X, 0, 0.1).tolist() == [0]


def test_neighbor_query_duplicates_return_both():
    X = np.array([[0.5, 0.5], [0.5, 0.5], [0.9, 0.9]])
    assert neighbor_query(X, 0, 0.01).tolist() == [0, 1]
    assert neighbor_query(X, 1, 0.01).tolist() == [0, 1]


def test_neighbor_query_collinear_points_inclusive_distance():
    # spacing 0.125 is exactly representable, so the boundary pair sits at
    # distance exactly eps and must be included
    X = np.column_stack([np.arange(10) * 0.125, np.zeros(10)])
    inner = neighbor_query(X, 5, 0.125)
    assert inner.tolist() == [4, 5, 6]
    edge = neighbor_query(X, 0, 0.125)
    assert edge.tolist() == [0, 1]


def test_border_point_goes_to_cluster_discovered_first():
    # two vertical 5-point stacks whose middles are the only core points;
    # one extra point touches both middles at distance exactly eps, so it is
    # a border point reachable from both clusters and the ascending scan
    # order means cluster 0 claims it
    ys = np.arange(5) * 0.05
    left = np.column_stack([np.zeros(5), ys])
    right = np.column_stack([np.full(5, 0.24), ys])
    shared = np.array([[0.12, 0.1]])
    X = np.vstack([left, right, shared])
    model = DBSCAN(eps=0.12, min_samples=5).fit(X)
    assert model.is_core_.tolist() == [
        False, False, True, False, False,
        False, False, True, False, False,
        False,
    ]
    assert model.n_clusters_ == 2
    assert model.labels_[:5].tolist() == [0] * 5
    assert model.labels_[5:10].tolist() == [1] * 5
    assert model.labels_[10] == 0


def test_grid_feasibility_mask_components_match_flood_fill():
    prob = get_problem("MW7", 2)
    res = 101
    X = grid(res, prob.lower, prob.upper)
    feasible = prob.evaluate(X).is_feasible
    mask = feasible.reshape(res, res)
    pitch = 1.0 / (res - 1)
    model = DBSCAN(eps=1.5 * pitch, min_samples=1).fit(X[feasible])
    assert model.n_clusters_ == flood_fill_components(mask)


def test_parameter_validation():
    with pytest.raises(ValueError, match="eps"):
        DBSCAN(eps=0.0, min_samples=5).fit(np.zeros((3, 2)))
    with pytest.raises(ValueError, match="min_samples"):
        DBSCAN(eps=0.1, min_samples=0).fit(np.zeros((3, 2)))


def test_estimator_params_roundtrip():
    model = DBSCAN(eps=0.04, min_samples=7)
    assert model.get_params() == {"eps": 0.04, "min_samples": 7}
    model.set_params(eps=0.12)
    assert model.eps == 0.12
    with pytest.raises(ValueError, match="invalid parameter"):
        model.set_params(bogus=1)
