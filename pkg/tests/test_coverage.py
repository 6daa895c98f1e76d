"""Normalization and coverage-matrix tests, including the hand-derived cells."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmopla.coverage import (
    CoverageMatrix,
    coverage,
    coverage_matrix,
    feature_bounds,
    normalize_features,
    normalize_value,
    read_coverage_csv,
    write_bounds_audit,
    write_coverage_csv,
)
from cmopla.record import FEATURE_KEYS, FeatureRecord


def make_record(problem, suite, *, dim=2, seed=0, **feature_overrides):
    feats = {k: 0.5 for k in FEATURE_KEYS}
    feats["n_com"] = 1
    feats["n_basin"] = 1
    feats.update(feature_overrides)
    return FeatureRecord(
        problem=problem, suite=suite, dim=dim, seed=seed, features=feats
    )


# --- normalization -----------------------------------------------------------


def test_min_max_normalization_of_three_values():
    records = [
        make_record("A1", "A", rho_f=2.0),
        make_record("A2", "A", rho_f=4.0),
        make_record("B1", "B", rho_f=6.0),
    ]
    normalized, bounds, excluded = normalize_features(records)
    assert [r.features["rho_f"] for r in normalized] == [0.0, 0.5, 1.0]
    assert bounds["rho_f"] == (2.0, 6.0)
    assert excluded == []


def test_constant_feature_maps_to_midpoint():
    records = [
        make_record("A1", "A", h_max=3.0),
        make_record("A2", "A", h_max=3.0),
        make_record("B1", "B", h_max=3.0),
    ]
    normalized, _, _ = normalize_features(records)
    assert [r.features["h_max"] for r in normalized] == [0.5, 0.5, 0.5]


def test_null_stays_null():
    records = [
        make_record("A1", "A", eps_s=None),
        make_record("B1", "B", eps_s=1.0),
        make_record("B2", "B", eps_s=3.0),
    ]
    normalized, _, excluded = normalize_features(records)
    assert normalized[0].features["eps_s"] is None
    assert normalized[1].features["eps_s"] == 0.0
    assert "eps_s" not in excluded


def test_entirely_null_feature_flagged_and_excluded():
    records = [
        make_record("A1", "A", basin_opt=None),
        make_record("B1", "B", basin_opt=None),
    ]
    _, bounds, excluded = normalize_features(records)
    assert excluded == ["basin_opt"]
    assert bounds["basin_opt"] is None
    matrix = coverage_matrix(records)
    assert "basin_opt" not in matrix.features
    assert matrix.excluded == ("basin_opt",)


def test_normalize_value_degenerate_and_null():
    assert normalize_value(None, (0.0, 1.0)) is None
    assert normalize_value(3.0, None) is None
    assert normalize_value(3.0, (3.0, 3.0)) == 0.5
    assert normalize_value(2.5, (2.0, 4.0)) == 0.25


def test_no_records_rejected():
    with pytest.raises(ValueError, match="no records"):
        feature_bounds([])


# --- the coverage statistic --------------------------------------------------


def test_superset_candidate_scores_one():
    assert coverage([0.2, 0.8], [0.2, 0.8, 0.5]) == 1.0


def test_unit_distance_scores_zero():
    assert coverage([0.0], [1.0]) == 0.0


def test_hand_evaluated_half_cell():
    # targets {0, 1}, candidate {0.5}: both nearest distances are 0.5
    assert coverage([0.0, 1.0], [0.5]) == pytest.approx(0.5, abs=1e-15)


def test_empty_sides_are_undefined():
    assert coverage([], [0.5]) is None
    assert coverage([0.5], []) is None
    assert coverage([None], [0.5]) is None
    assert coverage([0.5], [None]) is None


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.floats(0, 1, width=32), min_size=1, max_size=8),
    st.lists(st.floats(0, 1, width=32), min_size=1, max_size=8),
    st.floats(0, 1, width=32),
)
def test_coverage_monotone_in_candidate_set(T, S, extra):
    base = coverage(T, S)
    grown = coverage(T, S + [extra])
    assert grown >= base - 1e-12


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.floats(0, 1, width=32), min_size=1, max_size=8),
    st.lists(st.floats(0, 1, width=32), min_size=1, max_size=8),
)
def test_coverage_bounded_for_unit_interval_values(T, S):
    value = coverage(T, S)
    assert 0.0 <= value <= 1.0


# --- the matrix --------------------------------------------------------------


def suite_fixture():
    return [
        make_record("A1", "A", rho_f=0.1, h_max=2.0),
        make_record("A2", "A", rho_f=0.3, h_max=4.0),
        make_record("B1", "B", rho_f=0.9, h_max=3.0),
        make_record("C1", "C", rho_f=0.5, h_max=6.0),
    ]


def test_target_suite_fully_covers_itself():
    matrix = coverage_matrix(suite_fixture(), target="A")
    for key in matrix.features:
        assert matrix.cell(key, "A") == 1.0


def test_single_point_candidate_is_mean_distance():
    records = suite_fixture()
    matrix = coverage_matrix(records, target="A")
    # rho_f normalized over union (0.1..0.9): A -> {0, 0.25}, B -> {1.0}
    expected = 1.0 - np.mean([1.0 - 0.0, 1.0 - 0.25])
    assert matrix.cell("rho_f", "B") == pytest.approx(expected, abs=1e-15)


def test_union_target_includes_every_suite():
    matrix = coverage_matrix(suite_fixture(), target="all")
    assert matrix.suites == ("A", "B", "C")
    assert matrix.target == "all"
    # the union target contains each suite's own values, so no column is null
    for row in matrix.cells:
        assert all(v is not None for v in row)


def test_matrix_requires_two_suites():
    records = [make_record("A1", "A"), make_record("A2", "A")]
    with pytest.raises(ValueError, match="2 suites"):
        coverage_matrix(records)


def test_unknown_target_suite_rejected():
    with pytest.raises(ValueError, match="NOPE"):
        coverage_matrix(suite_fixture(), target="NOPE")


def test_affine_rescaling_leaves_matrix_unchanged():
    base = coverage_matrix(suite_fixture())
    rescaled_records = []
    for r in suite_fixture():
        feats = dict(r.features)
        feats["h_max"] = 3.0 * feats["h_max"] + 7.0
        rescaled_records.append(
            FeatureRecord(
                problem=r.problem, suite=r.suite, dim=r.dim, seed=r.seed, features=feats
            )
        )
    rescaled = coverage_matrix(rescaled_records)
    assert rescaled.features == base.features
    for key in base.features:
        for suite in base.suites:
            assert rescaled.cell(key, suite) == pytest.approx(
                base.cell(key, suite), abs=1e-12
            )


# --- files -------------------------------------------------------------------


def test_csv_round_trip(tmp_path):
    records = [
        make_record("A1", "A", eps_s=None),
        make_record("B1", "B", eps_s=None),
        make_record("B2", "B", rho_f=0.9),
    ]
    matrix = coverage_matrix(records)
    path = write_coverage_csv(matrix, tmp_path / "coverage.csv")
    back = read_coverage_csv(path)
    assert back.features == matrix.features
    assert back.suites == matrix.suites
    for key in matrix.features:
        for suite in matrix.suites:
            a, b = matrix.cell(key, suite), back.cell(key, suite)
            if a is None:
                assert b is None
            else:
                assert b == pytest.approx(a, abs=1e-11)


def test_bounds_audit_file(tmp_path):
    records = [
        make_record("A1", "A", basin_opt=None),
        make_record("B1", "B", basin_opt=None, rho_f=0.8),
    ]
    _, bounds, excluded = normalize_features(records)
    path = write_bounds_audit(bounds, excluded, tmp_path / "bounds.json")
    import json

    data = json.loads(path.read_text())
    assert data["excluded"] == ["basin_opt"]
    assert data["bounds"]["basin_opt"] is None
    assert data["bounds"]["rho_f"] == {"min": 0.5, "max": 0.8}


def test_read_rejects_non_coverage_csv(tmp_path):
    path = tmp_path / "other.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError, match="coverage CSV"):
        read_coverage_csv(path)
