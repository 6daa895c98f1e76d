"""Feature-record schema, validation, and JSON round-trip tests."""

import json

import pytest

from cmopla.record import (
    FAMILY_KEYS,
    FEATURE_KEYS,
    SCHEMA_VERSION,
    FeatureRecord,
    load_records,
    utc_timestamp,
)

EXPECTED_KEYS = (
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
    "h_max",
    "eps_s",
    "m0",
    "rfb_min",
    "rfb_med",
    "rfb_max",
    "n_basin",
    "basin_min",
    "basin_med",
    "basin_max",
    "fbasin_min",
    "fbasin_med",
    "fbasin_max",
    "union_fbasin",
    "v_basin_med",
    "v_basin_max",
    "v_basin_of_max",
    "opt_basin_max",
    "basin_opt",
)


def full_features(**overrides):
    feats = {k: 0.5 for k in FEATURE_KEYS}
    feats["n_com"] = 3
    feats["n_basin"] = 2
    feats.update(overrides)
    return feats


def make_record(**kwargs):
    defaults = dict(
        problem="C2-DTLZ2",
        suite="C-DTLZ",
        dim=2,
        seed=7,
        params={"samples": 25000, "eps": 0.02},
        features=full_features(),
    )
    defaults.update(kwargs)
    return FeatureRecord(**defaults)


def test_feature_keys_exact_order():
    assert FEATURE_KEYS == EXPECTED_KEYS
    assert len(FEATURE_KEYS) == 29


def test_family_keys_partition_in_order():
    assert tuple(FAMILY_KEYS) == ("spacefill", "infocontent", "randomwalk", "adaptivewalk")
    assert tuple(len(v) for v in FAMILY_KEYS.values()) == (10, 3, 3, 13)
    flat = tuple(k for fam in FAMILY_KEYS.values() for k in fam)
    assert flat == FEATURE_KEYS
    assert len(set(flat)) == len(flat)


def test_round_trip_through_file(tmp_path):
    rec = make_record(created=utc_timestamp())
    path = rec.save(tmp_path / "rec.json")
    back = FeatureRecord.load(path)
    assert back == rec


def test_created_excluded_from_value_identity():
    a = make_record(created="2026-01-01T00:00:00+00:00")
    b = make_record(created="2026-02-02T00:00:00+00:00")
    assert a != b
    assert a.canonical_dict() == b.canonical_dict()
    assert "created" not in a.canonical_dict()


def test_from_families_partial_run_leaves_nulls():
    rec = FeatureRecord.from_families(
        problem="MW7",
        suite="MW",
        dim=2,
        seed=0,
        families={"infocontent": {"h_max": 0.7, "eps_s": 1.25, "m0": 0.4}},
    )
    non_null = [k for k, v in rec.features.items() if v is not None]
    assert non_null == ["h_max", "eps_s", "m0"]


def test_from_families_rejects_unknown_family():
    with pytest.raises(ValueError, match="unknown feature family"):
        FeatureRecord.from_families(
            problem="MW7", suite="MW", dim=2, seed=0, families={"walks": {}}
        )


def test_from_families_rejects_incomplete_family_slice():
    with pytest.raises(ValueError, match="infocontent"):
        FeatureRecord.from_families(
            problem="MW7",
            suite="MW",
            dim=2,
            seed=0,
            families={"infocontent": {"h_max": 0.7}},
        )


def test_missing_feature_key_is_named():
    feats = full_features()
    del feats["rho_f"]
    with pytest.raises(ValueError, match="rho_f"):
        make_record(features=feats)


def test_unknown_feature_key_is_named():
    with pytest.raises(ValueError, match="bogus"):
        make_record(features=full_features(bogus=1.0))


def test_non_finite_values_rejected():
    with pytest.raises(ValueError, match="h_max"):
        make_record(features=full_features(h_max=float("nan")))
    with pytest.raises(ValueError, match="rfb_max"):
        make_record(features=full_features(rfb_max=float("inf")))


def test_bool_is_not_a_feature_value():
    with pytest.raises(ValueError, match="rho_f"):
        make_record(features=full_features(rho_f=True))


def test_count_keys_coerced_to_int():
    rec = make_record(features=full_features(n_com=3.0))
    assert rec.features["n_com"] == 3
    assert isinstance(rec.features["n_com"], int)
    with pytest.raises(ValueError, match="n_basin"):
        make_record(features=full_features(n_basin=2.5))


def test_nulls_allowed_and_preserved():
    rec = make_record(features=full_features(eps_s=None, n_basin=None))
    assert rec.features["eps_s"] is None
    assert rec.features["n_basin"] is None


def test_features_stored_in_canonical_order():
    shuffled = dict(reversed(list(full_features().items())))
    rec = make_record(features=shuffled)
    assert tuple(rec.features) == FEATURE_KEYS


def test_json_text_layout(tmp_path):
    rec = make_record(features=full_features(eps_s=None))
    text = rec.to_json_text()
    data = json.loads(text)
    assert data["schema_version"] == SCHEMA_VERSION
    assert tuple(data["features"]) == FEATURE_KEYS
    assert data["features"]["eps_s"] is None
    assert '"n_com": 3' in text  # count serialized as an integer, not 3.0


def test_schema_version_mismatch_rejected():
    data = make_record().to_dict()
    data["schema_version"] = SCHEMA_VERSION + 1
    with pytest.raises(ValueError, match="schema_version"):
        FeatureRecord.from_dict(data)


def test_missing_required_field_rejected():
    data = make_record().to_dict()
    del data["seed"]
    with pytest.raises(ValueError, match="seed"):
        FeatureRecord.from_dict(data)


def test_invalid_json_file_reports_path(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ValueError, match="broken.json"):
        FeatureRecord.load(path)


def test_load_records_sorted_by_filename(tmp_path):
    make_record(problem="MW7", suite="MW").save(tmp_path / "b.json")
    make_record(problem="CTP1", suite="CTP").save(tmp_path / "a.json")
    recs = load_records(tmp_path)
    assert [r.problem for r in recs] == ["CTP1", "MW7"]


def test_load_records_missing_directory(tmp_path):
    with pytest.raises(ValueError, match="not found"):
        load_records(tmp_path / "nope")


def test_identity_field_validation():
    with pytest.raises(ValueError, match="dim"):
        make_record(dim=0)
    with pytest.raises(ValueError, match="seed"):
        make_record(seed=-1)
    with pytest.raises(ValueError, match="problem"):
        make_record(problem="")
