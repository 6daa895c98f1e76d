"""Feature records: the named feature vector for one problem at one dimension.

A record carries the full 29-feature vector together with the run
parameters that produced it, and round-trips through versioned JSON.
The creation timestamp is provenance only: two records with the same
values are the same measurement regardless of when they were written,
so every value-identity helper excludes it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .validation import check_positive_int

SCHEMA_VERSION = 1

FAMILY_KEYS: dict[str, tuple[str, ...]] = {
    "spacefill": (
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
    ),
    "infocontent": ("h_max", "eps_s", "m0"),
    "randomwalk": ("rfb_min", "rfb_med", "rfb_max"),
    "adaptivewalk": (
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
    ),
}

FEATURE_KEYS: tuple[str, ...] = tuple(
    key for family in FAMILY_KEYS.values() for key in family
)

_INT_KEYS = frozenset({"n_com", "n_basin"})


def utc_timestamp() -> str:
    """Current UTC time as a second-resolution ISO-8601 string."""
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _check_feature_value(key: str, value):
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"feature {key!r} must be a number or None, got {value!r}")
    value = float(value)
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError(f"feature {key!r} must be finite or None, got {value!r}")
    if key in _INT_KEYS:
        if value != int(value):
            raise ValueError(f"feature {key!r} must be an integer count, got {value!r}")
        return int(value)
    return value


@dataclass(frozen=True)
class FeatureRecord:
    """One problem's feature vector plus the parameters that produced it."""

    problem: str
    suite: str
    dim: int
    seed: int
    params: dict = field(default_factory=dict)
    features: dict = field(default_factory=dict)
    created: str | None = None

    def __post_init__(self):
        if not isinstance(self.problem, str) or not self.problem:
            raise ValueError(f"problem must be a non-empty string, got {self.problem!r}")
        if not isinstance(self.suite, str) or not self.suite:
            raise ValueError(f"suite must be a non-empty string, got {self.suite!r}")
        check_positive_int(self.dim, name="dim")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed!r}")
        extra = set(self.features) - set(FEATURE_KEYS)
        if extra:
            raise ValueError(f"unknown feature keys: {sorted(extra)}")
        missing = [k for k in FEATURE_KEYS if k not in self.features]
        if missing:
            raise ValueError(f"missing feature keys: {missing}")
        ordered = {k: _check_feature_value(k, self.features[k]) for k in FEATURE_KEYS}
        object.__setattr__(self, "features", ordered)
        object.__setattr__(self, "params", dict(self.params))

    @classmethod
    def from_families(
        cls,
        *,
        problem: str,
        suite: str,
        dim: int,
        seed: int,
        params: dict | None = None,
        families: dict | None = None,
        created: str | None = None,
    ) -> "FeatureRecord":
        """Assemble a record from per-family feature dicts.

        ``families`` maps family name to that family's feature dict (as
        produced by each family's ``feature_dict()``); families left out
        contribute nulls, so a partial run still yields a full record.
        """
        features: dict = {k: None for k in FEATURE_KEYS}
        for name, values in (families or {}).items():
            if name not in FAMILY_KEYS:
                raise ValueError(f"unknown feature family: {name!r}")
            expected = set(FAMILY_KEYS[name])
            if set(values) != expected:
                raise ValueError(
                    f"family {name!r} must supply exactly its keys "
                    f"{sorted(expected)}, got {sorted(values)}"
                )
            features.update(values)
        return cls(
            problem=problem,
            suite=suite,
            dim=dim,
            seed=seed,
            params=dict(params or {}),
            features=features,
            created=created,
        )

    def canonical_dict(self) -> dict:
        """Value identity: every field except the creation timestamp."""
        return {
            "schema_version": SCHEMA_VERSION,
            "problem": self.problem,
            "suite": self.suite,
            "dim": self.dim,
            "seed": self.seed,
            "params": dict(self.params),
            "features": dict(self.features),
        }

    def to_dict(self) -> dict:
        out = self.canonical_dict()
        out["created"] = self.created
        return out

    def to_json_text(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    def save(self, path) -> Path:
        path = Path(path)
        path.write_text(self.to_json_text())
        return path

    @classmethod
    def from_dict(cls, data: dict) -> "FeatureRecord":
        if not isinstance(data, dict):
            raise ValueError(f"record must be a JSON object, got {type(data).__name__}")
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(
                f"unsupported schema_version: {version!r} (expected {SCHEMA_VERSION})"
            )
        required = ("problem", "suite", "dim", "seed", "features")
        for key in required:
            if key not in data:
                raise ValueError(f"record is missing required field {key!r}")
        return cls(
            problem=data["problem"],
            suite=data["suite"],
            dim=data["dim"],
            seed=data["seed"],
            params=data.get("params") or {},
            features=data["features"],
            created=data.get("created"),
        )

    @classmethod
    def load(cls, path) -> "FeatureRecord":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path} is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


def load_records(directory) -> list[FeatureRecord]:
    """Load every ``*.json`` record in a directory, sorted by filename."""
    directory = Path(directory)
    if not directory.is_dir():
        raise ValueError(f"records directory not found: {directory}")
    return [FeatureRecord.load(p) for p in sorted(directory.glob("*.json"))]
