"""Registry of built-in problems keyed by id, constructed per dimension."""

from __future__ import annotations

from cmopla.problems.base import ProblemInstance
from cmopla.problems.ctdlz import CTDLZ_IDS, make_ctdlz
from cmopla.problems.ctp import CTP_IDS, make_ctp
from cmopla.problems.dascmop import DASCMOP_IDS, make_dascmop
from cmopla.problems.mw import MW_IDS, make_mw

__all__ = ["registry", "get_problem", "problem_ids", "suites", "SUPPORTED_DIMS"]

SUPPORTED_DIMS = (2, 3, 4, 5)

_FACTORIES = {}
for _pid in CTDLZ_IDS:
    _FACTORIES[_pid] = make_ctdlz
for _pid in MW_IDS:
    _FACTORIES[_pid] = make_mw
for _pid in DASCMOP_IDS:
    _FACTORIES[_pid] = make_dascmop
for _pid in CTP_IDS:
    _FACTORIES[_pid] = make_ctp


def problem_ids() -> list[str]:
    return list(_FACTORIES)


def suites() -> dict[str, list[str]]:
    """Map suite name to its problem ids, preserving registration order."""
    out: dict[str, list[str]] = {}
    for pid in _FACTORIES:
        suite = get_problem(pid, 2).suite
        out.setdefault(suite, []).append(pid)
    return out


def get_problem(pid: str, dim: int, **kwargs) -> ProblemInstance:
    """Construct a registered problem at the requested dimension.

    Unknown ids and unsupported dimensions raise KeyError/ValueError with
    the offending value named.
    """
    if pid not in _FACTORIES:
        matches = [k for k in _FACTORIES if k.lower() == str(pid).lower()]
        if matches:
            pid = matches[0]
        else:
            raise KeyError(f"unknown problem id {pid!r}; known ids: {', '.join(_FACTORIES)}")
    dim = int(dim)
    if dim < 2:
        raise ValueError(f"dimension must be at least 2, got {dim}")
    return _FACTORIES[pid](pid, dim, **kwargs)


def registry() -> dict[str, dict]:
    """Describe every registered problem at D=2 as JSON-ready metadata."""
    return {pid: get_problem(pid, 2).describe() for pid in _FACTORIES}
