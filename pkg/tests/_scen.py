"""Helpers for loading the bundled scenario files with overrides."""

from __future__ import annotations

import copy
import sys
from functools import lru_cache
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from qvertex.scenario import Setup, parse_scenario

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"


def raw(name: str) -> dict:
    with open(SCENARIOS / f"{name}.toml", "rb") as fh:
        return tomllib.load(fh)


def scenario(name: str, **tables):
    """Parse a bundled scenario after merging ``tables`` into its top-level tables."""
    data = copy.deepcopy(raw(name))
    for key, val in tables.items():
        key = key.replace("_", "-") if key == "quasi_module" else key
        if isinstance(val, dict) and isinstance(data.get(key), dict):
            data[key] = {**data[key], **val}
        else:
            data[key] = val
    sc = parse_scenario(data)
    sc.path = str(SCENARIOS / f"{name}.toml")
    return sc


@lru_cache(maxsize=None)
def setup(name: str) -> Setup:
    """Shared, memoized build of a bundled scenario."""
    return Setup(scenario(name))


FAMILIES = ("twisted_affine_T2", "twisted_abelian_T2", "sublattice_k2", "quantum_heisenberg", "quantum_torus")
