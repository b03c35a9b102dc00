"""Versioned golden fixtures.

Asymptotic bounds hide constants that cannot be known a priori, so harness
runs record the observed ratios once and regression-test against the frozen
values afterwards.  Regeneration requires the explicit ``--bless`` flag,
which prints old vs new values before rewriting the file.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

FIXTURES_VERSION = 1
_FIXTURE_NAME = "golden.json"

THEOREM_RATIO = "theorem_ratio"
H4_RATIO = "h4_ratio"
H4PRIME_NORMALIZED = "h4prime_normalized"

_FAMILIES = (THEOREM_RATIO, H4_RATIO, H4PRIME_NORMALIZED)


def default_path() -> Path:
    return Path(resources.files("bmvt") / "fixtures" / _FIXTURE_NAME)


def theorem_key(case: str, x: float, Q: float) -> str:
    return f"{case}:x={x:g},Q={Q:g}"


def h4_key(f_name: str, V1: float, V2: float, V: float) -> str:
    return f"{f_name}:V1={V1:.6g},V2={V2:.6g},V={V:g}"


def empty_goldens() -> dict:
    return {"version": FIXTURES_VERSION, **{fam: {} for fam in _FAMILIES}}


def load_goldens(path: Path | str | None = None) -> dict:
    p = Path(path) if path is not None else default_path()
    if not p.exists():
        return empty_goldens()
    with open(p) as fh:
        data = json.load(fh)
    if data.get("version") != FIXTURES_VERSION:
        raise ValueError(f"{p}: fixtures version {data.get('version')} unsupported")
    for fam in _FAMILIES:
        data.setdefault(fam, {})
    return data


def save_goldens(data: dict, path: Path | str | None = None) -> Path:
    p = Path(path) if path is not None else default_path()
    p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return p


def bless(data: dict, family: str, updates: dict, *, echo=print) -> dict:
    """Merge freshly computed values into one family, reporting changes."""
    fam = data.setdefault(family, {})
    for key, new in sorted(updates.items()):
        old = fam.get(key)
        if old is None:
            echo(f"bless {family}[{key}]: (new) {new!r}")
        elif old != new:
            echo(f"bless {family}[{key}]: {old!r} -> {new!r}")
        fam[key] = new
    return data
