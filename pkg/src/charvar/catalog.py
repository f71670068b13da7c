"""Shipped example arrangements, cosets and reference matrices.

File arguments are resolved against the working directory first and then
against the bundled ``fixtures`` directory, so ``fixtures/deleted-b3.json``,
``deleted-b3.json`` and ``deleted-b3`` all name the same file.
"""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

from .arrangement import Arrangement, ArrangementError, intersection_data, parse_arrangement
from .symbolic import LaurentMatrix, parse_laurent
from .varieties.depth import CharModel, build_model
from .varieties.torus import TorusCoset
from .varieties.translated import Pattern

FIXTURE_DIR = Path(__file__).resolve().parent / "fixtures"


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.json"))


def resolve(name: str | Path) -> Path:
    p = Path(name)
    if p.is_file():
        return p
    for cand in (FIXTURE_DIR / p.name, FIXTURE_DIR / f"{p.name}.json"):
        if cand.is_file():
            return cand
    raise FileNotFoundError(f"no such file or fixture: {name}")


def load_json(name: str | Path) -> dict:
    with open(resolve(name)) as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def _fixture(name: str) -> dict:
    return load_json(name)


def load_fixture(name: str) -> dict:
    """Fixture dict (cached; treat as read-only)."""
    return _fixture(name)


def load_arrangement(source: str) -> tuple[Arrangement, dict]:
    """Arrangement from a file, a fixture name, or a literal list of forms.

    Returns the arrangement and the raw JSON (empty for literal forms).
    """
    try:
        data = load_json(source)
    except FileNotFoundError:
        if not any(c in source for c in "xyz"):
            raise
        arr = parse_arrangement(source)
        return arr.relabel(range(arr.n), [str(i + 1) for i in range(arr.n)]), {}
    if "forms" not in data:
        raise ArrangementError(f"{source} does not describe an arrangement")
    return parse_arrangement(data), data


def load_coset(source: str | dict) -> TorusCoset:
    data = source if isinstance(source, dict) else load_json(source)
    return TorusCoset.from_json(data)


def model_from(arr: Arrangement, data: dict | None = None, decone_at: int | None = None,
               direction=None, fibered: bool | None = None, block: bool = False) -> CharModel:
    """Model with the fixture's stored choices unless overridden.

    ``decone_at`` is 1-based here, matching the hyperplane numbering.
    """
    stored = (data or {}).get("model", {})
    h = decone_at if decone_at is not None else stored.get("decone_at")
    if direction is None:
        direction = stored.get("direction")
    if fibered is None:
        fibered = bool(stored.get("fibered", False))
    if h is not None and not 1 <= h <= arr.n:
        raise ArrangementError(f"decone hyperplane {h} out of range 1..{arr.n}")
    return build_model(arr, None if h is None else h - 1, direction, fibered=fibered, block=block)


def fixture_model(name: str) -> CharModel:
    arr, data = load_arrangement(name)
    return model_from(arr, data)


def deleted_b3_pattern() -> Pattern:
    """The default search pattern: the deleted B3 flats with its coset C."""
    arr, _ = load_arrangement("deleted-b3")
    return Pattern("deleted-b3", intersection_data(arr), (load_coset("coset-C.json"),))


def pattern_from(arr_source: str, coset_sources: list[str]) -> Pattern:
    arr, data = load_arrangement(arr_source)
    return Pattern(data.get("id", arr_source), intersection_data(arr),
                   tuple(load_coset(c) for c in coset_sources))


def reference_matrix(name: str = "deleted-b3-alexander.json") -> tuple[LaurentMatrix, dict]:
    data = load_json(name)
    vs = tuple(data["variables"])
    rows = [[parse_laurent(c, vs) for c in r] for r in data["rows"]]
    return LaurentMatrix(rows, vs), data
