"""Golden Gram matrices of classical perfect forms.

Shipped as a versioned JSON data file; every entry is re-verified in the
test suite (perfection, minimum, minimal-vector count) rather than
trusted.  `a_form(d)` builds the d-dimensional form with 2 on the
diagonal and 1 elsewhere for any d; it seeds the neighbor walk.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .forms import QuadForm

__all__ = ["CatalogEntry", "a_form", "get", "names", "entries"]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    form: QuadForm
    expected_lambda1: int
    expected_min_count: int


def a_form(d: int) -> QuadForm:
    """Gram matrix with 2 on the diagonal and 1 off it (perfect in all d)."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return QuadForm.from_rows(
        [[2 if i == j else 1 for j in range(d)] for i in range(d)]
    )


def _load() -> dict[str, CatalogEntry]:
    raw = json.loads(
        resources.files("perfectforms").joinpath("data/catalog.json").read_text()
    )
    table = {}
    for doc in raw["entries"]:
        entry = CatalogEntry(
            name=doc["name"],
            form=QuadForm.from_json(doc["form"]),
            expected_lambda1=doc["expected_lambda1"],
            expected_min_count=doc["expected_min_count"],
        )
        table[entry.name] = entry
    return table


_TABLE: dict[str, CatalogEntry] | None = None


def _table() -> dict[str, CatalogEntry]:
    global _TABLE
    if _TABLE is None:
        _TABLE = _load()
    return _TABLE


def names() -> list[str]:
    return sorted(_table())


def entries() -> list[CatalogEntry]:
    return [_table()[name] for name in names()]


def get(name: str) -> CatalogEntry:
    try:
        return _table()[name]
    except KeyError:
        raise KeyError(f"unknown catalog form {name!r}") from None
