"""Capacity limits, overridable through the ``CSL_CAPACITY`` environment variable.

The variable holds comma separated ``key=value`` pairs, for example
``CSL_CAPACITY="refine=20000,cover=300"``.  A bare integer sets every
enumeration limit that is not a coordinate bound.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import StructuralError


@dataclass(frozen=True)
class Capacity:
    coordinate: int = 2**40
    refine: int = 10_000
    cover: int = 200
    brute: int = 1_000_000
    enumerate: int = 2_000_000


def _parse(text: str, base: Capacity) -> Capacity:
    text = text.strip()
    if not text:
        return base
    if text.isdigit():
        n = int(text)
        return replace(base, refine=n, cover=n, brute=n, enumerate=n)
    names = {f.name for f in fields(Capacity)}
    updates = {}
    for item in text.split(","):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in names or not value.strip().isdigit():
            raise StructuralError(f"bad CSL_CAPACITY entry {item!r}")
        updates[key] = int(value)
    return replace(base, **updates)


def capacity() -> Capacity:
    return _parse(os.environ.get("CSL_CAPACITY", ""), Capacity())
