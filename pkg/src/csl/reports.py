"""Scans over boxes of h vectors, tabulated as CSV rows."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from itertools import product
from typing import Optional, Sequence

from .config import capacity
from .covering import construct, inhomogeneous_cover
from .errors import CapacityError, NotReadyError, ThresholdError
from .layers import detect_stabilization, layer_cover_general, threshold_layer
from .oracle import min_translate_cover, verify_certificate
from .sets import ColorTuple, FiniteSet, Window, normalize_tuple
from .sumsets import sumset

COVER_COLUMNS = ["method", "size", "bound", "oracle_min", "status"]


def box(h_min: Sequence[int], h_max: Sequence[int]) -> list:
    """All h with h_min <= h <= h_max, in lexicographic order; empty if any range is empty."""
    return [tuple(h) for h in product(*(range(lo, hi + 1) for lo, hi in zip(h_min, h_max)))]


def _oracle_min(S: FiniteSet, T: FiniteSet):
    if not S or not T or len(S) > capacity().cover:
        return ""
    try:
        return len(min_translate_cover(S, T))
    except CapacityError:
        return ""


def cover_row(
    t: ColorTuple,
    r: int,
    h,
    method: str = "auto",
    window: Optional[Window] = None,
    witnesses=None,
    shift: Optional[FiniteSet] = None,
    oracle: bool = True,
) -> dict:
    row = {f"h{i + 1}": v for i, v in enumerate(h)}
    try:
        if method == "inhomogeneous":
            base = verify_certificate(construct(t, r, h, "auto", window, witnesses))
            cert = inhomogeneous_cover(base, shift, r) if base.verified else base
        else:
            cert = construct(t, r, h, method, window, witnesses)
    except ThresholdError as exc:
        row.update(method=method, size="", bound="", oracle_min="", status=f"threshold>={exc.required}")
        return row
    cert = verify_certificate(cert)
    oracle_min = ""
    if oracle and t.is_finite and shift is None:
        oracle_min = _oracle_min(sumset(t, t.hvector(h).scaled(r)), sumset(t, h))
    row.update(method=cert.method, size=cert.size, bound=cert.bound, oracle_min=oracle_min, status=cert.status)
    return row


def layer_row(t: ColorTuple, r: int, thr: int, h, first=None, oracle: bool = True) -> dict:
    row = {f"h{i + 1}": v for i, v in enumerate(h)}
    row.update(method="layer", bound=r + 2)
    try:
        cert = layer_cover_general(t, thr, r, h)
        row.update(size=cert.size, status=cert.status)
    except NotReadyError:
        row.update(size="", status="not-ready")
    except ThresholdError as exc:
        row.update(size="", status=f"threshold>={exc.required}")
    oracle_min = ""
    if oracle:
        big = threshold_layer(t, t.hvector(h).scaled(r), thr)
        small = threshold_layer(t, h, thr)
        oracle_min = _oracle_min(big, small)
    row["oracle_min"] = oracle_min
    row["first_stabilized"] = first is not None and tuple(h) == tuple(first)
    return row


def _run(fn, items, jobs: int) -> list:
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(h) for h in items]


def scan_covers(t: ColorTuple, r: int, h_min, h_max, method="auto", window=None, witnesses=None, shift=None, jobs=1):
    fn = partial(_cover_at, t, r, method, window, witnesses, shift)
    return _run(fn, box(h_min, h_max), jobs)


def _cover_at(t, r, method, window, witnesses, shift, h):
    return cover_row(t, r, h, method, window, witnesses, shift)


def _layer_at(t, r, thr, first, h):
    return layer_row(t, r, thr, h, first)


def first_stable(t: ColorTuple, thr: int, h_min, h_max):
    """Grid vector from which the layer structure is constant, mapped back to the full tuple."""
    normalized, rec = normalize_tuple(t)
    if normalized is None:
        return None
    s = detect_stabilization(normalized, thr, rec.restrict(h_min), rec.restrict(h_max))
    if not s.stabilized:
        return None
    full = list(h_min)
    for i, v in zip(rec.kept, s.h):
        full[i] = v
    return tuple(full)


def scan_layers(t: ColorTuple, r: int, thr: int, h_min, h_max, jobs=1):
    hs = box(h_min, h_max)
    first = first_stable(t, thr, h_min, h_max) if hs else None
    return _run(partial(_layer_at, t, r, thr, first), hs, jobs)


def to_csv(rows: list, q: int, layers: bool = False) -> str:
    columns = [f"h{i + 1}" for i in range(q)] + COVER_COLUMNS + (["first_stabilized"] if layers else [])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("true" if v is True else "false" if v is False else v) for k, v in row.items()})
    return buf.getvalue()
