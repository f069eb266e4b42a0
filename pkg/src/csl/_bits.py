"""Dense bitset arithmetic for finite sets of integers.

A set is a pair ``(offset, mask)`` with bit ``i`` of ``mask`` standing for
``offset + i``.  The empty set is ``(0, 0)``.
"""

from __future__ import annotations

from typing import Iterable

EMPTY = (0, 0)
MAX_SPAN = 1 << 24


def from_ints(values: Iterable[int]):
    values = list(values)
    if not values:
        return EMPTY
    off = min(values)
    mask = 0
    for v in values:
        mask |= 1 << (v - off)
    return off, mask


def to_ints(s) -> list:
    off, mask = s
    return [off + i for i in bits(mask)]


def size(s) -> int:
    return s[1].bit_count()


def bits(mask: int) -> list:
    if 8 * mask.bit_count() > mask.bit_length():
        digits = bin(mask)[:1:-1]
        return [i for i, c in enumerate(digits) if c == "1"]
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def add(a, b):
    (oa, ma), (ob, mb) = a, b
    if not ma or not mb:
        return EMPTY
    if ma.bit_count() > mb.bit_count():
        ma, mb = mb, ma
    out = 0
    for i in bits(ma):
        out |= mb << i
    return oa + ob, out


def translate(a, v: int):
    return (a[0] + v, a[1]) if a[1] else EMPTY


def union(a, b):
    (oa, ma), (ob, mb) = a, b
    if not ma:
        return b
    if not mb:
        return a
    off = min(oa, ob)
    return off, (ma << (oa - off)) | (mb << (ob - off))


def clip(a, lo=None, hi=None):
    """Intersect with [lo, hi]; either bound may be None."""
    off, mask = a
    if not mask:
        return EMPTY
    if hi is not None:
        if hi < off:
            return EMPTY
        mask &= (1 << (hi - off + 1)) - 1
    if lo is not None and lo > off:
        mask >>= lo - off
        off = lo
    return (off, mask) if mask else EMPTY


def contains(a, v: int) -> bool:
    off, mask = a
    return v >= off and bool((mask >> (v - off)) & 1)


def issubset(a, b) -> bool:
    return first_missing(a, b) is None


def first_missing(a, b):
    """Smallest element of a that is not in b, or None."""
    (oa, ma), (ob, mb) = a, b
    if not ma:
        return None
    if mb:
        if oa >= ob:
            rest = ma & ~(mb >> (oa - ob))
        else:
            rest = ma & ~(mb << (ob - oa))
    else:
        rest = ma
    if not rest:
        return None
    return oa + ((rest & -rest).bit_length() - 1)


def span(values) -> int:
    values = list(values)
    return max(values) - min(values) + 1 if values else 0


# cyclic groups Z/n: a plain n-bit mask, bit i standing for the residue i


def rotate(mask: int, v: int, n: int) -> int:
    v %= n
    full = (1 << n) - 1
    return ((mask << v) | (mask >> (n - v))) & full


def cyclic_add(ma: int, mb: int, n: int) -> int:
    if ma.bit_count() > mb.bit_count():
        ma, mb = mb, ma
    out = 0
    for i in bits(ma):
        out |= rotate(mb, i, n)
    return out


def cyclic_fold(ma: int, h: int, n: int) -> int:
    result, power = 1, ma
    while h:
        if h & 1:
            result = cyclic_add(result, power, n)
        h >>= 1
        if h:
            power = cyclic_add(power, power, n)
    return result
