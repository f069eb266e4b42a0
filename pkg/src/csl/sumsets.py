"""Minkowski sums, h-fold sumsets and chromatic sumsets.

Sets inside Z go through a dense bitset path (see ``_bits``); every other
group uses hash sets of element tuples.  Both paths compute the same sets.
"""

from __future__ import annotations

from typing import Optional, Sequence

from . import _bits
from .errors import StructuralError, UnsupportedStructureError
from .group import AmbientGroup
from .sets import ColorTuple, FiniteSet, Window, enumerate_window


def _same_ambient(*sets: FiniteSet) -> AmbientGroup:
    g = sets[0].ambient
    for s in sets[1:]:
        if s.ambient != g:
            raise StructuralError(f"ambient mismatch: {g} vs {s.ambient}")
    return g


def _dense_ok(g: AmbientGroup, *sets: FiniteSet) -> bool:
    if not g.is_integers:
        return False
    return all(_bits.span(x[0] for x in s.elements) <= _bits.MAX_SPAN for s in sets)


def dense(s: FiniteSet):
    return _bits.from_ints(x[0] for x in s.elements)


def from_dense(d) -> FiniteSet:
    from .group import Z

    return FiniteSet(Z, frozenset((v,) for v in _bits.to_ints(d)))


def _sparse_sum(g: AmbientGroup, xs, ys) -> set:
    add = g.add
    return {add(x, y) for x in xs for y in ys}


def minkowski_sum(X: FiniteSet, Y: FiniteSet) -> FiniteSet:
    g = _same_ambient(X, Y)
    if _dense_ok(g, X, Y):
        return from_dense(_bits.add(dense(X), dense(Y)))
    return FiniteSet(g, frozenset(_sparse_sum(g, X.elements, Y.elements)))


def sum_all(sets: Sequence[FiniteSet]) -> FiniteSet:
    """Minkowski sum of a nonempty list of sets."""
    if not sets:
        raise StructuralError("cannot sum an empty list of sets")
    g = _same_ambient(*sets)
    if _dense_ok(g, *sets):
        acc = dense(sets[0])
        for s in sets[1:]:
            acc = _bits.add(acc, dense(s))
        return from_dense(acc)
    acc = set(sets[0].elements)
    for s in sets[1:]:
        acc = _sparse_sum(g, acc, s.elements)
    return FiniteSet(g, frozenset(acc))


def _fold(zero, one, add, h: int):
    """h-fold sum by binary doubling."""
    result, power = zero, one
    while h:
        if h & 1:
            result = add(result, power)
        h >>= 1
        if h:
            power = add(power, power)
    return result


def dense_h_fold(d, h: int):
    return _fold((0, 1), d, _bits.add, h)


def h_fold(A: FiniteSet, h: int) -> FiniteSet:
    if h < 0:
        raise StructuralError("h must be nonnegative")
    if not A:
        raise StructuralError("h-fold sumset of an empty set")
    g = A.ambient
    if _dense_ok(g, A):
        return from_dense(dense_h_fold(dense(A), h))
    result = _fold(frozenset([g.zero]), A.elements, lambda a, b: frozenset(_sparse_sum(g, a, b)), h)
    return FiniteSet(g, result)


def dense_chromatic(masks: Sequence, h: Sequence[int]):
    acc = (0, 1)
    for d, hi in zip(masks, h):
        if hi:
            acc = _bits.add(acc, dense_h_fold(d, hi))
    return acc


def chromatic_sumset(t: ColorTuple, h) -> FiniteSet:
    h = t.hvector(h)
    sets = t.finite_sets()
    g = t.ambient
    if _dense_ok(g, *sets):
        return from_dense(dense_chromatic([dense(s) for s in sets], h))
    parts = [h_fold(s, hi) for s, hi in zip(sets, h) if hi]
    return sum_all(parts) if parts else FiniteSet.zero(g)


# windowed chromatic sumsets --------------------------------------------------


def _clip_sparse(g: AmbientGroup, xs, upper) -> frozenset:
    k = g.free_rank
    return frozenset(x for x in xs if all(v <= u for v, u in zip(x[:k], upper)))


def chromatic_sumset_window(t: ColorTuple, h, w: Window) -> FiniteSet:
    """Exactly (h . A) intersected with the window.

    Every element of color i has free part >= its lower corner ``lo_i``, so
    a partial sum of some of the summands is bounded above by ``w.hi`` minus
    the lower corners of the summands still missing.  Truncating at those
    bounds never discards a partial sum of an element that lands in ``w``.
    """
    h = t.hvector(h)
    g = t.ambient
    w.fits(g)
    k = g.free_rank
    active = [(c, hi) for c, hi in zip(t.colors, h) if hi]
    if not active:
        return FiniteSet(g, frozenset([g.zero]) if w.contains(g.zero) else frozenset())
    lows = [c.lower_corner() for c, _ in active]
    total_lo = [sum(hi * lo[j] for (_, hi), lo in zip(active, lows)) for j in range(k)]

    def upper_for(lo, m):
        # bound on a partial sum of m summands taken from a color with corner lo
        return tuple(w.hi[j] - total_lo[j] + m * lo[j] for j in range(k))

    use_dense = g.is_integers
    parts = []
    for (c, hi), lo in zip(active, lows):
        single = upper_for(lo, 1)
        if any(u < l for u, l in zip(single, lo)):
            return FiniteSet(g, frozenset())
        S = enumerate_window(c, Window(tuple(zip(lo, single))))
        if use_dense:
            parts.append(_dense_fold_clipped(dense(S), hi, lo[0], w.hi[0] - total_lo[0]))
        else:
            parts.append(_sparse_fold_clipped(g, S.elements, hi, lo, upper_for))
    if use_dense:
        acc = parts[0]
        for p in parts[1:]:
            acc = _bits.add(acc, p)
        return from_dense(_bits.clip(acc, w.lo[0], w.hi[0]))
    acc = parts[0]
    for p in parts[1:]:
        acc = _sparse_sum(g, acc, p)
    return FiniteSet(g, frozenset(x for x in acc if w.contains(x)))


def _dense_fold_clipped(d, h: int, lo: int, slack: int):
    """h-fold sum where a partial sum of m summands is kept only up to slack + m*lo."""
    result, power, m_res, m_pow = (0, 1), d, 0, 1
    while h:
        if h & 1:
            m_res += m_pow
            result = _bits.clip(_bits.add(result, power), hi=slack + m_res * lo)
        h >>= 1
        if h:
            m_pow *= 2
            power = _bits.clip(_bits.add(power, power), hi=slack + m_pow * lo)
    return result


def _sparse_fold_clipped(g, xs, h: int, lo, upper_for):
    result, power, m_res, m_pow = frozenset([g.zero]), frozenset(xs), 0, 1
    while h:
        if h & 1:
            m_res += m_pow
            result = _clip_sparse(g, _sparse_sum(g, result, power), upper_for(lo, m_res))
        h >>= 1
        if h:
            m_pow *= 2
            power = _clip_sparse(g, _sparse_sum(g, power, power), upper_for(lo, m_pow))
    return result


def sumset(t: ColorTuple, h, w: Optional[Window] = None) -> FiniteSet:
    """h . A, exact for finite tuples and window-truncated for structured ones."""
    if t.is_finite:
        s = chromatic_sumset(t, h)
        if w is None:
            return s
        return FiniteSet(s.ambient, frozenset(x for x in s.elements if w.contains(x)))
    if w is None:
        raise UnsupportedStructureError("a window is required for tuples with infinite colors")
    return chromatic_sumset_window(t, h, w)
