"""Brute-force checks, independent of the constructions they judge."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, replace
from typing import Optional

from . import _bits
from .config import capacity
from .errors import CapacityError, StructuralError, UnsupportedStructureError
from .sets import ColorTuple, Finite, FiniteSet, HVector, Window
from .sumsets import dense, dense_chromatic, sumset


@dataclass(frozen=True)
class VerificationReport:
    description: str
    window: Optional[Window]
    passed: bool
    counterexample: Optional[tuple] = None
    left_count: int = 0
    right_count: int = 0
    # set when equality was also checked
    equality: Optional[bool] = None


def _with_shift(target: ColorTuple, h: HVector, shift: Optional[FiniteSet]):
    if shift is None:
        return target, h
    if shift.ambient != target.ambient:
        raise StructuralError("shift set lives in a different group")
    return ColorTuple(target.ambient, target.colors + (Finite(shift),)), HVector(tuple(h) + (1,))


def _describe(r, h, shift) -> str:
    extra = " + B" if shift is not None else ""
    if shift is not None:
        return f"{r}(h.A{extra}) in X + h.A{extra}, h={list(h)}"
    return f"({r}h).A in X + h.A, h={list(h)}"


def verify_cover(
    target: ColorTuple,
    r: int,
    h,
    X: FiniteSet,
    w: Optional[Window] = None,
    shift: Optional[FiniteSet] = None,
    check_equality: bool = False,
) -> VerificationReport:
    """Decide (r h) . A inside X + h . A (intersected with w for structured tuples).

    With ``shift`` = B the family h . A + B is checked instead:
    r(h . A + B) = (r h, r) . (A, B) and X + h . A + B = X + (h, 1) . (A, B).
    """
    h = target.hvector(h)
    desc = _describe(r, h, shift)
    target, h_eff = _with_shift(target, h, shift)
    left_h = HVector(h.scaled(r) + ((r,) if shift is not None else ()))
    if not X:
        raise StructuralError("covering set X is empty")
    if X.ambient != target.ambient:
        raise StructuralError("X lives in a different group")
    g = target.ambient

    if target.is_finite and w is None:
        if g.is_integers:
            return _verify_dense(target, left_h, h_eff, X, desc, check_equality)
        if g.free_rank == 0 and len(g.torsion) == 1:
            return _verify_cyclic(target, left_h, h_eff, X, desc, check_equality)
        left = sumset(target, left_h)
        T = sumset(target, h_eff).elements
        right = {g.add(x, s) for x in X.elements for s in T}
        return _report(desc, None, left.elements, right, check_equality)

    if w is None:
        raise UnsupportedStructureError("structured tuples are verified on a window; none was given")
    w.fits(g)
    k = g.free_rank
    xs = [g.free_part(x) for x in X.elements]
    # right-hand summand must lie in w - xi for some xi in X
    lo = tuple(w.lo[j] - max(x[j] for x in xs) for j in range(k))
    hi = tuple(w.hi[j] - min(x[j] for x in xs) for j in range(k))
    wide = Window(tuple(zip(lo, hi)))
    left = sumset(target, left_h, w).elements
    T = sumset(target, h_eff, wide).elements
    if g.is_integers:
        return _window_dense(desc, w, left, T, X, check_equality)
    right = {y for y in (g.add(x, s) for x in X.elements for s in T) if w.contains(y)}
    return _report(desc, w, left, right, check_equality)


def _report(desc, w, left, right, check_equality) -> VerificationReport:
    missing = sorted(x for x in left if x not in right)
    eq = None
    if check_equality:
        eq = not missing and len(right) == len(left)
    return VerificationReport(
        desc, w, not missing, missing[0] if missing else None, len(left), len(right), eq
    )


def _window_dense(desc, w, left, T, X, check_equality) -> VerificationReport:
    T = _bits.from_ints(v for (v,) in T)
    right = _bits.EMPTY
    for (x,) in X.elements:
        right = _bits.union(right, _bits.translate(T, x))
    right = _bits.clip(right, w.lo[0], w.hi[0])
    left = _bits.from_ints(v for (v,) in left)
    return _dense_report(desc, w, left, right, check_equality)


def _dense_report(desc, w, left, right, check_equality) -> VerificationReport:
    miss = _bits.first_missing(left, right)
    eq = None
    if check_equality:
        eq = miss is None and _bits.size(left) == _bits.size(right)
    return VerificationReport(
        desc,
        w,
        miss is None,
        (miss,) if miss is not None else None,
        _bits.size(left),
        _bits.size(right),
        eq,
    )


def _verify_dense(target, left_h, h_eff, X, desc, check_equality) -> VerificationReport:
    masks = [dense(A) for A in target.finite_sets()]
    left = dense_chromatic(masks, left_h)
    T = dense_chromatic(masks, h_eff)
    right = _bits.EMPTY
    for (x,) in X.elements:
        right = _bits.union(right, _bits.translate(T, x))
    return _dense_report(desc, None, left, right, check_equality)


def _verify_cyclic(target, left_h, h_eff, X, desc, check_equality) -> VerificationReport:
    n = target.ambient.torsion[0]
    masks = [sum(1 << x for (x,) in A.elements) for A in target.finite_sets()]

    def chromatic(h):
        acc = 1
        for m, hi in zip(masks, h):
            acc = _bits.cyclic_add(acc, _bits.cyclic_fold(m, hi, n), n)
        return acc

    left, T = chromatic(left_h), chromatic(h_eff)
    right = 0
    for (x,) in X.elements:
        right |= _bits.rotate(T, x, n)
    missing = left & ~right
    miss = (missing & -missing).bit_length() - 1 if missing else None
    eq = None
    if check_equality:
        eq = miss is None and left.bit_count() == right.bit_count()
    return VerificationReport(
        desc, None, miss is None, (miss,) if miss is not None else None, left.bit_count(), right.bit_count(), eq
    )


def verify_certificate(cert):
    """Run the oracle on a certificate; returns a copy with status and report set."""
    from .covering import FAILED, VERIFIED

    if cert.threshold is not None:
        from .layers import verify_layer_certificate

        return verify_layer_certificate(cert)
    rep = verify_cover(
        cert.tuple,
        cert.r,
        cert.h,
        cert.X,
        cert.window if not cert.tuple.is_finite else None,
        shift=cert.shift,
        check_equality=cert.claims_equality,
    )
    ok = rep.passed and (rep.equality is not False)
    return replace(cert, status=VERIFIED if ok else FAILED, report=rep)


# minimum translate covers ----------------------------------------------------------


def min_translate_cover(S: FiniteSet, T: FiniteSet, limit: Optional[int] = None) -> FiniteSet:
    """A smallest X with S inside X + T.

    Exact set cover by branch and bound over the candidates s - t.  Ties are
    broken by ranking candidates by coverage (descending) and then by element,
    and returning the optimum whose ranks are lexicographically least.
    """
    limit = capacity().cover if limit is None else limit
    if not S or not T:
        raise StructuralError("min_translate_cover needs nonempty sets")
    if S.ambient != T.ambient:
        raise StructuralError("ambient mismatch")
    if len(S) > limit:
        raise CapacityError(f"|S|={len(S)} exceeds the set-cover limit {limit}")
    g = S.ambient
    points = S.sorted()
    index = {s: i for i, s in enumerate(points)}
    cover = {}
    for s in points:
        for t in T.elements:
            x = g.sub(s, t)
            if x in cover:
                continue
            m = 0
            for t2 in T.elements:
                j = index.get(g.add(x, t2))
                if j is not None:
                    m |= 1 << j
            cover[x] = m
    solver = _CoverSearch(len(points), cover)
    full = (1 << len(points)) - 1
    upper = solver.greedy(full)
    best = upper
    lower = -(-len(points) // max(m.bit_count() for m in cover.values()))
    for k in range(lower, upper + 1):
        if solver.feasible(full, k):
            best = k
            break
    chosen = solver.least(full, best)
    return FiniteSet(g, frozenset(chosen))


class _CoverSearch:
    """Exact set cover over candidates ranked by coverage descending, then by element."""

    def __init__(self, n: int, cover: dict):
        self.ranked = sorted(cover, key=lambda x: (-cover[x].bit_count(), x))
        self.masks = [cover[x] for x in self.ranked]
        self.maxcov = self.masks[0].bit_count()
        self.by_point = [[j for j, m in enumerate(self.masks) if m >> i & 1] for i in range(n)]
        self.memo = {}

    def greedy(self, need: int) -> int:
        count = 0
        while need:
            j = max(range(len(self.masks)), key=lambda j: (self.masks[j] & need).bit_count())
            need &= ~self.masks[j]
            count += 1
        return count

    def feasible(self, need: int, k: int, floor: int = -1) -> bool:
        """Can ``need`` be covered by k candidates of rank greater than ``floor``?"""
        if not need:
            return True
        if k == 0 or need.bit_count() > k * self.maxcov:
            return False
        key = (need, k, floor)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        # branch on the uncovered point with the fewest usable candidates
        best = None
        for i in _bits.bits(need):
            opts = [j for j in self.by_point[i] if j > floor]
            if best is None or len(opts) < len(best):
                best = opts
                if len(best) <= 1:
                    break
        ok = any(self.feasible(need & ~self.masks[j], k - 1, floor) for j in best)
        self.memo[key] = ok
        return ok

    def least(self, need: int, k: int) -> list:
        """The optimum whose rank sequence is lexicographically least."""
        chosen, floor = [], -1
        while need:
            for j in range(floor + 1, len(self.masks)):
                if self.masks[j] & need and self.feasible(need & ~self.masks[j], k - len(chosen) - 1, j):
                    chosen.append(self.ranked[j])
                    need &= ~self.masks[j]
                    floor = j
                    break
            else:  # pragma: no cover - feasibility was established beforehand
                raise RuntimeError("cover reconstruction failed")
        return chosen


# representation counts by enumeration --------------------------------------------


def brute_rep_function(t: ColorTuple, h, limit: Optional[int] = None):
    """Count weakly increasing tuples per color by listing every one of them."""
    from .layers import RepProfile

    limit = capacity().brute if limit is None else limit
    h = t.hvector(h)
    if not t.ambient.is_integers:
        raise StructuralError("representation functions are defined over Z")
    sets = [A.ints() for A in t.finite_sets()]
    total = math.prod(math.comb(len(A) + hi - 1, hi) for A, hi in zip(sets, h))
    if total > limit:
        raise CapacityError(f"{total} representations exceed the enumeration limit {limit}")
    per_color = [
        [sum(c) for c in itertools.combinations_with_replacement(A, hi)] for A, hi in zip(sets, h)
    ]
    counts = Counter(sum(parts) for parts in itertools.product(*per_color))
    return RepProfile(h, dict(counts))
