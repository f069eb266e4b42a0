"""Representation counts, threshold layers and their r+2 covers over Z."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import reduce
from itertools import product
from typing import Optional, Sequence

from .covering import FAILED, VERIFIED, CoveringCertificate
from .config import capacity
from .errors import CapacityError, NotReadyError, StructuralError, ThresholdError
from .group import Z
from .sets import ColorTuple, FiniteSet, HVector, normalize_tuple


@dataclass(frozen=True)
class RepProfile:
    """n -> number of color-respecting weakly increasing representations of n."""

    h: HVector
    counts: dict

    def __call__(self, n: int) -> int:
        return self.counts.get(n, 0)

    @property
    def support(self) -> list:
        return sorted(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def max_count(self) -> int:
        return max(self.counts.values(), default=0)

    def layer(self, thr: int) -> list:
        return sorted(n for n, c in self.counts.items() if c >= thr)


def _multiset_sums(values: Sequence[int], h: int) -> dict:
    """sum -> number of size-h multisets drawn from values."""
    base = min(values)
    shifted = [v - base for v in values]
    width = h * max(shifted) + 1
    if width * (h + 1) > capacity().enumerate:
        raise CapacityError(f"representation table of {width * (h + 1)} cells exceeds the capacity")
    # dp[j][s]: multisets of size j with shifted sum s, using the elements seen so far
    dp = [[0] * width for _ in range(h + 1)]
    dp[0][0] = 1
    for v in shifted:
        for j in range(1, h + 1):
            prev, row = dp[j - 1], dp[j]
            for s in range(v, width):
                c = prev[s - v]
                if c:
                    row[s] += c
    return {s + h * base: c for s, c in enumerate(dp[h]) if c}


def _convolve(a: dict, b: dict) -> dict:
    out = {}
    for x, cx in a.items():
        for y, cy in b.items():
            out[x + y] = out.get(x + y, 0) + cx * cy
    return out


def _integer_sets(t: ColorTuple) -> list:
    if not t.ambient.is_integers:
        raise StructuralError("representation functions are defined for tuples of integer sets")
    return [A.ints() for A in t.finite_sets()]


def representation_function(t: ColorTuple, h) -> RepProfile:
    h = t.hvector(h)
    sets = _integer_sets(t)
    counts = {0: 1}
    for A, hi in zip(sets, h):
        if hi:
            counts = _convolve(counts, _multiset_sums(A, hi))
    return RepProfile(h, counts)


def threshold_layer(t: ColorTuple, h, thr: int) -> FiniteSet:
    """Integers represented at least ``thr`` times."""
    if thr < 1:
        raise StructuralError("the threshold must be a positive integer")
    return FiniteSet(Z, frozenset((n,) for n in representation_function(t, h).layer(thr)))


@dataclass(frozen=True)
class LayerStructure:
    """Interval-plus-edges data: layer = C u [c, H-d] u (H - D)."""

    t: Optional[int]
    H: int
    C: tuple
    c: Optional[int]
    d: Optional[int]
    D: tuple
    stabilized: bool
    h: Optional[HVector] = None

    @property
    def data(self) -> tuple:
        return (self.C, self.c, self.d, self.D)

    def to_dict(self) -> dict:
        return {
            "h": list(self.h) if self.h is not None else None,
            "t": self.t,
            "H": self.H,
            "C": list(self.C),
            "c": self.c,
            "d": self.d,
            "D": list(self.D),
            "stabilized": self.stabilized,
        }


def _ints(S) -> list:
    if isinstance(S, FiniteSet):
        return S.ints()
    return sorted(set(int(v) for v in S))


def decompose_layer(S, H: int, t: Optional[int] = None, h=None) -> LayerStructure:
    """Canonical decomposition anchored at the run of S through floor(H/2)."""
    values = _ints(S)
    if values and (values[0] < 0 or values[-1] > H):
        raise StructuralError(f"layer is not contained in [0, {H}]")
    h = HVector(h) if h is not None else None
    present = set(values)
    mid = H // 2
    if mid not in present:
        return LayerStructure(t, H, (), None, None, (), False, h)
    start = mid
    while start - 1 in present:
        start -= 1
    end = mid
    while end + 1 in present:
        end += 1
    C = tuple(v for v in values if v < start)
    D = tuple(sorted(H - v for v in values if v > end))
    return LayerStructure(t, H, C, start, H - end, D, True, h)


def _check_normalized(t: ColorTuple) -> list:
    sets = _integer_sets(t)
    if any(A[0] != 0 for A in sets):
        raise StructuralError("normalized tuples have min(A_i) = 0 for every color")
    if reduce(math.gcd, (a for A in sets for a in A)) != 1:
        raise StructuralError("normalized tuples have gcd 1 over the union of colors")
    if any(A[-1] < 1 for A in sets):
        raise StructuralError("every color needs max(A_i) >= 1")
    return sets


def layer_at(t: ColorTuple, h, thr: int) -> LayerStructure:
    """Decomposition of the threshold layer at h, with H = h . (max A_i)."""
    sets = _integer_sets(t)
    h = t.hvector(h)
    H = sum(hi * A[-1] for hi, A in zip(h, sets))
    return decompose_layer(threshold_layer(t, h, thr), H, thr, h)


def detect_stabilization(t: ColorTuple, thr: int, h_min, h_max) -> LayerStructure:
    """Smallest grid vector h0 from which the layer data stay constant on the box.

    A candidate must leave room above it in every coordinate that varies, so
    agreement is checked on more than one point.  Returns a non-stabilized
    structure (``h`` None) when no candidate qualifies.
    """
    _check_normalized(t)
    h_min, h_max = t.hvector(h_min), t.hvector(h_max)
    grid = list(product(*(range(lo, hi + 1) for lo, hi in zip(h_min, h_max))))
    if not grid:
        return LayerStructure(thr, 0, (), None, None, (), False, None)
    structures = {h: layer_at(t, h, thr) for h in grid}
    varying = [lo < hi for lo, hi in zip(h_min, h_max)]
    for h0 in sorted(grid, key=lambda v: (sum(v), v)):
        if any(v and x >= hi for v, x, hi in zip(varying, h0, h_max)):
            continue
        s0 = structures[h0]
        if not s0.stabilized:
            continue
        above = (h for h in grid if HVector(h0).precedes(h))
        if all(structures[h].stabilized and structures[h].data == s0.data for h in above):
            return s0
    return LayerStructure(thr, 0, (), None, None, (), False, None)


def interval_cover_translates(c: int, d: int, H: int, r: int) -> FiniteSet:
    """{0, L, ..., rL} whose translates of [c, H-d] cover [c, rH-d]."""
    L = H - c - d + 1
    if L < 1:
        raise ThresholdError(f"need H - c - d + 1 >= 1, got {L}", c + d)
    need = r * (c + d) - r
    if H < need:
        raise ThresholdError(f"interval covering needs H >= r(c+d)-r = {need}, got H={H}", need)
    if r * H - d > c + (r + 1) * L - 1:  # pragma: no cover - excluded by the hypothesis
        raise AssertionError("interval translates do not reach rH - d")
    return FiniteSet(Z, frozenset((j * L,) for j in range(r + 1)))


def _layer_inclusion(t: ColorTuple, r: int, h, thr: int, X: FiniteSet):
    """(first element of the layer at r*h missing from X + layer at h or None, sizes of both sides)."""
    h = t.hvector(h)
    big = representation_function(t, h.scaled(r)).layer(thr)
    small = representation_function(t, h).layer(thr)
    right = {x + s for (x,) in X.elements for s in small}
    miss = next((n for n in big if n not in right), None)
    return miss, len(big), len(right)


def verify_layer_certificate(cert: CoveringCertificate) -> CoveringCertificate:
    from .oracle import VerificationReport

    miss, n_left, n_right = _layer_inclusion(cert.tuple, cert.r, cert.h, cert.threshold, cert.X)
    rep = VerificationReport(
        f"(({cert.r}h).A)^({cert.threshold}) in X + (h.A)^({cert.threshold}), h={list(cert.h)}",
        None,
        miss is None,
        (miss,) if miss is not None else None,
        n_left,
        n_right,
    )
    return replace(cert, status=VERIFIED if miss is None else FAILED, report=rep)


def layer_cover(t: ColorTuple, thr: int, r: int, h) -> CoveringCertificate:
    """X = {0, L, ..., rL, (r-1)H}, L = H - c - d + 1, for a normalized tuple.

    Requires the layers at h and r*h to decompose with identical data.
    """
    _check_normalized(t)
    if r < 1:
        raise StructuralError("r must be a positive integer")
    h = t.hvector(h)
    at_h = layer_at(t, h, thr)
    at_rh = layer_at(t, h.scaled(r), thr)
    if not (at_h.stabilized and at_rh.stabilized and at_h.data == at_rh.data):
        raise NotReadyError(
            f"layer structure at h={list(h)} and {r}h differ or are not interval-plus-edges; increase h"
        )
    c, d, H = at_h.c, at_h.d, at_h.H
    need = max(r * (c + d) - r, c + d)
    if H < need:
        raise ThresholdError(f"layer covering needs H >= {need}, got H={H}", need)
    steps = interval_cover_translates(c, d, H, r)
    X = FiniteSet(Z, steps.elements | {((r - 1) * H,)})
    cert = CoveringCertificate(t, r, h, X, "layer", r + 2, threshold=thr)
    return verify_layer_certificate(cert)


def layer_cover_general(t: ColorTuple, thr: int, r: int, h) -> CoveringCertificate:
    """Layer covers for arbitrary nonempty finite integer tuples via normalization."""
    if r < 1:
        raise StructuralError("r must be a positive integer")
    h = t.hvector(h)
    normalized, rec = normalize_tuple(t)
    if normalized is None:
        if thr == 1:
            X = FiniteSet(Z, frozenset([((r - 1) * rec.shift(h),)]))
        else:
            X = FiniteSet.zero(Z)
        cert = CoveringCertificate(t, r, h, X, "layer", r + 2, threshold=thr)
        return verify_layer_certificate(cert)
    inner = layer_cover(normalized, thr, r, rec.restrict(h))
    offset = (r - 1) * rec.shift(h)
    X = FiniteSet(Z, frozenset((rec.divisor * y + offset,) for (y,) in inner.X.elements))
    cert = CoveringCertificate(t, r, h, X, "layer", r + 2, threshold=thr)
    return verify_layer_certificate(cert)
