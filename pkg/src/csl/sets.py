"""Color classes: finite sets, linear and semilinear sets, finite core plus monoid.

Infinite classes are handled through windows.  Every monoid or unbounded
linear generator must have a nonnegative free part, so any element inside a
window is reached through partial sums that never leave the box spanned by
its base and itself.  That makes window enumeration exact and terminating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from .config import capacity
from .errors import CapacityError, StructuralError, UnsupportedStructureError
from .group import AmbientGroup, Element, Z


@dataclass(frozen=True)
class FiniteSet:
    ambient: AmbientGroup
    elements: frozenset

    @classmethod
    def of(cls, ambient: AmbientGroup, values: Iterable) -> "FiniteSet":
        return cls(ambient, frozenset(ambient.coerce(v) for v in values))

    @classmethod
    def zero(cls, ambient: AmbientGroup) -> "FiniteSet":
        return cls(ambient, frozenset([ambient.zero]))

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.sorted())

    def __contains__(self, x):
        return x in self.elements

    def __bool__(self):
        return bool(self.elements)

    def sorted(self) -> list:
        return sorted(self.elements)

    def ints(self) -> list:
        """Sorted integer values, for sets inside Z."""
        if self.ambient.rank != 1:
            raise StructuralError(f"ints() needs a rank-one group, not {self.ambient}")
        return [x[0] for x in self.sorted()]

    def translate(self, v: Element) -> "FiniteSet":
        g = self.ambient
        return FiniteSet(g, frozenset(g.add(x, v) for x in self.elements))

    def dilate(self, d: int) -> "FiniteSet":
        g = self.ambient
        return FiniteSet(g, frozenset(g.scale(d, x) for x in self.elements))

    def image(self, phi) -> "FiniteSet":
        if phi.source != self.ambient:
            raise StructuralError("homomorphism source differs from the set's ambient group")
        return FiniteSet(phi.target, frozenset(phi(x) for x in self.elements))

    def issubset(self, other: "FiniteSet") -> bool:
        return self.elements <= other.elements

    def __repr__(self):
        shown = self.ints() if self.ambient.rank == 1 else self.sorted()
        return f"FiniteSet({shown})"


@dataclass(frozen=True)
class Window:
    """Inclusive bounds on the free coordinates; torsion is always included."""

    bounds: tuple

    def __post_init__(self):
        bounds = tuple((int(lo), int(hi)) for lo, hi in self.bounds)
        for lo, hi in bounds:
            if lo > hi:
                raise StructuralError(f"empty window interval [{lo}, {hi}]")
        object.__setattr__(self, "bounds", bounds)

    @classmethod
    def interval(cls, lo: int, hi: int) -> "Window":
        return cls(((lo, hi),))

    @property
    def lo(self) -> tuple:
        return tuple(b[0] for b in self.bounds)

    @property
    def hi(self) -> tuple:
        return tuple(b[1] for b in self.bounds)

    def fits(self, g: AmbientGroup) -> None:
        if len(self.bounds) != g.free_rank:
            raise StructuralError(f"window has {len(self.bounds)} intervals, {g} has free rank {g.free_rank}")

    def contains(self, x: Element) -> bool:
        return all(lo <= v <= hi for v, (lo, hi) in zip(x, self.bounds))

    def shifted(self, lo_shift: Sequence[int], hi_shift: Sequence[int]) -> "Window":
        return Window(tuple((lo + a, hi + b) for (lo, hi), a, b in zip(self.bounds, lo_shift, hi_shift)))

    def __str__(self):
        return ",".join(f"{lo}:{hi}" for lo, hi in self.bounds)


# structured descriptions ---------------------------------------------------


def _check_orthant(g: AmbientGroup, gens: Sequence[Element]) -> None:
    for b in gens:
        if any(v < 0 for v in g.free_part(b)):
            raise UnsupportedStructureError(
                f"generator {b} has a negative free coordinate; only nonnegative generators are supported"
            )


@dataclass(frozen=True)
class MonoidDesc:
    """All N0-combinations of the generators (0 included)."""

    ambient: AmbientGroup
    generators: tuple = ()

    def __post_init__(self):
        gens = tuple(self.ambient.coerce(b) for b in self.generators)
        _check_orthant(self.ambient, gens)
        object.__setattr__(self, "generators", gens)


@dataclass(frozen=True)
class LinearSet:
    """P(base; generators).  With ``bounds`` set, coefficient j ranges over [0, bounds[j]]."""

    ambient: AmbientGroup
    base: Element
    generators: tuple = ()
    bounds: Optional[tuple] = None

    def __post_init__(self):
        g = self.ambient
        object.__setattr__(self, "base", g.coerce(self.base))
        gens = tuple(g.coerce(b) for b in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.bounds is not None:
            bounds = tuple(int(m) for m in self.bounds)
            if len(bounds) != len(gens) or any(m < 0 for m in bounds):
                raise StructuralError("bounded linear set needs one nonnegative bound per generator")
            object.__setattr__(self, "bounds", bounds)
        else:
            _check_orthant(g, gens)

    @property
    def is_bounded(self) -> bool:
        return self.bounds is not None

    def points(self) -> list:
        """The finitely many points of a bounded piece, in expansion order, deduplicated."""
        if not self.is_bounded:
            raise StructuralError("an unbounded linear set has infinitely many points")
        g = self.ambient
        seen, out = set(), []
        for coeffs in product(*(range(m + 1) for m in self.bounds)):
            x = self.base
            for n, b in zip(coeffs, self.generators):
                if n:
                    x = g.add(x, g.scale(n, b))
            if x not in seen:
                seen.add(x)
                out.append(x)
        return out


@dataclass(frozen=True)
class SemilinearSet:
    ambient: AmbientGroup
    pieces: tuple

    def __post_init__(self):
        if not self.pieces:
            raise StructuralError("a semilinear set needs at least one piece")
        for p in self.pieces:
            if p.ambient != self.ambient:
                raise StructuralError("semilinear pieces must share the ambient group")
        object.__setattr__(self, "pieces", tuple(self.pieces))

    @property
    def is_refined(self) -> bool:
        return not any(p.is_bounded for p in self.pieces)


def refine_to_unbounded(s: SemilinearSet, limit: Optional[int] = None) -> SemilinearSet:
    """Replace each bounded piece by singleton pieces P(x; ) for its points.

    The piece count of the result is ``len(result.pieces)``.  Identical
    pieces are merged.
    """
    limit = capacity().refine if limit is None else limit
    expanded = []
    total = 0
    for p in s.pieces:
        if p.is_bounded:
            total += math.prod(m + 1 for m in p.bounds)
        else:
            total += 1
        if total > limit:
            raise CapacityError(f"refinement would produce more than {limit} pieces")
    seen = set()
    for p in s.pieces:
        news = [LinearSet(s.ambient, x) for x in p.points()] if p.is_bounded else [p]
        for q in news:
            key = (q.base, q.generators)
            if key not in seen:
                seen.add(key)
                expanded.append(q)
    return SemilinearSet(s.ambient, tuple(expanded))


# color classes -------------------------------------------------------------


class ColorClass:
    """One color of a tuple.  Subclasses expose ``pieces()``: (base, generators) pairs
    whose union (base + monoid generated) is the described set."""

    kind = ""
    ambient: AmbientGroup

    def pieces(self) -> list:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return all(not gens for _, gens in self.pieces())

    def lower_corner(self) -> tuple:
        """Coordinatewise minimum of the free parts over all elements."""
        g = self.ambient
        bases = [g.free_part(b) for b, _ in self.pieces()]
        return tuple(min(col) for col in zip(*bases)) if g.free_rank else ()

    def affine(self, d: int, b: Element) -> "ColorClass":
        raise NotImplementedError


@dataclass(frozen=True)
class Finite(ColorClass):
    set: FiniteSet
    kind = "finite"

    def __post_init__(self):
        if not self.set:
            raise StructuralError("color classes must be nonempty")

    @property
    def ambient(self):
        return self.set.ambient

    def pieces(self):
        return [(x, ()) for x in self.set.sorted()]

    def affine(self, d, b):
        return Finite(self.set.dilate(d).translate(b))


@dataclass(frozen=True)
class Semilinear(ColorClass):
    set: SemilinearSet
    kind = "semilinear"

    @property
    def ambient(self):
        return self.set.ambient

    def pieces(self):
        refined = self.set if self.set.is_refined else refine_to_unbounded(self.set)
        return [(p.base, p.generators) for p in refined.pieces]

    def affine(self, d, b):
        g = self.ambient
        new = tuple(
            LinearSet(g, g.add(g.scale(d, p.base), b), tuple(g.scale(d, v) for v in p.generators), p.bounds)
            for p in self.set.pieces
        )
        return Semilinear(SemilinearSet(g, new))


@dataclass(frozen=True)
class FinitePlusMonoid(ColorClass):
    core: FiniteSet
    monoid: MonoidDesc
    kind = "finite_plus_monoid"

    def __post_init__(self):
        if not self.core:
            raise StructuralError("color classes must be nonempty")
        if self.core.ambient != self.monoid.ambient:
            raise StructuralError("core and monoid live in different groups")

    @property
    def ambient(self):
        return self.core.ambient

    def pieces(self):
        return [(f, self.monoid.generators) for f in self.core.sorted()]

    def affine(self, d, b):
        g = self.ambient
        return FinitePlusMonoid(
            self.core.dilate(d).translate(b), MonoidDesc(g, tuple(g.scale(d, v) for v in self.monoid.generators))
        )


@dataclass(frozen=True)
class TranslatedMonoid(ColorClass):
    base: Element
    monoid: MonoidDesc
    kind = "translated_monoid"

    def __post_init__(self):
        object.__setattr__(self, "base", self.monoid.ambient.coerce(self.base))

    @property
    def ambient(self):
        return self.monoid.ambient

    def pieces(self):
        return [(self.base, self.monoid.generators)]

    def affine(self, d, b):
        g = self.ambient
        return TranslatedMonoid(
            g.add(g.scale(d, self.base), b), MonoidDesc(g, tuple(g.scale(d, v) for v in self.monoid.generators))
        )


def finite(ambient: AmbientGroup, values: Iterable) -> Finite:
    return Finite(FiniteSet.of(ambient, values))


def translated_monoid(ambient: AmbientGroup, base, generators) -> TranslatedMonoid:
    return TranslatedMonoid(ambient.coerce(base), MonoidDesc(ambient, tuple(generators)))


def finite_plus_monoid(ambient: AmbientGroup, core, generators) -> FinitePlusMonoid:
    return FinitePlusMonoid(FiniteSet.of(ambient, core), MonoidDesc(ambient, tuple(generators)))


def semilinear(ambient: AmbientGroup, pieces) -> Semilinear:
    """``pieces`` holds (base, generators) or (base, generators, bounds) triples."""
    built = []
    for p in pieces:
        base, gens, *rest = p
        built.append(LinearSet(ambient, base, tuple(gens), tuple(rest[0]) if rest and rest[0] is not None else None))
    return Semilinear(SemilinearSet(ambient, tuple(built)))


class HVector(tuple):
    """Nonnegative integer vector with the coordinatewise partial order."""

    def __new__(cls, entries=()):
        entries = tuple(int(v) for v in entries)
        if any(v < 0 for v in entries):
            raise StructuralError(f"h entries must be nonnegative, got {entries}")
        return super().__new__(cls, entries)

    def scaled(self, r: int) -> "HVector":
        return HVector(r * v for v in self)

    def precedes(self, other: Sequence[int]) -> bool:
        """self <= other coordinatewise."""
        return len(self) == len(other) and all(a <= b for a, b in zip(self, other))

    @property
    def is_zero(self) -> bool:
        return not any(self)


@dataclass(frozen=True)
class ColorTuple:
    ambient: AmbientGroup
    colors: tuple

    def __post_init__(self):
        colors = tuple(self.colors)
        if not colors:
            raise StructuralError("a tuple needs at least one color")
        for c in colors:
            if c.ambient != self.ambient:
                raise StructuralError("all colors must share the ambient group")
        object.__setattr__(self, "colors", colors)

    @classmethod
    def of_finite(cls, ambient: AmbientGroup, *sets: Iterable) -> "ColorTuple":
        return cls(ambient, tuple(finite(ambient, s) for s in sets))

    def __len__(self):
        return len(self.colors)

    @property
    def q(self) -> int:
        return len(self.colors)

    @property
    def is_finite(self) -> bool:
        return all(c.is_finite for c in self.colors)

    def finite_sets(self) -> list:
        if not self.is_finite:
            raise UnsupportedStructureError("tuple has infinite colors")
        g = self.ambient
        return [FiniteSet(g, frozenset(b for b, _ in c.pieces())) for c in self.colors]

    def hvector(self, h) -> HVector:
        h = HVector(h)
        if len(h) != self.q:
            raise StructuralError(f"h has length {len(h)} but the tuple has {self.q} colors")
        return h


# windowed enumeration ------------------------------------------------------


def _reach(g: AmbientGroup, base: Element, gens: Sequence[Element], upper: Sequence[int], limit: int) -> set:
    """All base + N0-combinations of gens whose free part stays <= upper."""
    k = g.free_rank
    if any(v > u for v, u in zip(base[:k], upper)):
        return set()
    if g.is_integers:
        return _reach_int(base[0], [b[0] for b in gens if b[0]], upper[0], limit)
    seen = {base}
    frontier = [base]
    gens = [b for b in gens if b != g.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for b in gens:
                y = g.add(x, b)
                if y in seen or any(v > u for v, u in zip(y[:k], upper)):
                    continue
                seen.add(y)
                nxt.append(y)
        if len(seen) > limit:
            raise CapacityError(f"window enumeration exceeded {limit} elements")
        frontier = nxt
    return seen


def _reach_int(base: int, gens: Sequence[int], upper: int, limit: int, lower: Optional[int] = None) -> set:
    # numerical-semigroup sieve on a bitmask of offsets 0..upper-base
    span = upper - base + 1
    if span > limit:
        raise CapacityError(f"window enumeration over {span} integers exceeds {limit}")
    full = (1 << span) - 1
    mask = 1
    for b in gens:
        # closing under one generator at a time reaches every combination
        step = b
        while step < span:
            mask |= (mask << step) & full
            step *= 2
    start = 0 if lower is None else max(0, lower - base)
    return {(base + i,) for i in range(start, span) if mask >> i & 1}


def _piece_window(g: AmbientGroup, base, gens, w: Window, limit: int) -> set:
    if not gens:
        return {base} if w.contains(base) else set()
    if g.is_integers:
        if base[0] > w.hi[0]:
            return set()
        return _reach_int(base[0], [b[0] for b in gens if b[0]], w.hi[0], limit, w.lo[0])
    return {x for x in _reach(g, base, gens, w.hi, limit) if w.contains(x)}


def enumerate_window(c: ColorClass, w: Window) -> FiniteSet:
    g = c.ambient
    w.fits(g)
    limit = capacity().enumerate
    out = set()
    for base, gens in c.pieces():
        _check_orthant(g, gens)
        out |= _piece_window(g, base, gens, w, limit)
    return FiniteSet(g, frozenset(out))


def member_up_to_bound(c: ColorClass, x: Element, w: Window) -> bool:
    g = c.ambient
    w.fits(g)
    x = g.coerce(x)
    if not w.contains(x):
        raise StructuralError(f"{x} lies outside the window {w}")
    limit = capacity().enumerate
    k = g.free_rank
    for base, gens in c.pieces():
        _check_orthant(g, gens)
        if not gens:
            if base == x:
                return True
            continue
        if any(b > v for b, v in zip(base[:k], x[:k])):
            continue
        if x in _reach(g, base, gens, x[:k], limit):
            return True
    return False


# normalization over Z ------------------------------------------------------


@dataclass(frozen=True)
class NormalizationRecord:
    """Data for moving layers of a normalized tuple back to the original one.

    ``offsets[i]`` is min(A_i) for every original color, ``singletons`` the
    (0-based) indices of singleton colors that were dropped and ``kept`` the
    remaining indices, in order.
    """

    divisor: int
    offsets: tuple
    singletons: tuple
    kept: tuple

    def restrict(self, h: Sequence[int]) -> HVector:
        return HVector(h[i] for i in self.kept)

    def shift(self, h: Sequence[int]) -> int:
        """sum_i h_i * min(A_i) over all colors, kept and singleton alike."""
        return sum(hi * a for hi, a in zip(h, self.offsets))

    def transport(self, h: Sequence[int], n: int) -> int:
        return self.divisor * n + self.shift(h)


def normalize_tuple(t: ColorTuple):
    """Return ``(normalized tuple or None, record)``; None when every color is a singleton."""
    if not t.ambient.is_integers:
        raise StructuralError("normalization is defined for tuples of integer sets")
    sets = [s.ints() for s in t.finite_sets()]
    if any(not s for s in sets):
        raise StructuralError("colors must be nonempty")
    offsets = tuple(s[0] for s in sets)
    kept = tuple(i for i, s in enumerate(sets) if len(s) >= 2)
    singletons = tuple(i for i, s in enumerate(sets) if len(s) == 1)
    if not kept:
        return None, NormalizationRecord(1, offsets, singletons, kept)
    d = reduce(math.gcd, (a - sets[i][0] for i in kept for a in sets[i]))
    colors = tuple(finite(Z, ((a - sets[i][0]) // d for a in sets[i])) for i in kept)
    return ColorTuple(Z, colors), NormalizationRecord(d, offsets, singletons, kept)
