"""Finitely generated abelian groups Z^d x Z/n1 x ... x Z/nk.

Elements are plain tuples of ints: the free coordinates followed by the
torsion coordinates, the latter always reduced into ``[0, n_i)``.  Keeping
them as tuples makes hashing, equality and ordering the built-in ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .config import capacity
from .errors import OverflowCoordinateError, StructuralError

Element = tuple


@dataclass(frozen=True)
class AmbientGroup:
    free_rank: int = 1
    torsion: tuple = ()
    coordinate_bound: int = field(default_factory=lambda: capacity().coordinate, compare=False, repr=False)

    def __post_init__(self):
        if self.free_rank < 0:
            raise StructuralError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(int(n) for n in self.torsion))
        if any(n < 2 for n in self.torsion):
            raise StructuralError(f"torsion moduli must be >= 2, got {list(self.torsion)}")

    @property
    def rank(self) -> int:
        """Total number of coordinates."""
        return self.free_rank + len(self.torsion)

    @property
    def is_integers(self) -> bool:
        return self.free_rank == 1 and not self.torsion

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def __str__(self):
        parts = ["Z"] * self.free_rank if self.free_rank <= 2 else [f"Z^{self.free_rank}"]
        parts += [f"Z/{n}" for n in self.torsion]
        return " x ".join(parts) or "0"

    # construction -------------------------------------------------------

    def element(self, free: Sequence[int] = (), torsion: Sequence[int] = ()) -> Element:
        free = tuple(int(v) for v in free)
        torsion = tuple(int(v) for v in torsion)
        if len(free) != self.free_rank or len(torsion) != len(self.torsion):
            raise StructuralError(
                f"element with {len(free)} free and {len(torsion)} torsion coordinates "
                f"does not belong to {self}"
            )
        x = free + tuple(v % n for v, n in zip(torsion, self.torsion))
        self._check_bound(x)
        return x

    def coerce(self, value) -> Element:
        """Accept an int (rank-one groups), a flat sequence, or an existing element."""
        if isinstance(value, int):
            if self.rank != 1:
                raise StructuralError(f"bare integer {value} given for {self}")
            value = (value,)
        value = tuple(int(v) for v in value)
        if len(value) != self.rank:
            raise StructuralError(f"{value} has {len(value)} coordinates, {self} needs {self.rank}")
        return self.element(value[: self.free_rank], value[self.free_rank :])

    def free_part(self, x: Element) -> tuple:
        return x[: self.free_rank]

    def torsion_part(self, x: Element) -> tuple:
        return x[self.free_rank :]

    def check(self, x) -> None:
        if not isinstance(x, tuple) or len(x) != self.rank:
            raise StructuralError(f"{x!r} is not an element of {self}")
        for v, n in zip(x[self.free_rank :], self.torsion):
            if not 0 <= v < n:
                raise StructuralError(f"{x!r} has an unreduced torsion coordinate")

    def _check_bound(self, x: Element) -> None:
        bound = self.coordinate_bound
        for v in x[: self.free_rank]:
            if v > bound or v < -bound:
                raise OverflowCoordinateError(f"coordinate {v} exceeds the bound {bound}")

    # arithmetic ---------------------------------------------------------

    def add(self, x: Element, y: Element) -> Element:
        k = self.free_rank
        s = tuple(a + b for a, b in zip(x[:k], y[:k])) + tuple(
            (a + b) % n for a, b, n in zip(x[k:], y[k:], self.torsion)
        )
        self._check_bound(s)
        return s

    def neg(self, x: Element) -> Element:
        return self.scale(-1, x)

    def sub(self, x: Element, y: Element) -> Element:
        return self.add(x, self.neg(y))

    def scale(self, n: int, x: Element) -> Element:
        k = self.free_rank
        s = tuple(n * a for a in x[:k]) + tuple((n * a) % m for a, m in zip(x[k:], self.torsion))
        self._check_bound(s)
        return s

    def total(self, xs: Iterable[Element]) -> Element:
        s = self.zero
        for x in xs:
            s = self.add(s, x)
        return s

    def order_divides(self, x: Element, n: int) -> bool:
        """True when n*x is the identity."""
        return self.scale(n, x) == self.zero

    def generators(self) -> list:
        """The standard generators e_1, ..., e_rank."""
        gens = []
        for i in range(self.rank):
            e = [0] * self.rank
            e[i] = 1
            gens.append(tuple(e))
        return gens


Z = AmbientGroup(1)


def free_group(k: int) -> AmbientGroup:
    return AmbientGroup(k)


def cyclic(n: int) -> AmbientGroup:
    return AmbientGroup(0, (n,))


def _same(g: AmbientGroup, *xs) -> None:
    for x in xs:
        g.check(x)


def element_add(g: AmbientGroup, x: Element, y: Element) -> Element:
    _same(g, x, y)
    return g.add(x, y)


def element_scale(g: AmbientGroup, n: int, x: Element) -> Element:
    _same(g, x)
    return g.scale(n, x)


@dataclass(frozen=True)
class Homomorphism:
    """A homomorphism given by the images of the source's standard generators."""

    source: AmbientGroup
    target: AmbientGroup
    images: tuple

    def __post_init__(self):
        images = tuple(self.target.coerce(y) for y in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source.rank:
            raise StructuralError(
                f"{self.source} has {self.source.rank} generators but {len(images)} images were given"
            )
        for n, y in zip(self.source.torsion, images[self.source.free_rank :]):
            if not self.target.order_divides(y, n):
                raise StructuralError(f"image {y} of a generator of order {n} has order not dividing {n}")

    def __call__(self, x: Element) -> Element:
        return hom_apply(self, x)

    @classmethod
    def identity(cls, g: AmbientGroup) -> "Homomorphism":
        return cls(g, g, tuple(g.generators()))

    @classmethod
    def reduction(cls, modulus: int) -> "Homomorphism":
        """Z -> Z/modulus."""
        return cls(Z, cyclic(modulus), ((1,),))


def hom_apply(phi: Homomorphism, x: Element) -> Element:
    phi.source.check(x)
    target = phi.target
    acc = target.zero
    for coeff, image in zip(x, phi.images):
        if coeff:
            acc = target.add(acc, target.scale(coeff, image))
    return acc


@dataclass(frozen=True)
class AffineMap:
    """x -> dilation * x + translation."""

    dilation: int
    translation: Element

    def __post_init__(self):
        if self.dilation < 1:
            raise StructuralError("dilation must be a positive integer")

    def apply(self, g: AmbientGroup, x: Element) -> Element:
        return g.add(g.scale(self.dilation, x), self.translation)
