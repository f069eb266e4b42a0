"""Explicit covering sets X with (r h) . A contained in X + h . A.

Every constructor returns an *unverified* certificate; ``oracle.verify_certificate``
checks the inclusion by enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Optional, Sequence

from .errors import ShapeError, StructuralError, ThresholdError
from .group import AmbientGroup, Element, Homomorphism, free_group
from .sets import (
    ColorTuple,
    Finite,
    FinitePlusMonoid,
    FiniteSet,
    HVector,
    Semilinear,
    SemilinearSet,
    TranslatedMonoid,
    Window,
    refine_to_unbounded,
)
from .sumsets import h_fold, sum_all

UNVERIFIED, VERIFIED, FAILED = "unverified", "verified", "failed"


@dataclass(frozen=True)
class CoveringCertificate:
    tuple: ColorTuple
    r: int
    h: HVector
    X: FiniteSet
    method: str
    bound: int
    window: Optional[Window] = None
    status: str = UNVERIFIED
    # inhomogeneous families: the fixed finite summand B
    shift: Optional[FiniteSet] = None
    # submonoid certificates assert (r h) . A == X + h . A
    claims_equality: bool = False
    # threshold layers: the multiplicity t
    threshold: Optional[int] = None
    report: Optional[object] = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.X)

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED


def lambda_bound(r: int, k: int) -> int:
    """binom((r+1)(k-1), k-1)."""
    if r < 1 or k < 1:
        raise StructuralError("lambda_r(k) needs r, k >= 1")
    return math.comb((r + 1) * (k - 1), k - 1)


# lattice covering of simplices -------------------------------------------


def _compositions_upto(d: int, M: int):
    """All m in N0^d with sum(m) <= M, in lexicographic order."""
    if d == 0:
        yield ()
        return
    for first in range(M + 1):
        for rest in _compositions_upto(d - 1, M - first):
            yield (first,) + rest


@dataclass(frozen=True)
class SimplexCoverPlan:
    dimension: int
    radius: int
    tile: int
    M: int
    translates: tuple

    @property
    def index_count(self) -> int:
        """Number of index vectors m before deduplication: binom(M+d, d)."""
        return math.comb(self.M + self.dimension, self.dimension)

    def covering_translate(self, x: Sequence[int]):
        """A translate u with x - u in the open tile, or None."""
        for u in self.translates:
            diff = [a - b for a, b in zip(x, u)]
            if min(diff) >= 0 and sum(diff) < self.tile:
                return u
        return None


def simplex_lattice_cover(d: int, R: int, t: int) -> SimplexCoverPlan:
    """Translates u(m)_i = ceil(t m_i / d) for m in N0^d with |m| <= floor(dR/t)."""
    if min(d, R, t) < 1:
        raise StructuralError("d, R, t must be positive")
    M = d * R // t
    seen = {}
    for m in _compositions_upto(d, M):
        u = tuple(-(-t * mi // d) for mi in m)
        seen.setdefault(u, None)
    return SimplexCoverPlan(d, R, t, M, tuple(seen))


def simplex_points(d: int, R: int):
    """Lattice points of the closed simplex {x >= 0, sum x <= R}."""
    return _compositions_upto(d, R)


# finite sets ----------------------------------------------------------------


@lru_cache(maxsize=4096)
def free_monochrome_cover(k: int, r: int, h: int) -> FiniteSet:
    """Y_h in Z^k with r h B inside Y_h + h B, B the standard basis."""
    if k < 1 or r < 1 or h < 0:
        raise StructuralError("need k, r >= 1 and h >= 0")
    g = free_group(k)
    if h == 0:
        return FiniteSet.zero(g)
    if k == 1:
        return FiniteSet(g, frozenset([((r - 1) * h,)]))
    d = k - 1
    plan = simplex_lattice_cover(d, r * h, h)
    ys = set()
    for v in plan.translates:
        ys.add(tuple(v) + (r * h - sum(v) - h,))
    return FiniteSet(g, frozenset(ys))


def _project(g: AmbientGroup, images: Sequence[Element], Y: FiniteSet) -> FiniteSet:
    """Image of Y under the map Z^k -> g sending e_j to images[j]."""
    phi = Homomorphism(Y.ambient, g, tuple(images))
    return Y.image(phi)


@lru_cache(maxsize=16384)
def finite_set_cover(A: FiniteSet, r: int, h: int) -> FiniteSet:
    """X_h with r(hA) inside X_h + hA and |X_h| <= lambda_r(|A|).

    A is enumerated in ascending order of its elements.
    """
    if not A:
        raise StructuralError("finite_set_cover needs a nonempty set")
    elems = A.sorted()
    Y = free_monochrome_cover(len(elems), r, h)
    return _project(A.ambient, elems, Y)


def lift_colorwise(per_color_covers: Sequence[FiniteSet]) -> FiniteSet:
    if not per_color_covers:
        raise StructuralError("lift_colorwise needs at least one cover")
    return sum_all(list(per_color_covers))


def _require(t: ColorTuple, cls, method: str):
    for i, c in enumerate(t.colors):
        if not isinstance(c, cls):
            raise ShapeError(f"method {method} needs every color to be {cls.kind}; color {i} is {c.kind}")


def _check_r(r: int):
    if r < 1:
        raise StructuralError("r must be a positive integer")


def chromatic_finite_cover(t: ColorTuple, r: int, h) -> CoveringCertificate:
    _check_r(r)
    h = t.hvector(h)
    if not t.is_finite:
        raise ShapeError("method finite needs every color to be finite")
    sets = t.finite_sets()
    covers = [finite_set_cover(A, r, hi) for A, hi in zip(sets, h)]
    bound = math.prod(lambda_bound(r, len(A)) for A in sets)
    return CoveringCertificate(t, r, h, lift_colorwise(covers), "finite", bound)


# monoids ----------------------------------------------------------------------


def submonoid_exact_cover(t: ColorTuple, r: int, h) -> CoveringCertificate:
    _check_r(r)
    h = t.hvector(h)
    _require(t, TranslatedMonoid, "submonoid")
    g = t.ambient
    alpha = g.total(g.scale(hi, c.base) for c, hi in zip(t.colors, h))
    X = FiniteSet(g, frozenset([g.scale(r - 1, alpha)]))
    return CoveringCertificate(t, r, h, X, "submonoid", 1, claims_equality=True)


def approx_submonoid_bound(r: int, h: Sequence[int], sizes: Sequence[int]) -> int:
    return math.prod(math.comb((r - 1) * hi + K - 1, K - 1) for hi, K in zip(h, sizes) if hi > 0)


def approx_submonoid_cover(
    t: ColorTuple, witnesses: Sequence[FiniteSet], r: int, h, window: Window
) -> CoveringCertificate:
    """Colors a_i + M_i with M_i + M_i inside F_i + M_i; X_i = (r-1)h_i a_i + (r-1)h_i F_i.

    Each witness inclusion is checked on ``window`` before use.
    """
    from .errors import VerificationError
    from .oracle import verify_cover

    _check_r(r)
    h = t.hvector(h)
    _require(t, TranslatedMonoid, "approx-submonoid")
    if len(witnesses) != t.q:
        raise StructuralError("one witness set per color is required")
    g = t.ambient
    covers = []
    for i, (c, F, hi) in enumerate(zip(t.colors, witnesses, h)):
        if not F:
            raise StructuralError(f"witness for color {i} is empty")
        monoid = ColorTuple(g, (TranslatedMonoid(g.zero, c.monoid),))
        rep = verify_cover(monoid, 2, (1,), F, window)
        if not rep.passed:
            raise VerificationError(
                f"witness for color {i} fails M+M inside F+M at {rep.counterexample} in window {window}"
            )
        if hi == 0:
            covers.append(FiniteSet.zero(g))
            continue
        s = (r - 1) * hi
        covers.append(h_fold(F, s).translate(g.scale(s, c.base)))
    bound = approx_submonoid_bound(r, h, [len(F) for F in witnesses])
    return CoveringCertificate(t, r, h, lift_colorwise(covers), "approx-submonoid", bound, window=window)


def finite_plus_monoid_cover(t: ColorTuple, r: int, h) -> CoveringCertificate:
    _check_r(r)
    h = t.hvector(h)
    _require(t, FinitePlusMonoid, "finite-plus-monoid")
    covers = [finite_set_cover(c.core, r, hi) for c, hi in zip(t.colors, h)]
    bound = math.prod(lambda_bound(r, len(c.core)) for c in t.colors)
    return CoveringCertificate(t, r, h, lift_colorwise(covers), "finite-plus-monoid", bound)


# semilinear sets ----------------------------------------------------------------


def shell_threshold(r: int, k: int) -> int:
    """Smallest h for which the positive-shell covering is available."""
    return r * (k - 1) ** 2 + k


def positive_shell_cover(g: AmbientGroup, f: Sequence[Element], r: int, h: int) -> FiniteSet:
    """X_h with Sigma_{rh}(f) inside X_h + Sigma_h^+(f) and |X_h| <= lambda_r(k)."""
    _check_r(r)
    k = len(f)
    if k < 1:
        raise StructuralError("positive_shell_cover needs at least one element")
    f = [g.coerce(x) for x in f]
    need = shell_threshold(r, k)
    if h < need:
        raise ThresholdError(f"positive-shell covering with k={k}, r={r} needs h >= {need}, got h={h}", need)
    if k == 1:
        return FiniteSet(g, frozenset([g.scale((r - 1) * h, f[0])]))
    d = k - 1
    plan = simplex_lattice_cover(d, r * h, h - d)
    ys = set()
    for v in plan.translates:
        ys.add(tuple(vi - 1 for vi in v) + (r * h - sum(v) - (h - d),))
    return _project(g, f, FiniteSet(free_group(k), frozenset(ys)))


def _as_semilinear(c) -> SemilinearSet:
    if isinstance(c, Semilinear):
        return c.set
    if isinstance(c, SemilinearSet):
        return c
    raise ShapeError(f"method semilinear needs semilinear colors, got {getattr(c, 'kind', type(c).__name__)}")


def _union_linear_X(s: SemilinearSet, r: int, h: int, color: Optional[int] = None) -> tuple:
    refined = refine_to_unbounded(s)
    k = len(refined.pieces)
    need = shell_threshold(r, k)
    if h < need:
        where = f"color {color}: " if color is not None else ""
        raise ThresholdError(
            f"{where}union of k={k} linear sets with r={r} needs h >= r(k-1)^2+k = {need}, got h={h}",
            need,
            color,
        )
    X = positive_shell_cover(s.ambient, [p.base for p in refined.pieces], r, h)
    return X, k


def union_linear_cover(A, r: int, h: int) -> CoveringCertificate:
    """One-color certificate for a union of k unbounded linear sets."""
    _check_r(r)
    s = _as_semilinear(A)
    X, k = _union_linear_X(s, r, h)
    t = ColorTuple(s.ambient, (Semilinear(s),))
    return CoveringCertificate(t, r, HVector((h,)), X, "semilinear", lambda_bound(r, k))


def chromatic_semilinear_cover(t: ColorTuple, r: int, h) -> CoveringCertificate:
    _check_r(r)
    h = t.hvector(h)
    covers, bound = [], 1
    for i, (c, hi) in enumerate(zip(t.colors, h)):
        X, k = _union_linear_X(_as_semilinear(c), r, hi, color=i)
        covers.append(X)
        bound *= lambda_bound(r, k)
    return CoveringCertificate(t, r, h, lift_colorwise(covers), "semilinear", bound)


def semilinear_thresholds(t: ColorTuple, r: int) -> HVector:
    """Per-color thresholds r(k_i-1)^2 + k_i, with k_i counted after refinement."""
    return HVector(shell_threshold(r, len(refine_to_unbounded(_as_semilinear(c)).pieces)) for c in t.colors)


# inhomogeneous families and transport -----------------------------------------------


def inhomogeneous_cover(base: CoveringCertificate, B: FiniteSet, r: int) -> CoveringCertificate:
    """Y_h = X_h + Z with r B inside Z + B, for the family h . A + B."""
    if not base.verified:
        raise StructuralError("inhomogeneous_cover needs a verified base certificate")
    if r != base.r:
        raise StructuralError(f"r={r} differs from the base certificate's r={base.r}")
    if base.shift is not None:
        raise ShapeError("base certificate is already inhomogeneous")
    if B.ambient != base.tuple.ambient:
        raise StructuralError("B lives in a different group")
    Z = finite_set_cover(B, r, 1)
    Y = lift_colorwise([base.X, Z])
    return CoveringCertificate(
        base.tuple,
        r,
        base.h,
        Y,
        "inhomogeneous",
        base.bound * lambda_bound(r, len(B)),
        window=base.window,
        shift=B,
    )


def _reverify(cert: CoveringCertificate) -> CoveringCertificate:
    from .oracle import verify_certificate

    return verify_certificate(cert)


def transport_hom(cert: CoveringCertificate, phi: Homomorphism) -> CoveringCertificate:
    if not cert.verified:
        raise StructuralError("only verified certificates can be transported")
    if not cert.tuple.is_finite:
        raise ShapeError("homomorphic transport needs finite colors")
    colors = tuple(Finite(A.image(phi)) for A in cert.tuple.finite_sets())
    shift = cert.shift.image(phi) if cert.shift is not None else None
    moved = replace(
        cert,
        tuple=ColorTuple(phi.target, colors),
        X=cert.X.image(phi),
        shift=shift,
        status=UNVERIFIED,
        window=None,
        report=None,
        claims_equality=False,
    )
    return _reverify(moved)


def transport_affine(cert: CoveringCertificate, d: int, b: Sequence) -> CoveringCertificate:
    """Certificate for A_i' = d A_i + b_i with X' = d X + (r-1) sum h_i b_i."""
    if not cert.verified:
        raise StructuralError("only verified certificates can be transported")
    if cert.shift is not None:
        raise ShapeError("affine transport of inhomogeneous certificates is not defined")
    if d < 1:
        raise StructuralError("dilation must be positive")
    t = cert.tuple
    g = t.ambient
    b = [g.coerce(x) for x in b]
    if len(b) != t.q:
        raise StructuralError("one translation per color is required")
    beta = g.total(g.scale(hi, bi) for hi, bi in zip(cert.h, b))
    X = cert.X.dilate(d).translate(g.scale(cert.r - 1, beta))
    colors = tuple(c.affine(d, bi) for c, bi in zip(t.colors, b))
    window = None
    if cert.window is not None:
        shift = g.free_part(g.scale(cert.r, beta))
        window = Window(tuple((d * lo + s, d * hi + s) for (lo, hi), s in zip(cert.window.bounds, shift)))
    moved = replace(cert, tuple=ColorTuple(g, colors), X=X, window=window, status=UNVERIFIED, report=None)
    return _reverify(moved)


def auto_method(t: ColorTuple) -> str:
    """Pick a construction from the color shapes; mixed shapes are rejected."""
    kinds = {c.kind for c in t.colors}
    if kinds == {"translated_monoid"}:
        return "submonoid"
    if kinds == {"finite_plus_monoid"}:
        return "finite-plus-monoid"
    if kinds == {"finite"}:
        return "finite"
    if kinds == {"semilinear"}:
        return "semilinear"
    raise ShapeError(f"mixed color shapes {sorted(kinds)} have no covering construction")


def construct(t: ColorTuple, r: int, h, method: str = "auto", window: Optional[Window] = None, witnesses=None):
    """Dispatch to a constructor by name."""
    if method == "auto":
        method = auto_method(t)
    if method == "finite":
        cert = chromatic_finite_cover(t, r, h)
    elif method == "submonoid":
        cert = submonoid_exact_cover(t, r, h)
    elif method == "approx-submonoid":
        if window is None:
            from .errors import UnsupportedStructureError

            raise UnsupportedStructureError("approx-submonoid needs a window to check its witnesses")
        if witnesses is None:
            witnesses = [FiniteSet.zero(t.ambient)] * t.q
        cert = approx_submonoid_cover(t, witnesses, r, h, window)
    elif method == "finite-plus-monoid":
        cert = finite_plus_monoid_cover(t, r, h)
    elif method == "semilinear":
        cert = chromatic_semilinear_cover(t, r, h)
    else:
        raise ShapeError(f"unknown covering method {method!r}")
    if window is not None and not t.is_finite:
        cert = replace(cert, window=window)
    return cert
