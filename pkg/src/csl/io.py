"""JSON encodings for elements, tuple files, certificates and layer reports.

Elements of Z are bare integers, elements of Z^d are arrays, and elements of
groups with torsion are objects ``{"free": [...], "torsion": [...]}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .covering import CoveringCertificate
from .errors import StructuralError
from .group import AmbientGroup
from .sets import (
    ColorTuple,
    Finite,
    FinitePlusMonoid,
    FiniteSet,
    LinearSet,
    MonoidDesc,
    Semilinear,
    SemilinearSet,
    TranslatedMonoid,
    Window,
)


def encode_element(g: AmbientGroup, x):
    if g.is_integers:
        return x[0]
    if not g.torsion:
        return list(x)
    return {"free": list(g.free_part(x)), "torsion": list(g.torsion_part(x))}


def decode_element(g: AmbientGroup, value):
    if isinstance(value, bool):
        raise StructuralError(f"{value!r} is not an element encoding")
    if isinstance(value, dict):
        try:
            return g.element(value.get("free", []), value.get("torsion", []))
        except (TypeError, ValueError) as exc:
            raise StructuralError(f"bad element {value!r}: {exc}") from exc
    if isinstance(value, int):
        return g.coerce(value)
    if isinstance(value, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        return g.coerce(value)
    raise StructuralError(f"{value!r} is not an element encoding for {g}")


def encode_set(s: FiniteSet) -> list:
    return [encode_element(s.ambient, x) for x in s.sorted()]


def decode_set(g: AmbientGroup, values) -> FiniteSet:
    if not isinstance(values, list):
        raise StructuralError(f"expected an array of elements, got {values!r}")
    return FiniteSet(g, frozenset(decode_element(g, v) for v in values))


def encode_ambient(g: AmbientGroup) -> dict:
    return {"free_rank": g.free_rank, "torsion": list(g.torsion)}


def decode_ambient(obj) -> AmbientGroup:
    if not isinstance(obj, dict):
        raise StructuralError("ambient must be an object with free_rank and torsion")
    return AmbientGroup(int(obj.get("free_rank", 1)), tuple(obj.get("torsion", [])))


def encode_window(w: Optional[Window]):
    return None if w is None else [list(b) for b in w.bounds]


def decode_window(obj) -> Optional[Window]:
    if obj is None:
        return None
    return Window(tuple(tuple(b) for b in obj))


def parse_window(text: str) -> Window:
    """``lo:hi[,lo:hi...]`` as used on the command line."""
    bounds = []
    for part in text.split(","):
        lo, sep, hi = part.partition(":")
        if not sep:
            raise StructuralError(f"window interval {part!r} is not of the form lo:hi")
        try:
            bounds.append((int(lo), int(hi)))
        except ValueError as exc:
            raise StructuralError(f"window interval {part!r} is not numeric") from exc
    return Window(tuple(bounds))


# tuple files --------------------------------------------------------------------


def _decode_color(g: AmbientGroup, obj):
    kind = obj.get("kind")
    if kind == "finite":
        return Finite(decode_set(g, obj["elements"]))
    if kind == "semilinear":
        pieces = []
        for p in obj["pieces"]:
            gens = tuple(decode_element(g, b) for b in p.get("generators", []))
            bounds = p.get("bounds")
            pieces.append(LinearSet(g, decode_element(g, p["base"]), gens, tuple(bounds) if bounds is not None else None))
        return Semilinear(SemilinearSet(g, tuple(pieces)))
    if kind == "finite_plus_monoid":
        monoid = MonoidDesc(g, tuple(decode_element(g, b) for b in obj["monoid"]))
        return FinitePlusMonoid(decode_set(g, obj["core"]), monoid)
    if kind == "translated_monoid":
        monoid = MonoidDesc(g, tuple(decode_element(g, b) for b in obj["monoid"]))
        return TranslatedMonoid(decode_element(g, obj["base"]), monoid)
    raise StructuralError(f"unknown color kind {kind!r}")


def encode_color(c) -> dict:
    g = c.ambient
    enc = lambda x: encode_element(g, x)  # noqa: E731
    if isinstance(c, Finite):
        return {"kind": "finite", "elements": encode_set(c.set)}
    if isinstance(c, Semilinear):
        pieces = []
        for p in c.set.pieces:
            piece = {"base": enc(p.base), "generators": [enc(b) for b in p.generators]}
            if p.bounds is not None:
                piece["bounds"] = list(p.bounds)
            pieces.append(piece)
        return {"kind": "semilinear", "pieces": pieces}
    if isinstance(c, FinitePlusMonoid):
        return {"kind": "finite_plus_monoid", "core": encode_set(c.core), "monoid": [enc(b) for b in c.monoid.generators]}
    if isinstance(c, TranslatedMonoid):
        return {"kind": "translated_monoid", "base": enc(c.base), "monoid": [enc(b) for b in c.monoid.generators]}
    raise StructuralError(f"cannot encode {c!r}")


class TupleFile:
    """A parsed tuple file: the tuple plus the optional extras some methods use."""

    def __init__(self, tuple: ColorTuple, witnesses=None, shift: Optional[FiniteSet] = None):
        self.tuple = tuple
        self.witnesses = witnesses
        self.shift = shift


def decode_tuple(obj) -> TupleFile:
    if not isinstance(obj, dict) or "colors" not in obj:
        raise StructuralError("tuple file must be an object with 'ambient' and 'colors'")
    g = decode_ambient(obj.get("ambient", {"free_rank": 1, "torsion": []}))
    try:
        colors = tuple(_decode_color(g, c) for c in obj["colors"])
    except (KeyError, TypeError) as exc:
        raise StructuralError(f"malformed color description: {exc}") from exc
    t = ColorTuple(g, colors)
    witnesses = None
    if any(isinstance(c, dict) and "witness" in c for c in obj["colors"]):
        witnesses = [decode_set(g, c.get("witness", [encode_element(g, g.zero)])) for c in obj["colors"]]
    shift = decode_set(g, obj["shift"]) if obj.get("shift") is not None else None
    return TupleFile(t, witnesses, shift)


def encode_tuple(t: ColorTuple, shift: Optional[FiniteSet] = None) -> dict:
    obj = {"ambient": encode_ambient(t.ambient), "colors": [encode_color(c) for c in t.colors]}
    if shift is not None:
        obj["shift"] = encode_set(shift)
    return obj


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise StructuralError(f"{path}: {exc.strerror}") from exc


def load_tuple(path) -> TupleFile:
    return decode_tuple(load_json(path))


def write_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if path is not None and str(path) != "-":
        Path(path).write_text(text, encoding="utf-8")
    return text


# certificates -------------------------------------------------------------------


def encode_certificate(cert: CoveringCertificate) -> dict:
    g = cert.tuple.ambient
    obj = {
        "method": cert.method,
        "r": cert.r,
        "h": list(cert.h),
        "X": encode_set(cert.X),
        "window": encode_window(cert.window),
        "bound": cert.bound,
        "status": cert.status,
        "size": cert.size,
    }
    if cert.threshold is not None:
        obj["t"] = cert.threshold
    if cert.shift is not None:
        obj["B"] = encode_set(cert.shift)
    if cert.claims_equality:
        obj["equality"] = cert.report.equality if cert.report is not None else None
    if cert.report is not None and not cert.report.passed:
        obj["counterexample"] = encode_element(g, cert.report.counterexample)
    return obj


def decode_certificate(obj, t: ColorTuple) -> CoveringCertificate:
    """Rebuild a certificate against its tuple; the stored status is kept as-is."""
    g = t.ambient
    try:
        shift = decode_set(g, obj["B"]) if obj.get("B") is not None else None
        return CoveringCertificate(
            t,
            int(obj["r"]),
            t.hvector(obj["h"]),
            decode_set(g, obj["X"]),
            obj["method"],
            int(obj["bound"]),
            window=decode_window(obj.get("window")),
            status=obj.get("status", "unverified"),
            shift=shift,
            claims_equality=obj["method"] == "submonoid",
            threshold=obj.get("t"),
        )
    except KeyError as exc:
        raise StructuralError(f"certificate lacks field {exc}") from exc


def encode_profile(profile) -> dict:
    return {str(n): c for n, c in sorted(profile.counts.items())}

