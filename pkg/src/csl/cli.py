"""Command-line front end.

Exit codes: 0 ok, 2 usage or parse error, 3 unsupported structure,
4 verification failed, 5 threshold unmet, 6 capacity exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io as cio
from .covering import construct, inhomogeneous_cover
from .errors import CSLError, ShapeError, StructuralError
from .layers import decompose_layer, representation_function
from .oracle import verify_certificate
from .reports import scan_covers, scan_layers, to_csv
from .sumsets import sumset

METHODS = ["auto", "finite", "submonoid", "approx-submonoid", "finite-plus-monoid", "semilinear", "inhomogeneous"]


def _ints(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}")


def _emit(text: str, path) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _window(args):
    return cio.parse_window(args.window) if args.window else None


def cmd_sumset(args) -> int:
    tf = cio.load_tuple(args.input)
    s = sumset(tf.tuple, args.h, _window(args))
    _emit(cio.write_json(cio.encode_set(s)), args.output)
    return 0


def _build(tf, r, h, method, window):
    if method == "inhomogeneous":
        if tf.shift is None:
            raise ShapeError("method inhomogeneous needs a 'shift' array in the tuple file")
        base = verify_certificate(construct(tf.tuple, r, h, "auto", window, tf.witnesses))
        if not base.verified:
            return base
        return inhomogeneous_cover(base, tf.shift, r)
    return construct(tf.tuple, r, h, method, window, tf.witnesses)


def cmd_cover(args) -> int:
    tf = cio.load_tuple(args.input)
    cert = _build(tf, args.r, args.h, args.method, _window(args))
    if args.verify and cert.status == "unverified":
        cert = verify_certificate(cert)
    _emit(cio.write_json(cio.encode_certificate(cert)), args.output)
    if cert.status == "failed":
        rep = cert.report
        print(f"verification failed: counterexample {rep.counterexample}", file=sys.stderr)
        return 4
    return 0


def cmd_verify(args) -> int:
    tf = cio.load_tuple(args.input)
    cert = cio.decode_certificate(cio.load_json(args.certificate), tf.tuple)
    cert = verify_certificate(cert)
    _emit(cio.write_json(cio.encode_certificate(cert)), args.output)
    return 0 if cert.verified else 4


def cmd_layers(args) -> int:
    tf = cio.load_tuple(args.input)
    t = tf.tuple
    profile = representation_function(t, args.h)
    layer = profile.layer(args.t)
    out = {"h": list(profile.h), "t": args.t, "profile": cio.encode_profile(profile), "layer": layer}
    if args.structure:
        sets = [A.ints() for A in t.finite_sets()]
        lows = sum(hi * A[0] for hi, A in zip(profile.h, sets))
        H = sum(hi * A[-1] for hi, A in zip(profile.h, sets))
        # decompose relative to the smallest possible sum so the layer sits in [0, H - lows]
        s = decompose_layer([n - lows for n in layer], H - lows, args.t, profile.h)
        out["structure"] = s.to_dict()
    _emit(cio.write_json(out), args.output)
    if args.figure:
        from .plotting import plot_profile

        plot_profile(profile, args.t, args.figure)
    return 0


def cmd_scan(args) -> int:
    tf = cio.load_tuple(args.input)
    t = tf.tuple
    h_min, h_max = args.h_min, args.h_max
    if len(h_min) != t.q or len(h_max) != t.q:
        raise StructuralError(f"--h-min and --h-max need {t.q} entries")
    if args.t is not None:
        rows = scan_layers(t, args.r, args.t, h_min, h_max, jobs=args.jobs)
        text = to_csv(rows, t.q, layers=True)
    else:
        rows = scan_covers(t, args.r, h_min, h_max, args.method, _window(args), tf.witnesses, tf.shift, jobs=args.jobs)
        text = to_csv(rows, t.q)
    _emit(text, args.output)
    if args.figure:
        from .plotting import plot_scan

        title = f"r={args.r}" + (f", t={args.t}" if args.t is not None else "")
        plot_scan(rows, t.q, args.figure, title)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="csl", description="Chromatic sumsets and their covering certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, output_help="output file (default stdout)"):
        sp.add_argument("--input", required=True, help="tuple file (JSON)")
        sp.add_argument("--output", default=None, help=output_help)

    sp = sub.add_parser("sumset", help="compute h . A")
    common(sp)
    sp.add_argument("--h", type=_ints, required=True)
    sp.add_argument("--window", help="lo:hi[,lo:hi...] on the free coordinates")
    sp.set_defaults(func=cmd_sumset)

    sp = sub.add_parser("cover", help="construct a covering certificate")
    common(sp)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--h", type=_ints, required=True)
    sp.add_argument("--method", choices=METHODS, default="auto")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--window")
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("verify", help="re-verify a certificate against its tuple file")
    common(sp)
    sp.add_argument("--certificate", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("layers", help="representation profile and threshold layer")
    common(sp)
    sp.add_argument("--h", type=_ints, required=True)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--structure", action="store_true")
    sp.add_argument("--figure", help="write a bar chart of the profile to this file")
    sp.set_defaults(func=cmd_layers)

    sp = sub.add_parser("scan", help="tabulate certificates over a box of h vectors (CSV)")
    common(sp)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--t", type=int, default=None, help="scan threshold-layer covers instead")
    sp.add_argument("--h-min", type=_ints, required=True)
    sp.add_argument("--h-max", type=_ints, required=True)
    sp.add_argument("--method", choices=METHODS, default="auto")
    sp.add_argument("--window")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--figure", help="write a plot of the table to this file")
    sp.set_defaults(func=cmd_scan)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CSLError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
