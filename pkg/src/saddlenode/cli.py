"""Command-line front end: JSON on stdout, diagnostics on stderr.

Exit codes: 0 success (and, for verify, all checks passed), 1 verify ran but
failed, 2 usage errors, 3 numerical failures (JSON error object on stderr).
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys

from .conjugacy import ConjugacyMap, phi
from .errors import SaddleNodeError, UnknownSuite
from .foliation import (
    HalfPlane,
    Sector,
    formal_series_coefficients,
    hankel_closed_form,
    hankel_numeric,
    leaf_invert,
    leaf_value,
    stokes_estimate,
)
from .plotting import render_leaves, trace_leaves
from .projective import Chart, ProjectivePoint, chart_transition
from .verify import SuiteConfig, aggregate_pass, run_all, run_suite

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
# three unambiguous forms: RE, IMi, RE(+-)IMi; the sign before the imaginary
# part is mandatory in the combined form so "1.9i" cannot split as 1 + .9i
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>[+-]?{_NUM})(?:(?P<im>[+-]{_NUM})i)?|(?P<im_only>[+-]?{_NUM})i)$")


def parse_complex(text: str) -> complex:
    """Literals RE, IMi, or RE+IMi / RE-IMi, with optional exponents."""
    m = _COMPLEX_RE.match(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a complex literal (use forms like 0.05, "
            "0.09i, 0.3+0.4i, 1e-3-2.5e-2i)")
    re_part = float(m.group("re")) if m.group("re") is not None else 0.0
    im = m.group("im") if m.group("im") is not None else m.group("im_only")
    im_part = float(im) if im is not None else 0.0
    return complex(re_part, im_part)


def _sector(text: str) -> Sector:
    try:
        return Sector.from_str(text)
    except Exception:
        raise argparse.ArgumentTypeError(f"sector must be plus or minus, not {text!r}")


def _c2d(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _emit(obj) -> None:
    json.dump(obj, sys.stdout)
    sys.stdout.write("\n")


def _cmd_leaf(args) -> int:
    y = leaf_value(args.alpha, args.sector, args.c, args.x)
    _emit(_c2d(y))
    return 0


def _cmd_invert(args) -> int:
    c = leaf_invert(args.alpha, args.sector, args.x, args.y)
    _emit(_c2d(c))
    return 0


def _nonzero_complex(text: str) -> complex:
    z = parse_complex(text)
    if z == 0:
        raise argparse.ArgumentTypeError("must be nonzero")
    return z


def _cmd_stokes(args) -> int:
    r = abs(args.x)
    est0 = stokes_estimate(args.alpha, HalfPlane.RE_POS, r)
    est1 = stokes_estimate(args.alpha, HalfPlane.RE_NEG, -r)
    exact0 = 1.0 + args.alpha
    exact1 = 1.0 - args.alpha
    _emit({
        "tau0_est": _c2d(est0),
        "tau0_exact": _c2d(exact0),
        "tau1_est": _c2d(est1),
        "tau1_exact": _c2d(exact1),
        "max_err": max(abs(est0 - exact0), abs(est1 - exact1)),
    })
    return 0


def _cmd_hankel(args) -> int:
    closed = hankel_closed_form(args.a, args.j)
    numeric = hankel_numeric(args.a, args.j)
    _emit({
        "numeric": _c2d(numeric),
        "closed": _c2d(closed),
        "rel_err": abs(numeric - closed) / abs(closed),
    })
    return 0


_BATCH_HEADER = ["re_x", "im_x", "re_y", "im_y"]
_BATCH_HEADER_OUT = _BATCH_HEADER + ["re_X", "im_X", "re_Y", "im_Y"]


def _cmd_map(args, parser) -> int:
    cmap = ConjugacyMap(args.alpha)
    if args.input is None and args.output is None:
        if args.x is None or args.y is None:
            parser.error("map needs either --x and --y or --input and --output")
        x_img, y_img = phi(cmap, args.x, args.y)
        _emit({"X": _c2d(x_img), "Y": _c2d(y_img)})
        return 0
    if args.input is None or args.output is None:
        parser.error("batch map needs both --input and --output")
    if args.x is not None or args.y is not None:
        parser.error("give either --x/--y or --input/--output, not both")
    with open(args.input, newline="") as fh_in:
        reader = csv.reader(fh_in)
        header = next(reader, None)
        if header != _BATCH_HEADER:
            parser.error(f"input header must be exactly {','.join(_BATCH_HEADER)}")
        with open(args.output, "w", newline="") as fh_out:
            writer = csv.writer(fh_out)
            writer.writerow(_BATCH_HEADER_OUT)
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 4:
                    parser.error(f"line {lineno}: expected 4 columns")
                try:
                    vals = [float(v) for v in row]
                except ValueError:
                    parser.error(f"line {lineno}: non-numeric field")
                x = complex(vals[0], vals[1])
                y = complex(vals[2], vals[3])
                x_img, y_img = phi(cmap, x, y)
                writer.writerow(row + [repr(x_img.real), repr(x_img.imag),
                                       repr(y_img.real), repr(y_img.imag)])
    print(f"mapped {args.input} -> {args.output}", file=sys.stderr)
    return 0


def _cmd_chart(args) -> int:
    point = ProjectivePoint(Chart(args.src), (args.p1, args.p2))
    out = chart_transition(point, Chart(args.to))
    _emit({
        "chart": out.chart.value,
        "p1": _c2d(out.coords[0]),
        "p2": _c2d(out.coords[1]),
    })
    return 0


def _cmd_verify(args, parser) -> int:
    if args.suite == "all":
        reports = run_all(args.alpha, seed=args.seed, samples=args.samples)
        _emit([r.as_dict() for r in reports])
        return 0 if aggregate_pass(reports) else 1
    try:
        cfg = SuiteConfig(args.suite, args.alpha, samples=args.samples,
                          seed=args.seed, tolerance=args.tol)
    except (UnknownSuite, ValueError) as exc:
        parser.error(str(exc))
    report = run_suite(cfg)
    _emit(report.as_dict())
    return 0 if report.passed else 1


def _cmd_series(args) -> int:
    coeffs = formal_series_coefficients(args.order)
    _emit({"coefficients": coeffs})
    return 0


def _cmd_plot_leaves(args, parser) -> int:
    if not args.out.lower().endswith((".svg", ".csv")):
        parser.error("--out must end in .svg or .csv")
    trace = trace_leaves(args.alpha, args.radius, args.count)
    written = render_leaves(trace, args.out)
    for p in written:
        print(f"wrote {p}", file=sys.stderr)
    _emit({"written": [str(p) for p in written]})
    return 0


class _Parser(argparse.ArgumentParser):
    # let option values like -0.5-0.3i through (the stock matcher only accepts
    # plain negative decimals, so complex literals would be read as flags)
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d|^-\.\d")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="saddlenode",
        description="Sectorial solutions, connection constants, and the "
                    "model conjugacy for the degenerate planar foliation "
                    "family.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("leaf", help="evaluate a sectorial solution")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--sector", type=_sector, required=True)
    p.add_argument("--c", type=parse_complex, required=True)
    p.add_argument("--x", type=parse_complex, required=True)
    p.set_defaults(func=_cmd_leaf)

    p = sub.add_parser("invert", help="leaf coordinate through a point")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--sector", type=_sector, required=True)
    p.add_argument("--x", type=parse_complex, required=True)
    p.add_argument("--y", type=parse_complex, required=True)
    p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("stokes", help="estimate the connection constants")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--x", type=_nonzero_complex, default=0.6 + 0j,
                   help="probe magnitude; both half-planes use |x| (default 0.6)")
    p.set_defaults(func=_cmd_stokes)

    p = sub.add_parser("hankel", help="contour integral vs closed form")
    p.add_argument("--a", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--j", type=int, required=True, choices=(0, 1))
    p.set_defaults(func=_cmd_hankel)

    p = sub.add_parser("map", help="apply the conjugacy (single point or CSV batch)")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--x", type=parse_complex)
    p.add_argument("--y", type=parse_complex)
    p.add_argument("--input", help="CSV with header re_x,im_x,re_y,im_y")
    p.add_argument("--output", help="CSV extended with re_X,im_X,re_Y,im_Y")
    p.set_defaults(func=_cmd_map, needs_parser=True)

    p = sub.add_parser("chart", help="re-coordinatize a projective point")
    p.add_argument("--from", dest="src", required=True, choices=("xy", "st", "uv"))
    p.add_argument("--to", required=True, choices=("xy", "st", "uv"))
    p.add_argument("--p1", type=parse_complex, required=True)
    p.add_argument("--p2", type=parse_complex, required=True)
    p.set_defaults(func=_cmd_chart)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--suite", required=True)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=_cmd_verify, needs_parser=True)

    p = sub.add_parser("series", help="formal solution coefficients (exact)")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("plot-leaves", help="trace leaves on a circle to SVG/CSV")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_plot_leaves, needs_parser=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "needs_parser", False):
            return args.func(args, parser)
        return args.func(args)
    except SaddleNodeError as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
