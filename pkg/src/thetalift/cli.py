"""Command line front end.

Subcommands: orbit listings with genus-character values, lift evaluation
with chamber diagnostics, holomorphic-image coefficient tables, cycle
integral coefficients, verification suites, and SVG plots of the wall
arrangement.  Every numeric line is mirrored by machine-readable
KEY=VALUE tokens; exit codes are 2 for flag errors, 3 for unreadable
input files, 1 for a failed verification suite.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction

from .arith import DiscriminantPair
from .hyperbolic import Geodesic, geodesic_of
from .lattice import Vector, genus_character, orbit_representatives
from .lifts import (
    LiftConfig,
    chamber_correction,
    phi,
    shimura_constant,
    shintani_coeff,
    top_chamber_expansion,
    xi_phi_coefficient,
)
from .verify import SUITE_NAMES, run_all, run_suite
from .weilrep import ParseError, parse_cusp, parse_vvmf


def _g(x: float) -> str:
    return f"{x + 0.0:.15g}"   # adding 0.0 drops negative zero


def _fmt(value: complex) -> str:
    if value == 0:
        return "0"
    return f"{_g(value.real)}{value.imag + 0.0:+.15g}i"


def _mirror(**kv) -> str:
    return " ".join(f"{key}={val}" for key, val in kv.items())


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _parse_point(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected a point as x,y, got {text!r}")
    try:
        x, y = float(parts[0]), float(parts[1])
    except ValueError:
        raise ValueError(f"expected a point as x,y, got {text!r}") from None
    if y <= 0:
        raise ValueError("the point must lie in the upper half plane")
    return complex(x, y)


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_orbits(args) -> int:
    level, disc, coset = args.level, args.disc, args.coset % (2 * args.level)
    pair = DiscriminantPair(delta=args.delta, r=args.r, level=level)
    if (coset * coset - disc) % (4 * level):
        raise ValueError("coset is incompatible with the discriminant")
    reps = orbit_representatives(level, disc, coset)
    for idx, vec in enumerate(reps, start=1):
        chi = genus_character(pair, vec)
        print(f"class {idx}: a={vec.a} b={vec.b} c={vec.c}  chi={chi:+d}")
        print(_mirror(REP=idx, A=vec.a, B=vec.b, C=vec.c, CHI=chi))
    print(_mirror(COUNT=len(reps)))
    return 0


def _lift_setup(args):
    form = parse_vvmf(_read(args.form))
    cfg = LiftConfig(level=form.level, k=form.k, pair=form.pair,
                     tol=args.tolerance, modes=args.truncation)
    return form, cfg


def _cmd_phi(args) -> int:
    form, cfg = _lift_setup(args)
    z = _parse_point(args.z)
    value = phi(z, form, cfg)
    top = top_chamber_expansion(z, form, cfg)
    corr = chamber_correction(z, form, cfg)
    print(f"phi = {_fmt(value)}")
    print(_mirror(PHI_RE=_g(value.real), PHI_IM=_g(value.imag)))
    print(f"top chamber = {_fmt(top)}")
    print(_mirror(TOP_RE=_g(top.real), TOP_IM=_g(top.imag)))
    print(f"chamber correction = {_fmt(corr)}")
    print(_mirror(CORR_RE=_g(corr.real), CORR_IM=_g(corr.imag)))
    return 0


def _cmd_shimura(args) -> int:
    form, cfg = _lift_setup(args)
    if args.max_index < 1:
        raise ValueError("the coefficient range must reach at least 1")
    if cfg.k == 1:
        const = shimura_constant(form, cfg)
        print(f"constant term = {_fmt(const)}")
        print(_mirror(CONST_RE=_g(const.real), CONST_IM=_g(const.imag)))
    for m in range(1, args.max_index + 1):
        val = xi_phi_coefficient(m, form, cfg)
        print(f"b({m}) = {_fmt(val)}")
        print(_mirror(M=m, B_RE=_g(val.real), B_IM=_g(val.imag)))
    return 0


def _cmd_shintani(args) -> int:
    cusp = parse_cusp(_read(args.cusp_form))
    if cusp.weight % 2:
        raise ValueError("cusp form weight must be even")
    pair = DiscriminantPair(delta=args.delta, r=args.r, level=cusp.level)
    cfg = LiftConfig(level=cusp.level, k=cusp.weight // 2, pair=pair)
    value = shintani_coeff(cusp, args.index, args.coset, cfg, tol=args.tolerance)
    coarse = shintani_coeff(cusp, args.index, args.coset, cfg,
                            tol=args.tolerance * 1e3)
    estimate = abs(value - coarse)
    print(f"cycle coefficient at m={args.index} h={args.coset}: {_fmt(value)}"
          f" (error estimate {estimate:.2e})")
    print(_mirror(SHINTANI_RE=_g(value.real),
                  SHINTANI_IM=_g(value.imag), ERR=f"{estimate:.6e}"))
    return 0


def _cmd_verify(args) -> int:
    cfg = {}
    if args.tolerance is not None:
        cfg["tolerance"] = args.tolerance
    if args.suite == "all":
        reports = run_all(cfg)
    else:
        reports = [run_suite(args.suite, cfg)]
    for rep in reports:
        state = "pass" if rep.passed else "FAIL"
        print(f"suite {rep.suite}: {rep.cases} cases, max residual "
              f"{rep.max_residual:.3e}, tolerance {rep.tolerance:.1e}: {state}")
        print(rep.line())
    return 0 if all(rep.passed for rep in reports) else 1


# ---------------------------------------------------------------------------
# Wall plotting

_WINDOW = (-2.0, 2.0, 2.0)   # x range and y cap
_MIN_RADIUS = 0.04
_SCALE = 200.0


def _wall_classes(form):
    classes = set()
    for (n, h), coeff in form.cplus.items():
        if n >= 0 or not coeff:
            continue
        disc = Fraction(-4 * form.level * n * form.pair.abs_delta)
        if disc.denominator != 1:
            raise ValueError("principal exponent off the discriminant grid")
        classes.add((int(disc), (form.pair.r * h) % (2 * form.level)))
    return sorted(classes)


def _window_geodesics(level: int, disc: int, coset: int) -> list[Geodesic]:
    x0, x1, ymax = _WINDOW
    two_n = 2 * level
    cosets = {coset % two_n, (-coset) % two_n}
    seen = set()
    out = []

    def push(vec: Vector):
        geo = geodesic_of(vec, level)
        key = (round(geo.foot, 9), round(geo.center, 9), round(geo.radius, 9))
        if key not in seen:
            seen.add(key)
            out.append(geo)

    root = math.isqrt(disc)
    if root * root == disc and root % two_n in cosets:
        # vertical walls with feet a/b inside the window
        b = root
        for a in range(math.ceil(x0 * b), math.floor(x1 * b) + 1):
            push(Vector(a, b, 0))
    cmax = int(math.sqrt(disc) / (2 * level * _MIN_RADIUS)) + 1
    for c in range(1, cmax + 1):
        radius = math.sqrt(disc) / (2 * c * level)
        if radius < _MIN_RADIUS:
            break
        blo = math.ceil(2 * level * c * (x0 - radius))
        bhi = math.floor(2 * level * c * (x1 + radius))
        for b in range(blo, bhi + 1):
            if b % two_n not in cosets:
                continue
            if (b * b - disc) % (4 * level * c):
                continue
            push(Vector((b * b - disc) // (4 * level * c), b, c))
    return out


def _svg_root():
    x0, x1, ymax = _WINDOW
    width = (x1 - x0) * _SCALE
    height = ymax * _SCALE
    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "version": "1.1",
        "width": f"{width:.0f}",
        "height": f"{height:.0f}",
        "viewBox": f"0 0 {width:.0f} {height:.0f}",
    })
    defs = ET.SubElement(svg, "defs")
    marker = ET.SubElement(defs, "marker", {
        "id": "arrow", "orient": "auto", "markerWidth": "8",
        "markerHeight": "8", "refX": "4", "refY": "4",
    })
    ET.SubElement(marker, "path", {"d": "M0,0 L8,4 L0,8 z", "fill": "#c22"})
    clip = ET.SubElement(defs, "clipPath", {"id": "window"})
    ET.SubElement(clip, "rect", {"x": "0", "y": "0",
                                 "width": f"{width:.0f}",
                                 "height": f"{height:.0f}"})
    ET.SubElement(svg, "rect", {
        "x": "0", "y": "0", "width": f"{width:.0f}", "height": f"{height:.0f}",
        "fill": "white", "stroke": "#333", "stroke-width": "1",
    })
    group = ET.SubElement(svg, "g", {
        "clip-path": "url(#window)", "stroke": "#1a6688", "fill": "none",
        "stroke-width": "2", "marker-mid": "url(#arrow)",
    })
    return svg, group


def _px(x: float) -> float:
    return (x - _WINDOW[0]) * _SCALE


def _py(y: float) -> float:
    return (_WINDOW[2] - y) * _SCALE


def _wall_path(geo: Geodesic) -> str:
    ymax = _WINDOW[2]
    if geo.vertical:
        xs = _px(geo.foot)
        ys = [_py(0.0), _py(ymax / 2), _py(ymax)]
        if not geo.counterclockwise:
            ys.reverse()
        return (f"M {xs:.2f},{ys[0]:.2f} L {xs:.2f},{ys[1]:.2f} "
                f"L {xs:.2f},{ys[2]:.2f}")
    r = geo.radius * _SCALE
    left = (_px(geo.center - geo.radius), _py(0.0))
    apex = (_px(geo.center), _py(geo.radius))
    right = (_px(geo.center + geo.radius), _py(0.0))
    # counterclockwise runs from the right foot over the apex to the left
    if geo.counterclockwise:
        start, end, sweep = right, left, 0
    else:
        start, end, sweep = left, right, 1
    return (f"M {start[0]:.2f},{start[1]:.2f} "
            f"A {r:.2f} {r:.2f} 0 0 {sweep} {apex[0]:.2f},{apex[1]:.2f} "
            f"A {r:.2f} {r:.2f} 0 0 {sweep} {end[0]:.2f},{end[1]:.2f}")


def _cmd_plot(args) -> int:
    form = parse_vvmf(_read(args.form))
    svg, group = _svg_root()
    count = 0
    for disc, coset in _wall_classes(form):
        for geo in _window_geodesics(form.level, disc, coset):
            ET.SubElement(group, "path", {"d": _wall_path(geo)})
            count += 1
    tree = ET.ElementTree(svg)
    ET.indent(tree)
    tree.write(args.output, encoding="unicode", xml_declaration=True)
    print(f"wrote {args.output} with {count} wall arcs")
    print(_mirror(WALLS=count, OUTPUT=args.output))
    return 0


# ---------------------------------------------------------------------------
# Parser and dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thetalift", add_help=False,
                                     description=__doc__)
    parser.add_argument("--help", action="help")
    sub = parser.add_subparsers(dest="command", required=True)

    orbits = sub.add_parser("orbits", add_help=False,
                            help="orbit representatives with genus characters")
    orbits.add_argument("--help", action="help")
    orbits.add_argument("-N", "--level", type=int, required=True)
    orbits.add_argument("-D", "--disc", type=int, required=True)
    orbits.add_argument("-h", "--coset", type=int, required=True)
    orbits.add_argument("--delta", type=int, default=1)
    orbits.add_argument("--r", type=int, default=1)
    orbits.set_defaults(run=_cmd_orbits)

    def lift_flags(cmd):
        cmd.add_argument("--help", action="help")
        cmd.add_argument("-f", "--form", required=True,
                         help="coefficient file (VVMF format)")
        cmd.add_argument("--tolerance", type=float, default=1e-10)
        cmd.add_argument("--truncation", type=int, default=None)

    phi_cmd = sub.add_parser("phi", add_help=False,
                             help="evaluate the lift with chamber diagnostics")
    lift_flags(phi_cmd)
    phi_cmd.add_argument("-z", required=True, help="point as x,y")
    phi_cmd.set_defaults(run=_cmd_phi)

    shimura = sub.add_parser("shimura", add_help=False,
                             help="coefficients of the holomorphic image")
    lift_flags(shimura)
    shimura.add_argument("-m", "--max-index", type=int, required=True)
    shimura.set_defaults(run=_cmd_shimura)

    shintani = sub.add_parser("shintani", add_help=False,
                              help="cycle-integral coefficients of a cusp form")
    shintani.add_argument("--help", action="help")
    shintani.add_argument("-g", "--cusp-form", required=True,
                          help="cusp form file (CUSP format)")
    shintani.add_argument("-m", "--index", type=Fraction, required=True)
    shintani.add_argument("-h", "--coset", type=int, required=True)
    shintani.add_argument("--delta", type=int, default=1)
    shintani.add_argument("--r", type=int, default=1)
    shintani.add_argument("--tolerance", type=float, default=1e-11)
    shintani.set_defaults(run=_cmd_shintani)
    # let negative fractions like -5/4 pass as option values
    shintani._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    verify = sub.add_parser("verify", add_help=False,
                            help="run certification suites")
    verify.add_argument("--help", action="help")
    verify.add_argument("--suite", required=True,
                        choices=("all",) + SUITE_NAMES)
    verify.add_argument("--tolerance", type=float, default=None)
    verify.set_defaults(run=_cmd_verify)

    plot = sub.add_parser("plot", add_help=False,
                          help="draw the wall arrangement as SVG")
    plot.add_argument("--help", action="help")
    plot.add_argument("-f", "--form", required=True)
    plot.add_argument("-o", "--output", required=True)
    plot.set_defaults(run=_cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
