"""``marble`` command line.

Exit codes: 0 success, 1 usage error, 2 recipe parse error, 3 I/O error.
Diagnostics go to stderr; data goes to files or stdout.
"""

from __future__ import annotations

import argparse
import sys
import time
from importlib import resources
from pathlib import Path

from . import bench, hydro, oracle
from .raster import SUPERSAMPLE_CHOICES, render, trace_csv, write_ppm
from .recipe import ParseError, parse

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _write_text(path, text):
    try:
        Path(path).write_text(text, newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _load_recipe(path):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return parse(data)
    except ParseError as exc:
        exc.args = (f"{path}:{exc}",)
        raise


# ---------------------------------------------------------------------------
# subcommands

def cmd_render(args):
    rec = _load_recipe(args.recipe)
    n = args.supersample or rec.supersample
    scene = rec.scene()
    t0 = time.perf_counter()
    img = render(scene, rec.base, rec.viewport, n)
    elapsed = time.perf_counter() - t0
    write_ppm(img, args.output or rec.output)
    if args.trace_csv:
        _write_text(args.trace_csv, trace_csv(scene, rec.viewport))
    if args.benchmark:
        cmp = bench.compare()
        pixels = rec.viewport.pixels_x * rec.viewport.pixels_y
        print(f"pixels_per_s {pixels / elapsed:.4g}")
        print(f"samples_per_s {pixels * n * n / elapsed:.4g}")
        print(f"closed_form_evals_per_s {cmp.closed_form_per_s:.4g}")
        print(f"quadrature_evals_per_s {cmp.quadrature_per_s:.4g}")
        print(f"speedup {cmp.speedup:.4g}")
    return EXIT_OK


def cmd_fit_report(args):
    try:
        report = oracle.fit_error_report(args.gamma, args.nu_grid, args.r_grid, args.t_grid,
                                         args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write_text(args.csv, report.to_csv())
    print(report.summary())
    return EXIT_OK


def cmd_profile_compare(args):
    try:
        rows = oracle.velocity_profile_compare(args.mode, args.lo, args.hi, args.points)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write_text(args.csv, oracle.profile_csv(rows))
    return EXIT_OK


def figure_dir():
    return resources.files("marble") / "figures"


def figure_ids():
    text = (figure_dir() / "MANIFEST").read_text()
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


def cmd_figures(args):
    known = figure_ids()
    if args.all:
        names = known
    else:
        unknown = [n for n in args.name if n not in known]
        if unknown:
            raise UsageError(f"unknown figure(s) {', '.join(unknown)}; known: {', '.join(known)}")
        names = args.name
    outdir = Path(args.outdir)
    if not outdir.is_dir():
        raise OSError(f"output directory {outdir} does not exist")
    for name in names:
        rec = parse((figure_dir() / f"{name}.mbl").read_bytes())
        img = render(rec.scene(), rec.base, rec.viewport, rec.supersample)
        write_ppm(img, outdir / f"{name}.ppm")
        print(outdir / f"{name}.ppm")
    return EXIT_OK


def cmd_physics(args):
    try:
        geom = hydro.StylusGeom(args.shape, args.diameter, args.depth)
        fluid = hydro.FluidProps(args.nu, args.rho, args.sigma, args.g)
        rep = hydro.physics_report(geom, args.speed, fluid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = rep.rows()
    if args.csv:
        print("quantity,value")
        for k, v in rows:
            print(f"{k},{v}")
    else:
        width = max(len(k) for k, _ in rows)
        for k, v in rows:
            print(f"{k:<{width}}  {v}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="marble", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("render", help="render a .mbl recipe to PPM")
    r.add_argument("recipe")
    r.add_argument("-o", "--output", help="output PPM (default: the recipe's render path)")
    r.add_argument("--supersample", type=int, choices=SUPERSAMPLE_CHOICES)
    r.add_argument("--trace-csv", help="also dump x,y,src_x,src_y per pixel")
    r.add_argument("--benchmark", action="store_true",
                   help="report pixels/s and closed-form vs quadrature evaluation rates")
    r.set_defaults(func=cmd_render)

    f = sub.add_parser("fit-report", help="closed form vs quadrature over a grid")
    f.add_argument("--gamma", type=float, nargs="+", default=list(oracle.DEFAULT_GAMMAS))
    f.add_argument("--nu-grid", type=float, nargs="+", default=list(oracle.DEFAULT_NUS))
    f.add_argument("--r-grid", type=float, nargs="+", default=list(oracle.DEFAULT_RADII))
    f.add_argument("--t-grid", type=float, nargs="+", default=list(oracle.DEFAULT_TIMES))
    f.add_argument("--tol", type=float, default=1e-10)
    f.add_argument("--csv", required=True)
    f.set_defaults(func=cmd_fit_report)

    c = sub.add_parser("profile-compare", help="normalized velocity vs closed-form rate")
    c.add_argument("--mode", required=True, choices=oracle.PROFILE_MODES)
    c.add_argument("--csv", required=True)
    c.add_argument("--lo", type=float, default=1e-4)
    c.add_argument("--hi", type=float, default=1e4)
    c.add_argument("--points", type=int, default=161)
    c.set_defaults(func=cmd_profile_compare)

    g = sub.add_parser("figures", help="render the shipped figure recipes")
    which = g.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true")
    which.add_argument("--name", action="append")
    g.add_argument("--outdir", required=True)
    g.set_defaults(func=cmd_figures)

    h = sub.add_parser("physics", help="Reynolds, drag, bubble and shedding estimates")
    h.add_argument("--shape", choices=hydro.SHAPES, default="cylinder")
    h.add_argument("--diameter", type=float, required=True)
    h.add_argument("--depth", type=float, required=True)
    h.add_argument("--speed", type=float, required=True)
    h.add_argument("--nu", type=float, default=hydro.WATER_NU)
    h.add_argument("--rho", type=float, default=hydro.WATER_RHO)
    h.add_argument("--sigma", type=float, default=hydro.WATER_SIGMA)
    h.add_argument("--g", type=float, default=hydro.G)
    h.add_argument("--csv", action="store_true", help="emit quantity,value CSV")
    h.set_defaults(func=cmd_physics)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(exc, file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(exc, file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"marble: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())
