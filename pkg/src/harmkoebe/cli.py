"""
Command-line interface.

    harmkoebe coeffs kar:a=2,R=1 --n 8 --format json
    harmkoebe verify marty --a 2 --R 1
    harmkoebe collide --a 2.5 --R 0.5
    harmkoebe render halfplane --out halfplane.svg --figure halfplane.png

Exit status: 0 on success, 1 when a verification fails (``verify``) or no
collision is found (``collide``), 2 on usage or evaluation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import analysis, suites
from .errors import KoebeError
from .mapspec import build, parse_map_spec
from .maps import AnalyticMap
from .render import RenderSpec, build_grid_image, to_ppm, to_svg
from .shear import make_KaR

MAX_N = 256
EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def parse_complex(text: str) -> complex:
    """``"re"``, ``"re,im"`` or a Python complex literal such as ``"0.3+0.1j"``."""
    text = text.strip()
    if "," in text:
        re, im = text.split(",", 1)
        return complex(float(re), float(im))
    return complex(text.replace("i", "j"))


def _series_rows(S, part=None):
    pre = f"{part}," if part else ""
    return [f"{pre}{n},{c.real:.17g},{c.imag:.17g}" for n, c in enumerate(S.coeffs)]


def cmd_coeffs(spec_text: str, N: int = 8, fmt: str = "csv") -> str:
    if not 0 <= N <= MAX_N:
        raise KoebeError(f"--n must lie in [0, {MAX_N}], got {N}")
    f = build(parse_map_spec(spec_text))
    if isinstance(f, AnalyticMap):
        S = f.series(N)
        return S.to_json() + "\n" if fmt == "json" else S.to_csv()
    h, g = f.series(N)
    if fmt == "json":
        return json.dumps({"h": h.to_dict(), "g": g.to_dict()}) + "\n"
    rows = ["part,n,re,im"] + _series_rows(h, "h") + _series_rows(g, "g")
    return "\n".join(rows) + "\n"


def read_coeffs(text: str):
    """Inverse of :func:`cmd_coeffs`: a :class:`Series` or an ``(h, g)`` pair."""
    from .series import Series

    text = text.strip()
    if text.startswith("{"):
        d = json.loads(text)
        if "h" in d:
            return Series.from_dict(d["h"]), Series.from_dict(d["g"])
        return Series.from_dict(d)
    lines = text.splitlines()
    if lines[0].startswith("part,"):
        parts = {"h": [], "g": []}
        for line in lines[1:]:
            p, rest = line.split(",", 1)
            parts[p].append(rest)
        return tuple(Series.from_csv("\n".join(parts[p])) for p in ("h", "g"))
    return Series.from_csv(text)


def cmd_eval(spec_text: str, points, fmt: str = "csv") -> str:
    f = build(parse_map_spec(spec_text))
    z = np.array(points, dtype=complex)
    w = np.atleast_1d(f.value(z))
    if fmt == "json":
        return json.dumps([{"z": [p.real, p.imag], "w": [v.real, v.imag]}
                           for p, v in zip(z, w)]) + "\n"
    rows = ["re_z,im_z,re_w,im_w"]
    rows += [f"{p.real:.17g},{p.imag:.17g},{v.real:.17g},{v.imag:.17g}" for p, v in zip(z, w)]
    return "\n".join(rows) + "\n"


def cmd_verify(suite: str, params: dict, tol: float | None = None) -> tuple[int, str]:
    report = suites.run_suite(suite, params, tol)
    text = json.dumps(report, indent=2, default=str) + "\n"
    return (EXIT_OK if report["pass"] else EXIT_FAIL), text


def cmd_collide(a: float, R: float, samples: int = 5000, seed: int = 0) -> tuple[int, str]:
    """Analytic witness for ``|a| > 2``; injectivity probe otherwise."""
    if a > 2:
        w = analysis.collision_witness(a, R)
    elif a < -2:
        w = analysis.reflected_witness(a, R)
    elif samples >= 2:
        w = analysis.injectivity_probe(make_KaR(a, R), samples, seed)
    else:
        w = None
    if w is None:
        return EXIT_FAIL, "z1,z2,image_gap,preimage_gap\n"
    return EXIT_OK, w.to_csv()


def cmd_bounds(a: float, R: float, radii, fmt: str = "csv", tol: float = 1e-9) -> tuple[int, str]:
    reports = [analysis.equality_report(a, R, r, tol=tol) for r in radii]
    ok = all(rep.passed for rep in reports)
    if fmt == "json":
        return (EXIT_OK if ok else EXIT_FAIL), json.dumps([rep.to_dict() for rep in reports],
                                                          indent=2) + "\n"
    rows = ["a,R,r,alpha,quantity,bound,measured,equal"]
    for rep in reports:
        for k, v in rep.measured.items():
            rows.append(f"{rep.a:.17g},{rep.R:.17g},{rep.r:.17g},{rep.alpha:.17g},{k},"
                        f"{rep.bound(k):.17g},{v:.17g},{int(rep.equality[k])}")
    return (EXIT_OK if ok else EXIT_FAIL), "\n".join(rows) + "\n"


def cmd_alpha_bounds(alpha: float, radii, fmt: str = "csv") -> str:
    rows = []
    for r in radii:
        g = analysis.growth_bounds(alpha, r)
        d = analysis.distortion_bounds(alpha, r)
        rows.append({"alpha": alpha, "r": r, "growth_lower": g[0], "growth_upper": g[1],
                     "distortion_lower": d[0], "distortion_upper": d[1]})
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    keys = list(rows[0])
    return "\n".join([",".join(keys)] + [",".join(f"{row[k]:.17g}" for k in keys)
                                         for row in rows]) + "\n"


def cmd_schwarzian(spec_text: str, points, grid: int | None, fmt: str = "csv") -> str:
    f = build(parse_map_spec(spec_text))
    if not isinstance(f, AnalyticMap):
        raise KoebeError("the Schwarzian is defined here for analytic maps only")
    out = {}
    if points:
        z = np.array(points, dtype=complex)
        out["values"] = np.atleast_1d(analysis.schwarzian(f, z))
        out["points"] = z
    if grid:
        out["norm"] = analysis.schwarzian_norm(f, grid)
    if fmt == "json":
        d = {}
        if "values" in out:
            d["values"] = [{"z": [p.real, p.imag], "S": [s.real, s.imag]}
                           for p, s in zip(out["points"], out["values"])]
        if "norm" in out:
            d["norm"] = out["norm"]
            d["grid"] = grid
        return json.dumps(d) + "\n"
    rows = []
    if "values" in out:
        rows.append("re_z,im_z,re_S,im_S")
        rows += [f"{p.real:.17g},{p.imag:.17g},{s.real:.17g},{s.imag:.17g}"
                 for p, s in zip(out["points"], out["values"])]
    if "norm" in out:
        rows.append("grid,norm")
        rows.append(f"{grid},{out['norm']:.17g}")
    return "\n".join(rows) + "\n"


def cmd_render(spec_text: str, rspec: RenderSpec, out: str | Path | None,
               figure: str | Path | None = None) -> bytes:
    f = build(parse_map_spec(spec_text))
    img = build_grid_image(f, rspec)
    data = to_svg(img, rspec).encode("utf-8") if rspec.fmt == "svg" else to_ppm(img, rspec)
    if out is not None:
        Path(out).write_bytes(data)
    if figure is not None:
        from .plotting import plot_grid_image

        plot_grid_image(img, figure, title=spec_text)
    return data


# argument parsing --------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, default=None, help="truncation order")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--atol", type=float, default=None, help="absolute tolerance override")
    p.add_argument("--rtol", type=float, default=None, help="relative tolerance override")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--seed", type=int, default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="harmkoebe", description=__doc__.split("\n\n")[0],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="Taylor coefficients of a map")
    p.add_argument("spec")

    p = sub.add_parser("eval", parents=[common], help="evaluate a map at points")
    p.add_argument("spec")
    p.add_argument("--z", action="append", type=parse_complex, required=True,
                   help="point as re,im (repeatable)")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=", ".join(suites.SUITES))
    p.add_argument("--a", type=float, action="append")
    p.add_argument("--R", type=float, action="append")
    p.add_argument("--r", type=float, action="append")
    p.add_argument("--which", choices=("i", "ii", "iii", "all"), default="all")
    p.add_argument("--zeta", type=parse_complex, default=None)
    p.add_argument("--grid", type=int, default=64)

    p = sub.add_parser("collide", parents=[common], help="search for a collision of K_{a,R}")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--R", type=float, default=0.0)
    p.add_argument("--samples", type=int, default=5000)

    p = sub.add_parser("bounds", parents=[common], help="growth/distortion bounds")
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--R", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--r", type=float, action="append")
    p.add_argument("--figure", default=None, help="also write a matplotlib figure (PNG/PDF)")

    p = sub.add_parser("schwarzian", parents=[common], help="Schwarzian derivative and its norm")
    p.add_argument("spec")
    p.add_argument("--z", action="append", type=parse_complex)
    p.add_argument("--grid", type=int, default=None)

    p = sub.add_parser("render", parents=[common], help="image of a polar grid")
    p.add_argument("spec")
    p.add_argument("--rings", type=int, default=8)
    p.add_argument("--spokes", type=int, default=16)
    p.add_argument("--radius", type=float, default=0.95)
    p.add_argument("--size", type=int, default=512)
    p.add_argument("--resolution", type=int, default=256)
    p.add_argument("--image-format", choices=("svg", "ppm"), default=None)
    p.add_argument("--window", default=None, help="xmin,xmax,ymin,ymax")
    p.add_argument("--figure", default=None, help="also write a matplotlib figure (PNG/PDF)")
    return parser


def _emit(text, out):
    if out:
        mode = "wb" if isinstance(text, bytes) else "w"
        with open(out, mode) as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except KoebeError as exc:
        print(f"harmkoebe: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "coeffs":
        _emit(cmd_coeffs(args.spec, 8 if args.n is None else args.n, args.format), args.out)
        return EXIT_OK
    if cmd == "eval":
        _emit(cmd_eval(args.spec, args.z, args.format), args.out)
        return EXIT_OK
    if cmd == "verify":
        params = {"a": args.a, "R": args.R, "r": args.r, "which": args.which,
                  "seed": args.seed, "grid": args.grid}
        if args.n is not None:
            params["n"] = args.n
        if args.zeta is not None:
            params["zeta"] = args.zeta
        tol = args.atol if args.atol is not None else args.rtol
        status, text = cmd_verify(args.suite, params, tol)
        _emit(text, args.out)
        return status
    if cmd == "collide":
        status, text = cmd_collide(args.a, args.R, args.samples, args.seed)
        _emit(text, args.out)
        return status
    if cmd == "bounds":
        radii = args.r or [0.1, 0.5, 0.9]
        if args.alpha is not None:
            _emit(cmd_alpha_bounds(args.alpha, radii, args.format), args.out)
            return EXIT_OK
        if args.a is None or args.R is None:
            raise KoebeError("bounds needs --alpha, or both --a and --R")
        tol = next((t for t in (args.rtol, args.atol) if t is not None), 1e-9)
        status, text = cmd_bounds(args.a, args.R, radii, args.format, tol)
        _emit(text, args.out)
        if args.figure:
            from .plotting import plot_bounds

            plot_bounds(args.a, args.R, args.figure)
        return status
    if cmd == "schwarzian":
        if not args.z and not args.grid:
            raise KoebeError("schwarzian needs --z and/or --grid")
        _emit(cmd_schwarzian(args.spec, args.z, args.grid, args.format), args.out)
        return EXIT_OK
    if cmd == "render":
        fmt = args.image_format
        if fmt is None:
            fmt = "ppm" if args.out and args.out.lower().endswith(".ppm") else "svg"
        window = tuple(float(v) for v in args.window.split(",")) if args.window else None
        rspec = RenderSpec(args.rings, args.spokes, args.radius, fmt, args.size,
                           args.resolution, window)
        data = cmd_render(args.spec, rspec, args.out, args.figure)
        if args.out is None:
            if fmt == "svg":
                sys.stdout.write(data.decode("utf-8"))
            else:
                sys.stdout.buffer.write(data)
        return EXIT_OK
    raise KoebeError(f"unknown command {cmd!r}")  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
