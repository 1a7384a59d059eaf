"""
Named verification suites run by ``harmkoebe verify``.

Each suite evaluates one family of identities over a parameter grid and
returns a report ``{"check", "params", "max_residual", "pass", "cases"}``
where ``cases`` lists every grid point in the same schema.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from . import analysis, families, maps, shear
from .errors import UnknownSuite
from .series import Series

A_GRID = (0.0, 0.5, 1.0, 1.5, 2.0)
R_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
SYMMETRY_PAIRS = ((1.2, 0.7), (0.5, 0.3), (-1.5, 1.0))
SCHWARZIAN_M = (0.0, 2.0, 6.0)
N_DEFAULT = 40

TOLERANCES = {
    "marty": 1e-10,
    "ode": 1e-11,
    "symmetry": 1e-12,
    "dilatation": 1e-11,
    "bounds": 1e-9,
    "schwarzian": 1e-3,
    "expansion": 0.5,
}


def _case(check, params, residual, tol):
    residual = float(residual)
    return {"check": check, "params": params, "max_residual": residual,
            "pass": bool(residual <= tol)}


def _grid(params, default_a=A_GRID, default_R=R_GRID):
    a_vals = params.get("a") or default_a
    R_vals = params.get("R") or default_R
    return list(itertools.product(a_vals, R_vals))


def marty_suite(params, tol):
    """Harmonic Marty relations for ``K_{a,R}`` (residual scaled by ``n^2``) and the
    coupled recurrences seeded with ``(a + R/2, R/2)`` against the actual coefficients."""
    N = int(params.get("n", N_DEFAULT))
    out = []
    for a, R in _grid(params):
        f = shear.make_KaR(a, R)
        res = families.marty_residuals(f, N)
        scaled = max(max(p) / n ** 2 for n, p in zip(range(2, N), res))
        st = families.marty_generate(a + R / 2, R / 2, N)
        h, g = f.series(N)
        gen = max(np.max(np.abs(st.A - h.coeffs)), np.max(np.abs(st.B - g.coeffs)))
        out.append(_case("marty", {"a": a, "R": R, "n": N}, max(scaled, gen), tol))
    return out


def ode_suite(params, tol):
    """``h + g`` solves ``(1-z^2) phi' = 1 + 2(a+R) phi`` and ``h - g`` the same with ``2a``."""
    N = int(params.get("n", N_DEFAULT))
    out = []
    for a, R in _grid(params):
        h, g = shear.make_KaR(a, R).series(N)
        r = max(families.ode_residual(h + g, 2 * (a + R)), families.ode_residual(h - g, 2 * a))
        out.append(_case("ode", {"a": a, "R": R, "n": N}, r, tol))
    return out


def _ghk_series(lam, a, mu, R, N):
    return shear.make_generalized_harmonic_koebe(shear.GHKParams(lam, a, mu, R)).series(N)


def symmetry_residuals(a, R, N=N_DEFAULT):
    """Coefficient gaps of the three real-parameter symmetries of ``K_H``."""
    def gap(s1, s2):
        return max(float(np.max(np.abs(x.coeffs - y.coeffs))) for x, y in zip(s1, s2))

    flip = (-1.0) ** (np.arange(N + 1) + 1)

    def reflect(pair):
        # F(z) -> -F(-z) sends the n-th coefficient c_n to (-1)^(n+1) c_n
        return tuple(Series(s.coeffs * flip, N) for s in pair)

    out = {
        "i": gap(_ghk_series(1, a, 1, R, N), _ghk_series(-1, a + R, 1, R, N)),
        "ii": gap(_ghk_series(-1, a, -1, R, N), _ghk_series(1, a + R, -1, R, N)),
    }
    out["iii"] = max(gap(_ghk_series(lam, -a, mu, R, N), reflect(_ghk_series(lam, a, -mu, R, N)))
                     for lam, mu in itertools.product((1, -1), (1, -1)))
    return out


def symmetry_suite(params, tol):
    which = params.get("which", "all")
    keys = ("i", "ii", "iii") if which == "all" else (which,)
    N = int(params.get("n", N_DEFAULT))
    pairs = _grid(params) if params.get("a") or params.get("R") else list(SYMMETRY_PAIRS)
    out = []
    for a, R in pairs:
        res = symmetry_residuals(a, R, N)
        for k in keys:
            out.append(_case("symmetry", {"which": k, "a": a, "R": R, "n": N}, res[k], tol))
    return out


def dilatation_suite(params, tol):
    """``g'/h' = l_R`` pointwise for the shear-built ``K_{a,R}``."""
    rng = np.random.default_rng(int(params.get("seed", 0)))
    z = 0.95 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
    out = []
    for a, R in _grid(params):
        f = shear.make_KaR(a, R)
        r = np.max(np.abs(shear.dilatation(f, z) - maps.make_lens(R).value(z)))
        jac_ok = bool(np.all(shear.jacobian(f, z) > 0))
        case = _case("dilatation", {"a": a, "R": R}, r, tol)
        case["pass"] = case["pass"] and jac_ok
        out.append(case)
    return out


def bounds_suite(params, tol):
    radii = params.get("r") or (0.1, 0.5, 0.9)
    out = []
    for a, R in _grid(params):
        if a + R < 1 or not -2 <= a <= 2:
            continue
        for r in radii:
            rep = analysis.equality_report(a, R, r, tol=tol)
            out.append(_case("bounds", {"a": a, "R": R, "r": r}, rep.max_residual(), tol))
    return out


def schwarzian_suite(params, tol, fd_tol=1e-6):
    """Grid norm of ``S k_a`` against ``2|a^2 - 1|``, and exact vs stencil Schwarzian."""
    if params.get("a"):
        a_vals = list(params["a"])
    else:
        a_vals = [math.sqrt(1 + M / 2) for M in SCHWARZIAN_M]
    grid = int(params.get("grid", 64))
    rng = np.random.default_rng(int(params.get("seed", 0)))
    z = 0.9 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
    out = []
    for a in a_vals:
        k = maps.make_generalized_koebe(a)
        norm = analysis.schwarzian_norm(k, grid)
        out.append(_case("schwarzian", {"a": a, "grid": grid, "kind": "norm"},
                         abs(norm - 2 * abs(a * a - 1)), tol))
        fd = np.max(np.abs(analysis.schwarzian(k, z) - analysis.schwarzian(k, z, method="numeric")))
        out.append(_case("schwarzian", {"a": a, "kind": "stencil"}, fd, fd_tol))
    return out


def expansion_suite(params, tol, norm_tol=1e-11):
    """Quadratic smallness of the first-order coefficient expansion under ``zeta`` halving,
    plus normalization of the renormalized transform."""
    zeta = complex(params.get("zeta", 0.02j))
    ns = params.get("nlist") or (2, 3)
    out = []
    for a, R in _grid(params, (2.0,), (1.0,)):
        f = shear.make_KaR(a, R)
        t = families.renormalized_transform(f, zeta)
        defect = max(families.normalization_defect(t), abs(t.g.derivative(0.0)))
        out.append(_case("expansion", {"a": a, "R": R, "zeta": str(zeta), "kind": "normalization"},
                         defect, norm_tol))
        for n in ns:
            r1 = families.variational_expansion_residual(f, zeta, n)
            r2 = families.variational_expansion_residual(f, zeta / 2, n)
            for part, x, y in (("a", r1[0], r2[0]), ("b", r1[1], r2[1])):
                if x < 1e-13 and y < 1e-13:
                    continue  # identically zero part (e.g. g = 0)
                ratio = x / y if y > 0 else math.inf
                case = _case("expansion", {"a": a, "R": R, "zeta": str(zeta), "n": n,
                                           "part": part, "ratio": ratio}, abs(ratio - 4), tol)
                out.append(case)
    return out


SUITES = {
    "marty": marty_suite,
    "ode": ode_suite,
    "symmetry": symmetry_suite,
    "dilatation": dilatation_suite,
    "bounds": bounds_suite,
    "schwarzian": schwarzian_suite,
    "expansion": expansion_suite,
}


def run_suite(name: str, params: dict | None = None, tol: float | None = None) -> dict:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    params = dict(params or {})
    tol = TOLERANCES[name] if tol is None else tol
    cases = SUITES[name](params, tol)
    worst = max(cases, key=lambda c: (not c["pass"], c["max_residual"]))
    shown = {k: v for k, v in params.items() if v not in (None, (), [])}
    return {"check": name, "params": shown, "max_residual": worst["max_residual"],
            "pass": all(c["pass"] for c in cases), "tol": tol, "worst": worst, "cases": cases}
