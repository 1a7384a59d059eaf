"""
Numeric checks of univalence, growth/distortion bounds and the Schwarzian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import qmc

from .errors import BadParameter, DegenerateDerivative
from .maps import AnalyticMap, check_disk
from .shear import HarmonicMap, make_KaR

PROBE_RADIUS = 0.95
COLLISION_RATIO = 1e-6
STENCIL_POINTS = 64


@dataclass(frozen=True)
class CollisionWitness:
    z1: complex
    z2: complex
    image_gap: float
    preimage_gap: float

    def to_csv(self, header: bool = True) -> str:
        row = ",".join(_fmt_complex(v) for v in (self.z1, self.z2))
        row += f",{self.image_gap:.17g},{self.preimage_gap:.17g}"
        return ("z1,z2,image_gap,preimage_gap\n" if header else "") + row + "\n"


def _fmt_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}j"


def _witness_points(a: float) -> tuple[complex, complex]:
    # (1+z)/(1-z) = exp(i pi / a)  <=>  z = i tan(pi / (2a))
    z1 = 1j * math.tan(math.pi / (2 * a))
    return z1, z1.conjugate()


def collision_witness(a: float, R: float = 0.0, f: HarmonicMap | None = None) -> CollisionWitness:
    """Two distinct points where ``K_{a,R}`` (``a > 2``) takes the same value.

    At ``z1 = i tan(pi/(2a))`` the value ``k_a(z1) = -1/a`` is real, so
    ``z2 = conj(z1)`` gives ``k_a(z1) = k_a(z2)``; real coefficients of ``h``
    and ``g`` then force ``f(z1) = f(z2)``.  ``f`` defaults to the shear-built
    ``K_{a,R}``.
    """
    a = float(a)
    if not a > 2:
        raise BadParameter(f"collision witness needs a > 2, got {a!r}")
    if f is None:
        f = make_KaR(a, R)
    z1, z2 = _witness_points(a)
    w = f.value(np.array([z1, z2]))
    return CollisionWitness(z1, z2, float(abs(w[0] - w[1])), abs(z1 - z2))


def reflected_witness(a: float, R: float = 0.0) -> CollisionWitness:
    """Witness for ``K_{a,R}`` with ``a < -2``.

    ``K_{a,R}(z) = -K_H(1, -a, -1, R)(-z)``, and the latter map collides at
    ``i tan(pi/(2|a|))`` and its conjugate, so ``K_{a,R}`` collides at the
    negated pair (the same two points, swapped).
    """
    a = float(a)
    if not a < -2:
        raise BadParameter(f"reflected witness needs a < -2, got {a!r}")
    z1, z2 = _witness_points(-a)
    z1, z2 = -z1, -z2
    w = make_KaR(a, R).value(np.array([z1, z2]))
    return CollisionWitness(z1, z2, float(abs(w[0] - w[1])), abs(z1 - z2))


def probe_points(samples: int, seed: int = 0, radius: float = PROBE_RADIUS) -> np.ndarray:
    """Scrambled Halton points, area-uniform in ``|z| <= radius``."""
    u = qmc.Halton(d=2, scramble=True, seed=seed).random(samples)
    return radius * np.sqrt(u[:, 0]) * np.exp(2j * np.pi * u[:, 1])


def injectivity_probe(f: HarmonicMap, samples: int = 2000, seed: int = 0,
                      extra_points=None, radius: float = PROBE_RADIUS,
                      neighbours: int = 8) -> CollisionWitness | None:
    """Look for ``z1 != z2`` with ``|f(z1) - f(z2)| < 1e-6 |z1 - z2|``.

    Returns the pair with the smallest image-to-preimage gap ratio, or
    ``None``.  Finding nothing is evidence of injectivity, not a proof.
    """
    if samples < 2:
        raise BadParameter(f"need at least 2 samples, got {samples}")
    z = probe_points(samples, seed, radius)
    if extra_points is not None:
        z = np.concatenate([z, np.asarray(extra_points, dtype=complex).ravel()])
    w = np.asarray(f.value(z))
    tree = cKDTree(np.column_stack([w.real, w.imag]))
    k = min(neighbours + 1, len(z))
    dist, nb = tree.query(np.column_stack([w.real, w.imag]), k=k)
    pre = np.abs(z[:, None] - z[nb])
    valid = pre > 0
    ratio = np.full(dist.shape, np.inf)
    ratio[valid] = dist[valid] / pre[valid]
    i, j = np.unravel_index(np.argmin(ratio), ratio.shape)
    if not ratio[i, j] < COLLISION_RATIO:
        return None
    z1, z2 = complex(z[i]), complex(z[nb[i, j]])
    return CollisionWitness(z1, z2, float(abs(w[i] - w[nb[i, j]])), abs(z1 - z2))


def _check_alpha_r(alpha: float, r: float):
    if not alpha >= 1:
        raise BadParameter(f"order alpha must be >= 1, got {alpha!r}")
    if not 0 < r < 1:
        raise BadParameter(f"radius must lie in (0, 1), got {r!r}")


def growth_bounds(alpha: float, r: float) -> tuple[float, float]:
    """Lower and upper bound for ``|f(z)|`` at ``|z| = r`` in a family of order ``alpha``."""
    _check_alpha_r(alpha, r)
    q = (1 + r) / (1 - r)
    return (-math.expm1(-alpha * math.log(q)) / (2 * alpha),
            math.expm1(alpha * math.log(q)) / (2 * alpha))


def distortion_bounds(alpha: float, r: float) -> tuple[float, float]:
    """Lower bound for ``|h'| - |g'|`` and upper bound for ``|h'| + |g'|`` at ``|z| = r``."""
    _check_alpha_r(alpha, r)
    return ((1 - r) ** (alpha - 1) / (1 + r) ** (alpha + 1),
            (1 + r) ** (alpha - 1) / (1 - r) ** (alpha + 1))


@dataclass
class BoundReport:
    """Measured extremal quantities of ``K_{a,R}`` against the order-``alpha`` bounds.

    ``measured`` keys: ``growth_upper`` is ``|f(r)|``, ``growth_lower`` is
    ``|f(-r)|``, ``distortion_upper`` is ``|h'(r)| + |g'(r)|`` and
    ``distortion_lower`` is ``|h'(-r)| - |g'(-r)|``.
    """

    a: float
    R: float
    r: float
    alpha: float
    growth: tuple[float, float]
    distortion: tuple[float, float]
    measured: dict = field(default_factory=dict)
    equality: dict = field(default_factory=dict)
    tol: float = 1e-9

    @property
    def passed(self) -> bool:
        return all(self.equality.values())

    def bound(self, key: str) -> float:
        return {"growth_lower": self.growth[0], "growth_upper": self.growth[1],
                "distortion_lower": self.distortion[0],
                "distortion_upper": self.distortion[1]}[key]

    def max_residual(self) -> float:
        return max(_rel_gap(self.measured[k], self.bound(k)) for k in self.measured)

    def to_dict(self) -> dict:
        return {"a": self.a, "R": self.R, "r": self.r, "alpha": self.alpha,
                "growth": list(self.growth), "distortion": list(self.distortion),
                "measured": dict(self.measured), "equality": dict(self.equality),
                "tol": self.tol, "pass": self.passed}


def _rel_gap(x: float, y: float) -> float:
    return abs(x - y) / max(1.0, abs(y))


def equality_report(a: float, R: float, r: float, f: HarmonicMap | None = None,
                    tol: float = 1e-9) -> BoundReport:
    """Check that ``K_{a,R}`` attains the growth and distortion bounds of order ``a + R``.

    Equality is tested on the real axis, ``|f(r)|`` and ``|h'(r)| + |g'(r)|``
    at ``r`` and ``|f(-r)|``, ``|h'(-r)| - |g'(-r)|`` at ``-r``, with the
    relative gap ``|x - y| / max(1, |y|) <= tol``.
    """
    a, R, r = float(a), float(R), float(r)
    if not -2 <= a <= 2 or not 0 <= R <= 1 or a + R < 1:
        raise BadParameter(f"need -2 <= a <= 2, 0 <= R <= 1, a + R >= 1; got a={a}, R={R}")
    if not 0 < r < 1:
        raise BadParameter(f"radius must lie in (0, 1), got {r!r}")
    alpha = a + R
    if f is None:
        f = make_KaR(a, R)
    pts = np.array([r, -r], dtype=complex)
    vals = np.asarray(f.value(pts))
    dh = np.abs(np.asarray(f.h.deriv_fn(pts)))
    dg = np.abs(np.asarray(f.g.deriv_fn(pts)))
    rep = BoundReport(a, R, r, alpha, growth_bounds(alpha, r), distortion_bounds(alpha, r), tol=tol)
    rep.measured = {"growth_upper": float(abs(vals[0])), "growth_lower": float(abs(vals[1])),
                    "distortion_upper": float(dh[0] + dg[0]),
                    "distortion_lower": float(dh[1] - dg[1])}
    rep.equality = {k: _rel_gap(v, rep.bound(k)) <= tol for k, v in rep.measured.items()}
    return rep


def _circle_derivatives(fprime, z: np.ndarray, M: int = STENCIL_POINTS):
    """``f''`` and ``f'''`` from ``f'`` sampled on a small circle about each ``z``.

    The trapezoidal Cauchy integral on a circle of radius ``rho`` converges
    geometrically in ``M``; ``rho`` is half the distance to the boundary,
    capped at 0.25.
    """
    rho = np.minimum(0.25, 0.5 * (1 - np.abs(z)))
    ang = np.exp(2j * np.pi * np.arange(M) / M)
    w = z[..., None] + rho[..., None] * ang
    c = np.fft.fft(np.asarray(fprime(w)), axis=-1) / M
    return c[..., 1] / rho, 2 * c[..., 2] / rho ** 2


def schwarzian(phi: AnalyticMap, z, method: str = "auto"):
    """``S phi = (phi''/phi')' - (phi''/phi')^2 / 2``.

    ``method="auto"`` uses exact higher derivatives when the map provides
    them and the circle stencil otherwise; ``"numeric"`` forces the stencil.
    """
    z = check_disk(z)
    d1 = np.asarray(phi.deriv_fn(z))
    if np.any(np.abs(d1) <= 1e-14):
        raise DegenerateDerivative("phi' vanishes at a requested point")
    if method == "auto" and phi.higher_fn is not None:
        d2, d3 = (np.asarray(v) for v in phi.higher_fn(z))
    elif method in ("auto", "numeric"):
        d2, d3 = _circle_derivatives(phi.deriv_fn, z)
    else:
        raise ValueError(f"unknown method {method!r}")
    p = d2 / d1
    out = d3 / d1 - 1.5 * p * p
    return complex(out) if out.ndim == 0 else out


def schwarzian_norm(phi: AnalyticMap, grid: int = 64, rmax: float = 0.99,
                    method: str = "auto") -> float:
    """``max |S phi(z)| (1 - |z|^2)^2`` over a ``grid x grid`` polar mesh.

    Radii run over ``linspace(0, rmax, grid)``; angles ``2 pi j / grid``
    include the positive real axis.  A grid maximum is a lower bound for the
    supremum over the disk.
    """
    if grid < 8:
        raise BadParameter(f"grid must be at least 8, got {grid}")
    rad = np.linspace(0.0, rmax, grid)
    ang = np.exp(2j * np.pi * np.arange(grid) / grid)
    z = (rad[:, None] * ang[None, :]).ravel()
    S = schwarzian(phi, z, method=method)
    return float(np.max(np.abs(S) * (1 - np.abs(z) ** 2) ** 2))


def schwarzian_koebe_closed_form(a: complex, z):
    """``S k_a(z) = 2 (1 - a^2) / (1 - z^2)^2``."""
    z = np.asarray(z, dtype=complex)
    return 2 * (1 - complex(a) ** 2) / (1 - z * z) ** 2


__all__ = [
    "CollisionWitness", "BoundReport", "collision_witness", "reflected_witness",
    "probe_points", "injectivity_probe", "growth_bounds", "distortion_bounds",
    "equality_report", "schwarzian", "schwarzian_norm", "schwarzian_koebe_closed_form",
]
