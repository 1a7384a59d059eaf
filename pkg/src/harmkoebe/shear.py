"""
Harmonic maps ``f = h + conj(g)`` and the shear construction.

Given a locally univalent ``phi`` and a dilatation ``omega`` with
``|omega| < 1``, the shear in direction ``theta`` solves::

    h - e^{2i theta} g = phi,    g' = omega h',    h(0) = g(0) = 0

so ``h' = phi' / (1 - e^{2i theta} omega)``.  A shear carries two
independent evaluation routes: Taylor series (series division followed by
term-wise integration) and pointwise values (adaptive quadrature of ``h'``
and ``g'`` along the segment ``[0, z]``).

The generalized harmonic Koebe function ``K_H(lambda, a, mu, R)`` is the
shear of ``k_a`` with dilatation ``mu l_R`` in the direction with
``e^{2i theta} = lambda``; ``K_{a,R} = K_H(1, a, 1, R)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import BadParameter, DegenerateDerivative, DilatationOutOfRange
from .maps import (AnalyticMap, check_disk, linear_combination, make_generalized_koebe,
                   make_halfplane_phi, make_identity, make_lens, make_zero)
from .quadrature import integrate_segments
from .series import DEFAULT_ORDER, Series

UNIMODULAR_TOL = 1e-12
DEGENERATE_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class HarmonicMap:
    """``f = h + conj(g)`` with analytic part ``h`` and co-analytic part ``g``.

    ``pair_fn``, when present, returns ``(h(z), g(z))`` in a single pass; the
    shear uses it to integrate both parts with one quadrature sweep.
    """

    h: AnalyticMap
    g: AnalyticMap
    tag: str = "harmonic"
    params: Mapping = field(default_factory=dict)
    pair_fn: Callable | None = None

    def parts(self, z):
        z = check_disk(z)
        if self.pair_fn is not None:
            H, G = self.pair_fn(z)
        else:
            H, G = self.h.value_fn(z), self.g.value_fn(z)
        if np.ndim(H) == 0:
            return complex(H), complex(G)
        return H, G

    def value(self, z):
        H, G = self.parts(z)
        return H + np.conj(G)

    __call__ = value

    def series(self, N: int = DEFAULT_ORDER) -> tuple[Series, Series]:
        return self.h.series(N), self.g.series(N)

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"HarmonicMap({self.tag}{': ' + args if args else ''})"


@dataclass(frozen=True)
class GHKParams:
    """Parameters ``(lambda, a, mu, R)`` of a generalized harmonic Koebe function."""

    lam: complex = 1.0
    a: complex = 2.0
    mu: complex = 1.0
    R: float = 1.0

    def __post_init__(self):
        for name in ("lam", "mu"):
            v = complex(getattr(self, name))
            if abs(abs(v) - 1.0) > UNIMODULAR_TOL:
                raise BadParameter(f"{name} must be unimodular, got |{name}| = {abs(v)!r}")
        if not 0.0 <= float(self.R) <= 1.0:
            raise BadParameter(f"R must lie in [0, 1], got {self.R!r}")

    @classmethod
    def from_degrees(cls, lam_deg: float, a: complex, mu_deg: float, R: float) -> "GHKParams":
        return cls(_unit(lam_deg), a, _unit(mu_deg), R)

    @property
    def is_real_family(self) -> bool:
        return complex(self.a).imag == 0 and complex(self.lam) == 1 and complex(self.mu) == 1

    @property
    def order(self) -> float | None:
        """``a + R`` for ``K_{a,R}`` (real ``a``, ``lambda = mu = 1``); otherwise ``None``."""
        if self.is_real_family:
            return complex(self.a).real + float(self.R)
        return None


def _unit(deg: float) -> complex:
    # exact values at the quarter turns keep lambda = -1 etc. exactly real
    q, r = divmod(float(deg), 90.0)
    if r == 0.0:
        return (1, 1j, -1, -1j)[int(q) % 4]
    return cmath.exp(1j * math.radians(deg))


def shear(phi: AnalyticMap, omega: AnalyticMap, theta: float = 0.0,
          atol: float = 1e-10) -> HarmonicMap:
    """Harmonic shear of ``phi`` in direction ``theta`` with dilatation ``omega``."""
    theta = float(theta)
    if not 0.0 <= theta < math.pi:
        raise BadParameter(f"theta must lie in [0, pi), got {theta!r}")
    return _shear(phi, omega, _direction(theta), atol,
                  tag="shear", params={"theta": theta})


def _direction(theta: float) -> complex:
    if theta == 0.0:
        return 1.0 + 0j
    if theta == math.pi / 2:
        return -1.0 + 0j
    return cmath.exp(2j * theta)


def _shear(phi, omega, rot, atol, tag, params) -> HarmonicMap:
    rot = complex(rot)

    def dh(w):
        return phi.deriv_fn(w) / (1 - rot * omega.value_fn(w))

    def both_derivs(w):
        om = omega.value_fn(w)
        d = phi.deriv_fn(w) / (1 - rot * om)
        return np.stack([d, om * d])

    def pair(z):
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(omega.value_fn(z)) >= 1):
            raise DilatationOutOfRange("|omega| >= 1 at a requested point")
        H, G = integrate_segments(both_derivs, z, atol=atol)
        return H, G

    cache: dict[int, tuple[Series, Series]] = {}

    def series_pair(N):
        if N not in cache:
            dphi = phi.series(N + 1).derivative()
            dh_s = dphi / (1 - omega.series(N) * rot)
            dg_s = omega.series(N) * dh_s
            cache[N] = (dh_s.integrate().truncate(N), dg_s.integrate().truncate(N))
        return cache[N]

    h = AnalyticMap("custom", {}, lambda z: pair(z)[0], dh,
                    lambda N: series_pair(N)[0], label=f"{tag}.h")
    g = AnalyticMap("custom", {}, lambda z: pair(z)[1],
                    lambda w: omega.value_fn(w) * dh(w),
                    lambda N: series_pair(N)[1], label=f"{tag}.g")
    return HarmonicMap(h, g, tag, dict(params), pair_fn=pair)


def make_generalized_harmonic_koebe(p: GHKParams, atol: float = 1e-10) -> HarmonicMap:
    """``K_H(lambda, a, mu, R)``: ``h - lambda g = k_a``, ``g'/h' = mu l_R``."""
    ka = make_generalized_koebe(p.a)
    lens = make_lens(p.R)
    mu = complex(p.mu)
    omega = lens if mu == 1 else linear_combination([lens], [mu], label="mu*lens")
    tag = "kar" if p.is_real_family else "ghk"
    params = ({"a": complex(p.a).real, "R": float(p.R)} if p.is_real_family else
              {"lambda": complex(p.lam), "a": complex(p.a), "mu": mu, "R": float(p.R)})
    return _shear(ka, omega, complex(p.lam), atol, tag, params)


def make_KaR(a: float, R: float) -> HarmonicMap:
    """``K_{a,R}`` built by the shear construction."""
    return make_generalized_harmonic_koebe(GHKParams(1.0, float(a), 1.0, float(R)))


def make_KaR_closed_form(a: float, R: float) -> HarmonicMap:
    """``K_{a,R}`` from ``h = (k_{a+R} + k_a)/2`` and ``g = (k_{a+R} - k_a)/2``."""
    a, R = float(a), float(R)
    if not 0.0 <= R <= 1.0:
        raise BadParameter(f"R must lie in [0, 1], got {R!r}")
    if not (math.isfinite(a)):
        raise BadParameter(f"a must be finite, got {a!r}")
    ka = make_generalized_koebe(a)
    if R == 0.0:
        return HarmonicMap(ka, make_zero(), "kar-closed", {"a": a, "R": R})
    kaR = make_generalized_koebe(a + R)
    h = linear_combination([kaR, ka], [0.5, 0.5], label="kar.h")
    g = linear_combination([kaR, ka], [0.5, -0.5], label="kar.g")
    return HarmonicMap(h, g, "kar-closed", {"a": a, "R": R})


def harmonic_koebe() -> HarmonicMap:
    """The harmonic Koebe function (horizontal shear of ``k_2`` with ``omega(z) = z``)."""
    return make_KaR(2.0, 1.0)


def halfplane() -> HarmonicMap:
    """Vertical shear of ``z/(1-z)`` with dilatation ``-z``."""
    minus_z = linear_combination([make_identity()], [-1.0], label="-z")
    f = shear(make_halfplane_phi(), minus_z, math.pi / 2)
    return HarmonicMap(f.h, f.g, "halfplane", {}, f.pair_fn)


def eval_harmonic(f: HarmonicMap, z):
    return f.value(z)


def _derivs(f: HarmonicMap, z):
    z = check_disk(z)
    dh = np.asarray(f.h.deriv_fn(z))
    dg = np.asarray(f.g.deriv_fn(z))
    if np.any(np.abs(dh) <= DEGENERATE_TOL):
        raise DegenerateDerivative("h' vanishes at a requested point")
    return dh, dg


def dilatation(f: HarmonicMap, z):
    dh, dg = _derivs(f, z)
    out = dg / dh
    return complex(out) if out.ndim == 0 else out


def jacobian(f: HarmonicMap, z):
    """``|h'|^2 - |g'|^2``; positive exactly where ``f`` is sense-preserving."""
    dh, dg = _derivs(f, z)
    out = np.abs(dh) ** 2 - np.abs(dg) ** 2
    return float(out) if out.ndim == 0 else out


def rotate(f: HarmonicMap, eta: complex) -> HarmonicMap:
    """Rotation ``conj(eta) f(eta z) = conj(eta) h(eta z) + conj(eta g(eta z))``.

    Coefficients move as ``a_n -> a_n eta^(n-1)`` and ``b_n -> b_n eta^(n+1)``.
    """
    eta = complex(eta)
    if abs(abs(eta) - 1.0) > UNIMODULAR_TOL:
        raise BadParameter(f"rotation factor must be unimodular, got {eta!r}")
    ce = eta.conjugate()
    h, g = f.h, f.g

    def hs(N):
        return Series(h.series(N).coeffs * eta ** (np.arange(N + 1) - 1.0), N)

    def gs(N):
        return Series(g.series(N).coeffs * eta ** (np.arange(N + 1) + 1.0), N)

    new_h = AnalyticMap("custom", {}, lambda z: ce * h.value_fn(eta * z),
                        lambda z: h.deriv_fn(eta * z), hs, label="rot.h")
    new_g = AnalyticMap("custom", {}, lambda z: eta * g.value_fn(eta * z),
                        lambda z: eta * eta * g.deriv_fn(eta * z), gs, label="rot.g")
    pair = None
    if f.pair_fn is not None:
        def pair(z):
            H, G = f.pair_fn(eta * np.asarray(z, dtype=complex))
            return ce * H, eta * G
    return HarmonicMap(new_h, new_g, "rotation", {"eta": eta, "of": f.tag}, pair)
