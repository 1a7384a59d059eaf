"""
Analytic maps of the unit disk used as building blocks.

Each map is an :class:`AnalyticMap`: a vectorized pointwise evaluator for the
value and first derivative, an on-demand Taylor series, and (for the closed
forms) exact second and third derivatives used by the Schwarzian.

Powers ``((1+z)/(1-z))**a`` are taken on the principal branch.  The Cayley
map ``(1+z)/(1-z)`` sends the disk into the right half-plane, where the
principal logarithm is continuous and ``log 1 = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import BadParameter, PointOutsideDisk
from .series import DEFAULT_ORDER, Series, exp, log

#: Points with ``|z|`` above this are rejected.
DISK_LIMIT = 1.0 - 1e-9
#: Below this ``|a|`` the generalized Koebe map uses its first-order expansion in ``a``.
SMALL_A = 1e-9

KINDS = ("koebe", "gkoebe", "k0", "lens", "halfplane-phi", "custom")


def check_disk(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > DISK_LIMIT):
        bad = z.ravel()[np.argmax(np.abs(z).ravel())]
        raise PointOutsideDisk(f"point {complex(bad)!r} is outside the unit disk")
    return z


def _scalar(out):
    return complex(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True, eq=False)
class AnalyticMap:
    """An analytic function on the unit disk.

    ``value_fn`` and ``deriv_fn`` take and return numpy arrays; ``series_fn``
    maps a truncation order to a :class:`Series`.  ``higher_fn`` is optional
    and returns ``(f'', f''')`` at an array of points.
    """

    kind: str
    params: Mapping = field(default_factory=dict)
    value_fn: Callable = None
    deriv_fn: Callable = None
    series_fn: Callable[[int], Series] = None
    higher_fn: Callable | None = None
    label: str = ""

    def value(self, z):
        return _scalar(self.value_fn(check_disk(z)))

    __call__ = value

    def derivative(self, z):
        return _scalar(self.deriv_fn(check_disk(z)))

    def higher_derivatives(self, z):
        """Exact ``(f'', f''')`` at ``z`` or ``None`` if the kind has no closed form."""
        if self.higher_fn is None:
            return None
        d2, d3 = self.higher_fn(check_disk(z))
        return _scalar(d2), _scalar(d3)

    def series(self, N: int = DEFAULT_ORDER) -> Series:
        return self.series_fn(N)

    @property
    def has_real_params(self) -> bool:
        return all(np.isreal(v) for v in self.params.values()
                   if isinstance(v, (int, float, complex)))

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"AnalyticMap({self.label or self.kind}{': ' + args if args else ''})"


def _cayley_log(z: np.ndarray) -> np.ndarray:
    # log((1+z)/(1-z)) = 2 artanh(z); principal branch on the disk
    return 2.0 * np.arctanh(z)


def gkoebe_series(a: complex, N: int) -> Series:
    """Taylor coefficients of ``k_a`` from ``(n+1)c_{n+1} = 2a c_n + (n-1)c_{n-1}``.

    This is the coefficient form of ``(1-z^2) k' = 1 + 2a k``; at ``a = 0`` it
    yields the odd series of ``artanh``.
    """
    a = complex(a)
    c = np.zeros(N + 1, dtype=complex)
    if N >= 1:
        c[1] = 1.0
    for n in range(1, N):
        c[n + 1] = (2 * a * c[n] + (n - 1) * c[n - 1]) / (n + 1)
    if a.imag == 0:
        c = c.real.astype(complex)
    return Series(c, N)


def make_generalized_koebe(a: complex) -> AnalyticMap:
    """``k_a(z) = ((1+z)/(1-z))**a - 1) / (2a)``, with ``k_0 = artanh``."""
    a = complex(a)
    if a.imag == 0:
        a = complex(a.real, 0.0)
    small = abs(a) < SMALL_A

    def value(z):
        L = _cayley_log(z)
        if a == 0:
            return 0.5 * L
        if small:
            k0 = 0.5 * L
            return k0 + a * k0 * k0
        return np.expm1(a * L) / (2 * a)

    def deriv(z):
        return np.exp(a * _cayley_log(z)) / (1 - z * z)

    def higher(z):
        d1 = deriv(z)
        w = 1 - z * z
        pre = 2 * (a + z) / w
        dpre = 2 * (1 + z * z + 2 * a * z) / (w * w)
        return d1 * pre, d1 * (dpre + pre * pre)

    kind = "k0" if a == 0 else ("koebe" if a == 2 else "gkoebe")
    params = {} if kind in ("k0", "koebe") else {"a": a.real if a.imag == 0 else a}
    label = {"k0": "k0", "koebe": "koebe"}.get(kind, "gkoebe")
    return AnalyticMap(kind, params, value, deriv, lambda N: gkoebe_series(a, N),
                       higher, label=label)


def make_koebe() -> AnalyticMap:
    """Classical Koebe function ``z/(1-z)^2``."""
    def value(z):
        return z / (1 - z) ** 2

    def deriv(z):
        return (1 + z) / (1 - z) ** 3

    def higher(z):
        return (4 + 2 * z) / (1 - z) ** 4, (18 + 6 * z) / (1 - z) ** 5

    return AnalyticMap("koebe", {}, value, deriv, lambda N: gkoebe_series(2, N),
                       higher, label="koebe")


def make_k0() -> AnalyticMap:
    return make_generalized_koebe(0)


def make_halfplane_phi() -> AnalyticMap:
    """``z/(1-z)``, i.e. ``k_1``; maps the disk onto ``Re w > -1/2``."""
    def value(z):
        return z / (1 - z)

    def deriv(z):
        return 1 / (1 - z) ** 2

    def higher(z):
        return 2 / (1 - z) ** 3, 6 / (1 - z) ** 4

    def series(N):
        c = np.ones(N + 1, dtype=complex)
        c[0] = 0.0
        return Series(c, N)

    return AnalyticMap("halfplane-phi", {}, value, deriv, series, higher,
                       label="hp-phi")


def _lens_series(R: float, N: int) -> Series:
    # t^R = exp(R log t), l_R = (t^R - 1) / (t^R + 1)
    one = Series.one(N)
    t = Series([1.0] + [2.0] * N, N)
    tR = exp(log(t) * R)
    return (tR - one) / (tR + one)


def make_lens(R: float) -> AnalyticMap:
    """Lens map ``l_R = (t^R - 1)/(t^R + 1)``, ``t = (1+z)/(1-z)``, ``0 <= R <= 1``.

    ``l_R = tanh(R k_0)``, so ``|l_R| < 1`` on the disk.  ``l_0`` is the zero
    map and ``l_1`` the identity.
    """
    R = float(R)
    if not 0.0 <= R <= 1.0:
        raise BadParameter(f"lens parameter R must lie in [0, 1], got {R!r}")
    if R == 0.0:
        return AnalyticMap("lens", {"R": 0.0}, np.zeros_like, np.zeros_like,
                           Series.zero, lambda z: (np.zeros_like(z), np.zeros_like(z)),
                           label="lens")
    if R == 1.0:
        return AnalyticMap("lens", {"R": 1.0}, lambda z: z.copy(), np.ones_like,
                           Series.variable,
                           lambda z: (np.zeros_like(z), np.zeros_like(z)),
                           label="lens")

    def value(z):
        return np.tanh(0.5 * R * _cayley_log(z))

    def deriv(z):
        v = value(z)
        return R * (1 - v * v) / (1 - z * z)

    def series(N):
        return _lens_series(R, N).truncate(N)

    return AnalyticMap("lens", {"R": R}, value, deriv, series, label="lens")


def make_identity() -> AnalyticMap:
    return AnalyticMap("custom", {}, lambda z: z.copy(), np.ones_like, Series.variable,
                       lambda z: (np.zeros_like(z), np.zeros_like(z)), label="id")


def make_zero() -> AnalyticMap:
    return AnalyticMap("custom", {}, np.zeros_like, np.zeros_like, Series.zero,
                       lambda z: (np.zeros_like(z), np.zeros_like(z)), label="zero")


def from_series(S: Series, label: str = "series") -> AnalyticMap:
    """Polynomial map given by the truncated series ``S``."""
    dS = S.derivative()
    d2S = dS.derivative()
    d3S = d2S.derivative()

    def series(N):
        if N <= S.order:
            return S.truncate(N)
        return Series(S.coeffs, N)

    return AnalyticMap("custom", {}, lambda z: np.asarray(S(z)), lambda z: np.asarray(dS(z)),
                       series, lambda z: (np.asarray(d2S(z)), np.asarray(d3S(z))), label=label)


def linear_combination(maps: Sequence[AnalyticMap], weights: Sequence[complex],
                       label: str = "combination") -> AnalyticMap:
    """Pointwise and coefficient-wise ``sum_j w_j f_j``."""
    maps = list(maps)
    weights = [complex(w) for w in weights]

    def value(z):
        return sum(w * m.value_fn(z) for m, w in zip(maps, weights))

    def deriv(z):
        return sum(w * m.deriv_fn(z) for m, w in zip(maps, weights))

    def series(N):
        out = Series.zero(N)
        for m, w in zip(maps, weights):
            out = out + m.series(N) * w
        return out

    higher = None
    if all(m.higher_fn is not None for m in maps):
        def higher(z):
            parts = [m.higher_fn(z) for m in maps]
            return (sum(w * p[0] for p, w in zip(parts, weights)),
                    sum(w * p[1] for p, w in zip(parts, weights)))

    return AnalyticMap("custom", {}, value, deriv, series, higher, label=label)


def lens_identity_residual(R: float, z: complex) -> float:
    """``|l_R(z) - R k_R(z) / (1 + R k_R(z))|`` for ``0 < R < 1``."""
    if not 0.0 < R < 1.0:
        raise BadParameter(f"the lens identity needs 0 < R < 1, got {R!r}")
    lR = make_lens(R).value(z)
    kR = make_generalized_koebe(R).value(z)
    return float(abs(lR - R * kR / (1 + R * kR)))


def hille_univalent(a: complex) -> bool:
    """Hille's criterion: ``k_a`` is univalent iff ``a`` or ``-a`` lies in ``|w - 1| <= 1``."""
    a = complex(a)
    return abs(a - 1) <= 1 or abs(a + 1) <= 1
