"""
Linear and affine invariance: Koebe transforms, affine changes, Marty
coefficient recurrences and ODE residuals.

Coefficient conventions follow ``h(z) = z + sum a_n z^n`` and
``g(z) = sum b_n z^n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, DegenerateDerivative, DegenerateNormalizer, PointOutsideDisk
from .maps import AnalyticMap, linear_combination
from .series import DEFAULT_ORDER, Series, compose, taylor_shift
from .shear import HarmonicMap

DEGENERATE_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class MartyState:
    """Coefficient sequences ``A_0..A_N`` and ``B_0..B_N`` generated from ``(A_2, B_2)``."""

    A: np.ndarray
    B: np.ndarray
    A2: float
    B2: float

    @property
    def N(self) -> int:
        return len(self.A) - 1

    def combined(self, sign: int) -> np.ndarray:
        """``A_n + sign * B_n``."""
        return self.A + sign * self.B


def marty_generate(A2: float, B2: float, N: int) -> MartyState:
    """Run the coupled recurrences::

        (n+1) A_{n+1} = 2 A_2 A_n + 2 B_2 B_n + (n-1) A_{n-1}
        (n+1) B_{n+1} = 2 A_2 B_n + 2 B_2 A_n + (n-1) B_{n-1}

    from ``A_0 = B_0 = B_1 = 0``, ``A_1 = 1``.
    """
    if N < 2:
        raise BadParameter(f"need N >= 2, got {N}")
    A = np.zeros(N + 1)
    B = np.zeros(N + 1)
    A[1] = 1.0
    A[2], B[2] = A2, B2
    for n in range(2, N):
        A[n + 1] = (2 * A2 * A[n] + 2 * B2 * B[n] + (n - 1) * A[n - 1]) / (n + 1)
        B[n + 1] = (2 * A2 * B[n] + 2 * B2 * A[n] + (n - 1) * B[n - 1]) / (n + 1)
    return MartyState(A, B, float(A2), float(B2))


def marty_residuals(f: HarmonicMap, N: int) -> list[tuple[float, float]]:
    """Residuals of the two harmonic Marty relations for ``2 <= n <= N-1``.

    Entry ``n-2`` holds ``(|lhs - rhs|`` of the ``a``-relation, same for the
    ``b``-relation``)``, evaluated on the actual complex coefficients with the
    conjugations in place.
    """
    if N < 2:
        raise BadParameter(f"need N >= 2, got {N}")
    a = f.h.series(N).coeffs
    b = f.g.series(N).coeffs
    out = []
    for n in range(2, N):
        ra = (n + 1) * a[n + 1] - (2 * a[2] * a[n] + 2 * b[2] * np.conj(b[n])
                                   + (n - 1) * np.conj(a[n - 1]))
        rb = (n + 1) * b[n + 1] - (2 * a[2] * np.conj(b[n]) + 2 * b[2] * a[n]
                                   + (n - 1) * np.conj(b[n - 1]))
        out.append((float(abs(ra)), float(abs(rb))))
    return out


def ode_residual(S: Series, alpha: complex) -> float:
    """Largest coefficient of ``(1 - z^2) S' - 1 - alpha S`` up to order ``N-2``."""
    N = S.order
    c = S.coeffs
    dS = np.zeros(N + 1, dtype=complex)
    dS[:N] = c[1:] * np.arange(1, N + 1)
    lhs = dS.copy()
    lhs[2:] -= dS[:-2]
    lhs[0] -= 1.0
    lhs -= complex(alpha) * c
    return float(np.max(np.abs(lhs[: max(N - 1, 1)])))


def _mobius_shift_series(zeta: complex, N: int) -> Series:
    """``m(z) - zeta`` for ``m(z) = (z + zeta)/(1 + conj(zeta) z)``."""
    cz = np.conj(zeta)
    n = np.arange(N)
    c = np.zeros(N + 1, dtype=complex)
    c[1:] = (1 - abs(zeta) ** 2) * (-cz) ** n
    return Series(c, N)


def _work_order(N: int, zeta: complex) -> int:
    # a_n zeta^(n-k) C(n,k) must be negligible beyond the working order
    return int(math.ceil((N + 40) / (1 - abs(zeta)))) + 40


def _transformed_part(part: AnalyticMap, zeta: complex, scale: complex, label: str) -> AnalyticMap:
    """``z -> (p(m(z)) - p(zeta)) / scale`` for one analytic part ``p``."""
    cz = np.conj(zeta)
    p0 = part.value(zeta)
    s = 1 - abs(zeta) ** 2

    def mob(z):
        return (z + zeta) / (1 + cz * z)

    def value(z):
        return (part.value_fn(mob(z)) - p0) / scale

    def deriv(z):
        return part.deriv_fn(mob(z)) * s / (1 + cz * z) ** 2 / scale

    def series(N):
        d = taylor_shift(part.series(_work_order(N, zeta)), zeta).truncate(N)
        d = Series(np.concatenate([[0.0], d.coeffs[1:]]), N)
        return compose(d, _mobius_shift_series(zeta, N)) / scale

    return AnalyticMap("custom", {"zeta": zeta}, value, deriv, series, label=label)


def koebe_transform(f: HarmonicMap, zeta: complex) -> HarmonicMap:
    """``K_zeta(f)(z) = [f((z+zeta)/(1+conj(zeta) z)) - f(zeta)] / ((1-|zeta|^2) h'(zeta))``.

    With ``D = (1-|zeta|^2) h'(zeta)`` the new parts are
    ``(h o m - h(zeta)) / D`` and ``(g o m - g(zeta)) / conj(D)``.
    """
    zeta = complex(zeta)
    if abs(zeta) >= 1:
        raise PointOutsideDisk(f"zeta={zeta!r} must lie in the unit disk")
    if zeta == 0:
        return f
    dh = f.h.derivative(zeta)
    if abs(dh) <= DEGENERATE_TOL:
        raise DegenerateDerivative(f"h'(zeta) vanishes at zeta={zeta!r}")
    D = (1 - abs(zeta) ** 2) * dh
    h = _transformed_part(f.h, zeta, D, "koebe.h")
    g = _transformed_part(f.g, zeta, np.conj(D), "koebe.g")
    return HarmonicMap(h, g, "koebe-transform", {"zeta": zeta, "of": f.tag})


def affine_change(f: HarmonicMap, eps: complex) -> HarmonicMap:
    """``A_eps(f) = (f - conj(eps f)) / (1 - conj(eps) g'(0))``.

    Splitting into parts, with ``c = 1 - conj(eps) g'(0)``::

        h_new = (h - conj(eps) g) / c,    g_new = (g - eps h) / conj(c)

    so ``g_new'(0) = (g'(0) - eps) / conj(c)`` and ``eps = g'(0)`` clears it.
    """
    eps = complex(eps)
    if abs(eps) >= 1:
        raise BadParameter(f"affine parameter must satisfy |eps| < 1, got {eps!r}")
    if eps == 0:
        return f
    c = 1 - eps.conjugate() * f.g.derivative(0.0)
    if abs(c) <= DEGENERATE_TOL:
        raise DegenerateNormalizer("1 - conj(eps) g'(0) vanishes")
    h = linear_combination([f.h, f.g], [1 / c, -eps.conjugate() / c], label="affine.h")
    g = linear_combination([f.g, f.h], [1 / np.conj(c), -eps / np.conj(c)], label="affine.g")
    return HarmonicMap(h, g, "affine-change", {"eps": eps, "of": f.tag})


def renormalized_transform(f: HarmonicMap, zeta: complex) -> HarmonicMap:
    """``A_{omega_zeta(0)}(K_zeta(f))``: Koebe transform followed by the affine change
    that restores ``g'(0) = 0``."""
    k = koebe_transform(f, zeta)
    eps = k.g.derivative(0.0) / k.h.derivative(0.0)
    return affine_change(k, eps)


def predicted_coefficients(A: np.ndarray, B: np.ndarray, zeta: complex, n: int) -> tuple[complex, complex]:
    """First-order (in ``zeta``) coefficients ``a_n*``, ``b_n*`` of the renormalized transform."""
    cz = np.conj(zeta)
    a = (A[n] + ((n + 1) * A[n + 1] - 2 * A[2] * A[n]) * zeta
         - (2 * np.conj(B[2]) * B[n] + (n - 1) * A[n - 1]) * cz)
    b = (B[n] + ((n + 1) * B[n + 1] - 2 * B[2] * A[n]) * zeta
         - (2 * np.conj(A[2]) * B[n] + (n - 1) * B[n - 1]) * cz)
    return complex(a), complex(b)


def variational_expansion_residual(f: HarmonicMap, zeta: complex, n: int,
                                   N: int | None = None) -> tuple[float, float]:
    """Distance of the actual ``a_n*``, ``b_n*`` from their first-order prediction."""
    zeta = complex(zeta)
    if abs(zeta) > 0.05:
        raise BadParameter(f"first-order expansion is only probed for |zeta| <= 0.05, got {zeta!r}")
    if n < 2:
        raise BadParameter(f"need n >= 2, got {n}")
    N = max(n + 2, 8) if N is None else N
    A = f.h.series(N).coeffs
    B = f.g.series(N).coeffs
    if zeta == 0:
        return 0.0, 0.0
    t = renormalized_transform(f, zeta)
    a_star = t.h.series(N).coeffs[n]
    b_star = t.g.series(N).coeffs[n]
    pa, pb = predicted_coefficients(A, B, zeta, n)
    return float(abs(a_star - pa)), float(abs(b_star - pb))


def normalization_defect(f: HarmonicMap) -> float:
    """``max(|h(0)|, |g(0)|, |h'(0) - 1|)``."""
    return float(max(abs(f.h.value(0.0)), abs(f.g.value(0.0)), abs(f.h.derivative(0.0) - 1)))


__all__ = [
    "MartyState", "marty_generate", "marty_residuals", "ode_residual", "koebe_transform",
    "affine_change", "renormalized_transform", "predicted_coefficients",
    "variational_expansion_residual", "normalization_defect", "DEFAULT_ORDER",
]
