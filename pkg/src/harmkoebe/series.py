"""
Truncated power series with complex coefficients.

A :class:`Series` of truncation order ``N`` stores ``c_0, ..., c_N``; the
coefficients beyond ``N`` are unknown, not zero.  Binary operations return a
series whose order is the smaller of the two operands' orders, so a result
never claims more accuracy than its least accurate input.

    >>> from harmkoebe.series import Series
    >>> g = Series([1, -1], 4)          # 1 - z
    >>> (Series.one(4) / g).coeffs.real
    array([1., 1., 1., 1., 1.])

Every operation is pure: the coefficient array of a series is read-only and
all methods return new objects.
"""

from __future__ import annotations

import json
from typing import Callable, Iterable

import numpy as np

from .errors import BadConstantTerm, BadRadius, DivisionByNonUnit

DEFAULT_ORDER = 64
ATOL = 1e-12
RTOL = 1e-10
UNIT_TOL = 1e-14

__all__ = [
    "Series", "DEFAULT_ORDER", "add", "mul", "div", "exp", "log", "power",
    "derivative", "integrate", "compose", "taylor_shift",
    "coefficients_from_samples", "allclose", "max_abs_diff",
]


class Series:
    """Truncated Taylor expansion ``c_0 + c_1 z + ... + c_N z^N``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex] | np.ndarray, order: int | None = None):
        c = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                       dtype=complex).ravel()
        if order is None:
            order = len(c) - 1
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        if len(c) < order + 1:
            c = np.concatenate([c, np.zeros(order + 1 - len(c), dtype=complex)])
        c = c[: order + 1].copy()
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.flags.writeable = False
        self._c = c

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Series":
        return cls(arr, len(arr) - 1)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "Series":
        return cls(np.zeros(order + 1, dtype=complex), order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "Series":
        return cls([1.0], order)

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER) -> "Series":
        """The series of ``z`` itself."""
        return cls([0.0, 1.0], order)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return len(self._c) - 1

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, n):
        return self._c[n]

    def __iter__(self):
        return iter(self._c)

    def __repr__(self) -> str:
        head = ", ".join(f"{c:.6g}" for c in self._c[:6])
        more = ", ..." if len(self._c) > 6 else ""
        return f"Series([{head}{more}], order={self.order})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self._c, other._c))

    __hash__ = None

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return Series(self._c[: order + 1], order)

    def __call__(self, z):
        """Evaluate the truncated polynomial at ``z`` (Horner's rule)."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for c in self._c[::-1]:
            out = out * z + c
        return out if out.ndim else complex(out)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        if np.isscalar(other):
            return Series([other], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return add(self, other) if other is not NotImplemented else NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Series._wrap(-self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if np.isscalar(other):
            return Series._wrap(self._c * complex(other))
        other = self._coerce(other)
        return mul(self, other) if other is not NotImplemented else NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return Series._wrap(self._c / complex(other))
        other = self._coerce(other)
        return div(self, other) if other is not NotImplemented else NotImplemented

    def __rtruediv__(self, other):
        return div(Series([other], self.order), self)

    def __pow__(self, a):
        return power(self, a)

    def exp(self):
        return exp(self)

    def log(self):
        return log(self)

    def derivative(self):
        return derivative(self)

    def integrate(self):
        return integrate(self)

    def compose(self, inner):
        return compose(self, inner)

    # serialization --------------------------------------------------------
    def to_csv(self, header: bool = True) -> str:
        rows = ["n,re,im"] if header else []
        rows += [f"{n},{c.real:.17g},{c.imag:.17g}" for n, c in enumerate(self._c)]
        return "\n".join(rows) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "Series":
        vals = {}
        for line in text.strip().splitlines():
            line = line.strip()
            if not line or line.startswith("n,"):
                continue
            n, re, im = line.split(",")
            vals[int(n)] = complex(float(re), float(im))
        order = max(vals)
        return cls([vals[n] for n in range(order + 1)], order)

    def to_dict(self) -> dict:
        return {"trunc": self.order,
                "coeffs": [[float(c.real), float(c.imag)] for c in self._c]}

    @classmethod
    def from_dict(cls, d: dict) -> "Series":
        return cls([complex(re, im) for re, im in d["coeffs"]], int(d["trunc"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Series":
        return cls.from_dict(json.loads(text))


def _pair(A: Series, B: Series) -> tuple[np.ndarray, np.ndarray, int]:
    n = min(A.order, B.order)
    return A.coeffs[: n + 1], B.coeffs[: n + 1], n


def add(A: Series, B: Series) -> Series:
    a, b, _ = _pair(A, B)
    return Series._wrap(a + b)


def mul(A: Series, B: Series) -> Series:
    """Cauchy product truncated to the smaller order."""
    a, b, n = _pair(A, B)
    return Series._wrap(np.convolve(a, b)[: n + 1])


def div(A: Series, B: Series) -> Series:
    a, b, n = _pair(A, B)
    if abs(b[0]) <= UNIT_TOL:
        raise DivisionByNonUnit(f"divisor has constant term {b[0]!r}")
    q = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        # q_k = (a_k - sum_{j=1}^{k} b_j q_{k-j}) / b_0
        q[k] = (a[k] - np.dot(b[1 : k + 1], q[k - 1 :: -1][:k])) / b[0] if k else a[0] / b[0]
    return Series._wrap(q)


def exp(A: Series) -> Series:
    """Series exponential via ``c' = A' c``; needs ``A(0) = 0``."""
    a = A.coeffs
    if abs(a[0]) > UNIT_TOL:
        raise BadConstantTerm(f"exp needs a zero constant term, got {a[0]!r}", a[0])
    n = A.order
    ka = np.arange(n + 1) * a
    c = np.zeros(n + 1, dtype=complex)
    c[0] = 1.0
    for m in range(1, n + 1):
        c[m] = np.dot(ka[1 : m + 1], c[m - 1 :: -1][:m]) / m
    return Series._wrap(c)


def log(A: Series) -> Series:
    """Principal series logarithm (``log 1 = 0``); needs ``A(0) = 1``."""
    a = A.coeffs
    if abs(a[0] - 1.0) > UNIT_TOL:
        raise BadConstantTerm(f"log needs constant term 1, got {a[0]!r}", a[0])
    n = A.order
    # A' = A L'  =>  m l_m = m a_m - sum_{k=1}^{m-1} k l_k a_{m-k}
    kl = np.zeros(n + 1, dtype=complex)
    for m in range(1, n + 1):
        kl[m] = m * a[m] - np.dot(kl[1:m], a[m - 1 : 0 : -1])
    out = np.zeros(n + 1, dtype=complex)
    out[1:] = kl[1:] / np.arange(1, n + 1)
    return Series._wrap(out)


def power(A: Series, a: complex) -> Series:
    """``A**a = exp(a log A)`` on the principal branch; needs ``A(0) = 1``."""
    a0 = A.coeffs[0]
    if abs(a0 - 1.0) > UNIT_TOL:
        raise BadConstantTerm(f"power needs constant term 1, got {a0!r}", a0)
    return exp(log(A) * complex(a))


def derivative(A: Series) -> Series:
    if A.order == 0:
        return Series.zero(0)
    c = A.coeffs
    return Series._wrap(c[1:] * np.arange(1, A.order + 1))


def integrate(A: Series) -> Series:
    """Term-wise antiderivative with zero constant; the order rises by one."""
    c = A.coeffs
    out = np.zeros(A.order + 2, dtype=complex)
    out[1:] = c / np.arange(1, A.order + 2)
    return Series._wrap(out)


def compose(A: Series, B: Series) -> Series:
    """Coefficients of ``A(B(z))``; ``B(0)`` must vanish."""
    b0 = B.coeffs[0]
    if abs(b0) > UNIT_TOL:
        raise BadConstantTerm(f"inner series must vanish at 0, got {b0!r}", b0)
    a, b, n = _pair(A, B)
    b = b.copy()
    b[0] = 0.0
    out = np.zeros(n + 1, dtype=complex)
    out[0] = a[n]
    for k in range(n - 1, -1, -1):
        out = np.convolve(out, b)[: n + 1]
        out[0] += a[k]
    return Series._wrap(out)


def taylor_shift(A: Series, zeta: complex) -> Series:
    """Re-expand the truncated polynomial of ``A`` about ``zeta``.

    Returns ``d`` with ``sum_k d_k w^k = sum_n a_n (zeta + w)^n`` exactly as
    polynomials.  Only the low-order ``d_k`` approximate the Taylor
    coefficients of the underlying function; callers must pass a series
    whose order comfortably exceeds the number of coefficients they keep.
    """
    c = A.coeffs
    zeta = complex(zeta)
    p = np.array([c[-1]], dtype=complex)
    for k in range(A.order - 1, -1, -1):
        q = np.zeros(len(p) + 1, dtype=complex)
        q[:-1] = zeta * p
        q[1:] += p
        q[0] += c[k]
        p = q
    return Series._wrap(p)


def coefficients_from_samples(f: Callable, r: float = 0.5, N: int = DEFAULT_ORDER,
                              samples: int | None = None) -> Series:
    """Recover ``c_0..c_N`` from values of ``f`` on the circle ``|z| = r``.

    ``f`` must accept a numpy array of points.  The trapezoidal rule on the
    circle is exact for trigonometric polynomials, so the only errors are
    aliasing (``c_{n+M} r^M``) and rounding amplified by ``r**-n``.
    """
    if not 0.0 < r < 1.0:
        raise BadRadius(f"sampling radius must lie in (0, 1), got {r!r}")
    M = 4 * (N + 1) if samples is None else int(samples)
    if M <= N:
        raise ValueError(f"need more than N={N} samples, got {M}")
    z = r * np.exp(2j * np.pi * np.arange(M) / M)
    vals = np.asarray(f(z), dtype=complex)
    c = np.fft.fft(vals)[: N + 1] / M
    return Series._wrap(c / r ** np.arange(N + 1))


def max_abs_diff(A: Series, B: Series) -> float:
    a, b, _ = _pair(A, B)
    return float(np.max(np.abs(a - b)))


def allclose(A: Series, B: Series, atol: float = ATOL, rtol: float = RTOL) -> bool:
    """Mixed test ``|a_n - b_n| <= atol + rtol |b_n|`` up to the common order."""
    a, b, _ = _pair(A, B)
    return bool(np.all(np.abs(a - b) <= atol + rtol * np.abs(b)))
