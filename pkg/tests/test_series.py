import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from harmkoebe import series as S
from harmkoebe.errors import BadConstantTerm, BadRadius, DivisionByNonUnit
from harmkoebe.maps import make_generalized_koebe
from harmkoebe.series import Series


def poly(*c, order=None):
    return Series(c, order)


def frac(xs):
    return np.array([float(Fraction(x)) for x in xs])


# coefficients frozen from a sympy expansion
K3_PLUS_K2 = frac(["0", "2", "5", "28/3", "15", "22", "91/3"])
HP_H = frac(["0", "1", "3/2", "2", "5/2", "3", "7/2"])


# --- construction ---------------------------------------------------------

def test_length_matches_order():
    s = Series([1, 2], 5)
    assert len(s.coeffs) == 6
    assert s.order == 5
    assert np.all(s.coeffs[2:] == 0)


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        Series([1, np.nan])
    with pytest.raises(ValueError):
        Series([np.inf], 3)


def test_coeffs_are_read_only():
    s = Series([1, 2, 3])
    with pytest.raises(ValueError):
        s.coeffs[0] = 5


def test_binary_ops_truncate_to_min_order():
    a, b = Series.one(7), Series.variable(3)
    for op in (S.add, S.mul, S.div):
        assert op(a, b + 1).order == 3
    assert (a - b).order == 3


# --- add / mul --------------------------------------------------------------

def test_add_cancels():
    assert np.allclose((poly(1, 1) + poly(1, -1)).coeffs, [2, 0])


def test_add_zero_identity():
    a = poly(1, 2j, 3)
    assert S.add(a, Series.zero(2)) == a


def test_add_generalized_koebe():
    s = make_generalized_koebe(3).series(6) + make_generalized_koebe(2).series(6)
    assert np.allclose(s.coeffs, K3_PLUS_K2, atol=1e-13)


def test_mul_examples():
    assert np.allclose(S.mul(poly(1, 1), poly(1, -1)).coeffs, [1, 0, -1][:2])
    assert np.allclose(S.mul(poly(1, 1, 0), poly(1, -1, 0)).coeffs, [1, 0, -1])
    a = poly(0.5, -1j, 2, order=4)
    assert S.mul(a, Series.one(4)) == a


def test_mul_squared_cayley():
    z = Series.variable(4)
    geo2 = Series(np.arange(1, 6), 4)  # 1/(1-z)^2
    out = (1 + z) * (1 + z) * geo2
    assert np.allclose(out.coeffs, [1, 4, 8, 12, 16])


# --- div --------------------------------------------------------------------

def test_div_geometric():
    q = Series.one(10) / poly(1, -1, order=10)
    assert np.allclose(q.coeffs, 1)


def test_div_self_is_one():
    a = poly(2 + 1j, 3, -1, order=6)
    assert np.allclose((a / a).coeffs, Series.one(6).coeffs, atol=1e-15)


def test_div_koebe_derivative():
    # k'(z) = (1+z)/(1-z)^3, and its coefficients are (n+1)^2
    z = Series.variable(8)
    kp = (1 + z) / ((1 - z) * (1 - z) * (1 - z))
    assert np.allclose(kp.coeffs[:3], [1, 4, 9])
    assert np.allclose(kp.coeffs, (np.arange(9) + 1.0) ** 2)


def test_div_by_non_unit():
    with pytest.raises(DivisionByNonUnit):
        Series.one(3) / Series.variable(3)
    with pytest.raises(DivisionByNonUnit):
        S.div(Series.one(3), poly(1e-15, 1, order=3))


# --- exp / log / power --------------------------------------------------------

def test_exp_of_z():
    from math import factorial

    e = S.exp(Series.variable(12))
    assert np.allclose(e.coeffs, [1 / factorial(n) for n in range(13)], rtol=1e-14)


def test_log_geometric():
    g = S.log(Series(np.ones(11)))
    assert np.allclose(g.coeffs, [0] + [1 / n for n in range(1, 11)])


def test_log_gives_k0():
    z = Series.variable(7)
    k0 = 0.5 * (S.log(1 + z) - S.log(1 - z))
    assert np.allclose(k0.coeffs, [0, 1, 0, 1 / 3, 0, 1 / 5, 0, 1 / 7])


def test_exp_log_bad_constant():
    with pytest.raises(BadConstantTerm) as err:
        S.exp(poly(0.5, 1))
    assert err.value.value == 0.5
    with pytest.raises(BadConstantTerm):
        S.log(poly(2, 1))
    with pytest.raises(BadConstantTerm):
        S.power(poly(0, 1), 0.5)


def test_power_examples():
    z = Series.variable(4)
    A = (1 + z) / (1 - z)
    assert np.allclose(S.power(A, 0).coeffs, Series.one(4).coeffs)
    assert np.allclose(S.power(A, 1).coeffs, A.coeffs)
    assert np.allclose((A ** 2).coeffs, [1, 4, 8, 12, 16])


# --- calculus and composition ---------------------------------------------------

def test_derivative_integrate():
    assert np.allclose(S.derivative(poly(0, 0, 1)).coeffs, [0, 2])
    assert S.derivative(poly(0, 0, 1)).order == 1
    a = poly(3, 1, -2j, 5)
    back = S.integrate(S.derivative(a))
    assert back.order == a.order
    assert np.allclose(back.coeffs, a.coeffs - np.array([3, 0, 0, 0]))


def test_integrate_halfplane_h():
    z = Series.variable(6)
    dh = Series.one(6) / ((1 - z) * (1 - z) * (1 - z))
    assert np.allclose(S.integrate(dh).coeffs[:7], HP_H)


def test_compose_examples():
    a = poly(1, 2, 3j, -4, order=3)
    assert np.allclose(S.compose(a, Series.variable(3)).coeffs, a.coeffs)
    koebe = Series(np.arange(6.0), 5)
    out = S.compose(koebe, -Series.variable(5))
    assert np.allclose(out.coeffs[:4], [0, -1, 2, -3])
    z = Series.variable(10)
    e1 = S.exp(z) - 1
    assert np.allclose(S.compose(e1, S.log(1 + z)).coeffs, z.coeffs, atol=1e-15)
    with pytest.raises(BadConstantTerm):
        S.compose(a, poly(0.1, 1))


def test_taylor_shift_matches_direct():
    # 1/(1-z) recentred at zeta: 1/(1-zeta) * sum (w/(1-zeta))^n
    zeta = 0.3 - 0.2j
    s = S.taylor_shift(Series(np.ones(80)), zeta).truncate(10)
    want = (1 / (1 - zeta)) ** (np.arange(11) + 1)
    assert np.allclose(s.coeffs, want, rtol=1e-12)


def test_horner_evaluation():
    a = poly(1, 2, 3)
    assert a(0.5) == pytest.approx(1 + 1 + 0.75)
    assert np.allclose(a(np.array([0, 1j])), [1, 1 + 2j - 3])


# --- DFT recovery -------------------------------------------------------------

def test_samples_geometric():
    c = S.coefficients_from_samples(lambda w: 1 / (1 - w), r=0.5, N=8)
    assert np.max(np.abs(c.coeffs - 1)) < 1e-10


def test_samples_constant():
    c = S.coefficients_from_samples(lambda w: 5 + 0 * w, N=6)
    assert abs(c.coeffs[0] - 5) < 1e-14
    assert np.max(np.abs(c.coeffs[1:])) < 1e-13


def test_samples_koebe():
    k = make_generalized_koebe(2)
    c = S.coefficients_from_samples(k.value, r=0.5, N=10)
    assert np.max(np.abs(c.coeffs - np.arange(11))) < 1e-8


def test_samples_bad_radius():
    for r in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(BadRadius):
            S.coefficients_from_samples(lambda w: w, r=r, N=4)


# --- serialization ------------------------------------------------------------

def test_csv_json_round_trip_bit_exact():
    rng = np.random.default_rng(5)
    a = Series(rng.normal(size=9) + 1j * rng.normal(size=9) / 3)
    assert Series.from_csv(a.to_csv()) == a
    b = Series.from_json(a.to_json())
    assert np.array_equal(b.coeffs, a.coeffs)
    assert json.loads(a.to_json())["trunc"] == 8


# --- properties -------------------------------------------------------------

coef = st.floats(-1, 1, allow_nan=False)
cplx = st.builds(complex, coef, coef)


def series_st(n=8, unit=None):
    def build(cs):
        c = np.array(cs, dtype=complex)
        if unit is not None:
            c[0] = unit
        return Series(c)
    return st.lists(cplx, min_size=n + 1, max_size=n + 1).map(build)


def close(x, y, rel):
    scale = max(1.0, np.max(np.abs(y.coeffs)))
    return np.max(np.abs(x.coeffs - y.coeffs)) <= rel * scale


@settings(max_examples=60, deadline=None)
@given(series_st(), series_st(), series_st())
def test_ring_axioms(a, b, c):
    assert close(a + b, b + a, 1e-12)
    assert close(a * b, b * a, 1e-12)
    assert close((a + b) + c, a + (b + c), 1e-12)
    assert close((a * b) * c, a * (b * c), 1e-12)
    assert close(a * (b + c), a * b + a * c, 1e-12)


def _unit_divisor(b, mod, arg):
    c = b.coeffs.copy()
    c[0] = mod * np.exp(1j * arg)
    return Series(c)


def _inf(s):
    return float(np.max(np.abs(s.coeffs)))


@settings(max_examples=60, deadline=None)
@given(series_st(), series_st(), st.floats(0.1, 1), st.floats(0, 2 * np.pi))
def test_div_mul_round_trip(a, b, mod, arg):
    # the 1e-12 relative bound is only reachable when the quotient stays moderate;
    # rounding leaves a residual of order eps * |Q| * |B| (see next test)
    b = _unit_divisor(b, mod, arg)
    q = S.div(a, b)
    assume(_inf(a) > 0 and _inf(q) * _inf(b) <= 1e3 * _inf(a))
    err = np.max(np.abs(S.mul(q, b).coeffs - a.coeffs))
    assert err <= 1e-12 * _inf(a)


@settings(max_examples=60, deadline=None)
@given(series_st(n=16), series_st(n=16), st.floats(0.1, 1), st.floats(0, 2 * np.pi))
def test_div_backward_stable(a, b, mod, arg):
    b = _unit_divisor(b, mod, arg)
    q = S.div(a, b)
    err = np.max(np.abs(S.mul(q, b).coeffs - a.coeffs))
    assert err <= 1e-14 * _inf(q) * _inf(b) + 1e-300


@settings(max_examples=60, deadline=None)
@given(series_st(unit=0), series_st(unit=1))
def test_exp_log_inverse(a, b):
    a, b = a * 0.5, Series(np.r_[1, 0.5 * b.coeffs[1:]])
    assert close(S.log(S.exp(a)), a, 1e-12)
    assert close(S.exp(S.log(b)), b, 1e-12)


@settings(max_examples=60, deadline=None)
@given(series_st(unit=1), cplx, cplx)
def test_power_additive(A, x, y):
    A = Series(np.r_[1, 0.5 * A.coeffs[1:]])
    x, y = 3 * x / max(1, abs(x) * 1.0001), 3 * y / max(1, abs(y) * 1.0001)
    lhs = S.power(A, x + y)
    rhs = S.mul(S.power(A, x), S.power(A, y))
    assert close(lhs, rhs, 1e-11)


@settings(max_examples=40, deadline=None)
@given(series_st(n=20), st.integers(1, 20))
def test_samples_recover_series(a, N):
    a = a.truncate(N)
    c = S.coefficients_from_samples(a, r=0.5, N=N)
    assert np.max(np.abs(c.coeffs - a.coeffs)) <= 1e-9
