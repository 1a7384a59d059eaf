import itertools
import math

import numpy as np
import pytest

from harmkoebe import analysis as A
from harmkoebe import maps
from harmkoebe.errors import BadParameter
from harmkoebe.shear import HarmonicMap, make_KaR, make_KaR_closed_form, rotate

# 2 tan(pi / (2a)), evaluated with mpmath at 30 digits
PREIMAGE_GAP = {2.1: 1.8557288069481048654, 2.5: 1.4530850560107217718,
                3.0: 1.154700538379251529, 4.0: 0.8284271247461900976}


def random_disk(n, rmax, seed=0):
    rng = np.random.default_rng(seed)
    return rmax * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


# --- collisions --------------------------------------------------------------------

@pytest.mark.parametrize("a, R", list(itertools.product(PREIMAGE_GAP, (0.0, 0.5, 1.0))))
def test_collision_witness(a, R):
    w = A.collision_witness(a, R)
    assert w.image_gap <= 1e-8
    assert w.preimage_gap == pytest.approx(PREIMAGE_GAP[a], rel=1e-14)
    assert abs(w.z1) < 1 and abs(w.z2) < 1
    assert w.z2 == w.z1.conjugate()


def test_witness_examples():
    w = A.collision_witness(2.5)
    assert w.z1 == pytest.approx(0.726542528005360885j, abs=1e-15)
    assert maps.make_generalized_koebe(2.5).value(w.z1) == pytest.approx(-0.4, abs=1e-13)
    assert A.collision_witness(3).z1 == pytest.approx(1j / math.sqrt(3), abs=1e-15)
    assert A.collision_witness(4, 0.5).image_gap <= 1e-8
    # closed-form K_{a,R} collides at the same points
    assert A.collision_witness(3, 0.5, f=make_KaR_closed_form(3, 0.5)).image_gap <= 1e-12


def test_witness_domain():
    with pytest.raises(BadParameter):
        A.collision_witness(2.0)
    with pytest.raises(BadParameter):
        A.reflected_witness(-2.0)


@pytest.mark.parametrize("a, R", [(-3, 0), (-2.5, 0.5), (-4, 1)])
def test_reflected_witness(a, R):
    w = A.reflected_witness(a, R)
    assert w.image_gap <= 1e-8
    assert w.preimage_gap == pytest.approx(2 * math.tan(math.pi / (2 * -a)))


def test_witness_csv():
    text = A.collision_witness(2.5, 0.5).to_csv()
    head, row = text.strip().split("\n")
    assert head == "z1,z2,image_gap,preimage_gap"
    z1, z2, ig, pg = row.split(",")
    assert complex(z1) == A.collision_witness(2.5, 0.5).z1
    assert float(pg) == pytest.approx(PREIMAGE_GAP[2.5])


@pytest.mark.parametrize("a, R", list(itertools.product((-2, -1, 0, 1, 2), (0, 0.5, 1))))
def test_probe_finds_nothing_for_univalent(a, R):
    assert A.injectivity_probe(make_KaR(a, R), samples=5000) is None


def test_probe_finds_injected_witness():
    w = A.collision_witness(2.5, 0.5)
    got = A.injectivity_probe(make_KaR(2.5, 0.5), samples=2000, extra_points=[w.z1, w.z2])
    assert got is not None
    assert {got.z1, got.z2} == {w.z1, w.z2}
    assert got.image_gap < 1e-6 * got.preimage_gap


def test_probe_k0_and_determinism():
    k0 = HarmonicMap(maps.make_k0(), maps.make_zero(), "k0")
    assert A.injectivity_probe(k0, samples=2000) is None
    p1, p2 = A.probe_points(300, seed=4), A.probe_points(300, seed=4)
    assert np.array_equal(p1, p2)
    assert np.max(np.abs(p1)) <= 0.95
    with pytest.raises(BadParameter):
        A.injectivity_probe(k0, samples=1)


# --- bounds ------------------------------------------------------------------------

def test_growth_examples():
    lo, hi = A.growth_bounds(3, 0.5)
    assert hi == pytest.approx(13 / 3, rel=1e-15)
    assert lo == pytest.approx(13 / 81, rel=1e-15)
    lo, hi = A.growth_bounds(2.2, 1e-7)
    assert lo == pytest.approx(1e-7, rel=1e-6) and hi == pytest.approx(1e-7, rel=1e-6)


def test_distortion_examples():
    lo, hi = A.distortion_bounds(3, 0.5)
    assert hi == pytest.approx(36, rel=1e-15)
    assert lo == pytest.approx(4 / 81, rel=1e-15)
    for r in (0.1, 0.7):
        assert A.distortion_bounds(1, r) == pytest.approx((1 / (1 + r) ** 2, 1 / (1 - r) ** 2))


@pytest.mark.parametrize("alpha, r", [(0.5, 0.5), (2, 0), (2, 1), (2, -0.1)])
def test_bounds_domain(alpha, r):
    with pytest.raises(BadParameter):
        A.growth_bounds(alpha, r)
    with pytest.raises(BadParameter):
        A.distortion_bounds(alpha, r)


GRID = [(a, R) for a, R in itertools.product((0, 0.5, 1, 1.5, 2), (0, 0.25, 0.5, 0.75, 1))
        if a + R >= 1]


@pytest.mark.parametrize("a, R", GRID)
def test_equality_report(a, R):
    for r in (0.1, 0.5, 0.9):
        rep = A.equality_report(a, R, r, tol=1e-9)
        assert rep.passed, rep.to_dict()
        assert rep.max_residual() <= 1e-9


def test_equality_spot_values():
    rep = A.equality_report(2, 1, 0.5)
    assert rep.measured["growth_upper"] == pytest.approx(13 / 3, rel=1e-12)
    assert rep.measured["distortion_upper"] == pytest.approx(36, rel=1e-12)
    assert rep.measured["distortion_lower"] == pytest.approx(4 / 81, rel=1e-12)
    d = rep.to_dict()
    assert d["alpha"] == 3 and d["pass"] is True


def test_equality_report_domain():
    with pytest.raises(BadParameter):
        A.equality_report(0.2, 0.3, 0.5)
    with pytest.raises(BadParameter):
        A.equality_report(2.5, 0, 0.5)


def test_equality_fails_for_wrong_map():
    rep = A.equality_report(2, 1, 0.5, f=make_KaR(1.5, 1))
    assert not rep.passed


def test_equality_under_rotation():
    f, eta = make_KaR(1.5, 0.5), np.exp(0.7j)
    g = rotate(f, eta)
    r = 0.6
    # |f_eta(conj(eta) r)| = |f(r)|
    assert abs(g.value(np.conj(eta) * r)) == pytest.approx(abs(f.value(r)), rel=1e-10)


def _sandwich_gaps(a, R, n=200):
    alpha = a + R
    f = make_KaR(a, R)
    z = random_disk(n, 0.95, seed=2)
    r = np.abs(z)
    w = np.abs(f.value(z))
    dh, dg = np.abs(f.h.derivative(z)), np.abs(f.g.derivative(z))
    g = np.array([A.growth_bounds(alpha, x) for x in r])
    d = np.array([A.distortion_bounds(alpha, x) for x in r])
    return {"growth_lower": w - g[:, 0], "growth_upper": g[:, 1] - w,
            "distortion_upper": d[:, 1] - (dh + dg), "distortion_lower": (dh - dg) - d[:, 0]}


@pytest.mark.parametrize("a, R", GRID)
def test_bound_sandwich(a, R):
    gaps = _sandwich_gaps(a, R)
    for key in ("growth_lower", "growth_upper", "distortion_upper"):
        assert gaps[key].min() >= -1e-10, key
    if a >= 1:
        assert gaps["distortion_lower"].min() >= -1e-10


def test_distortion_lower_bound_fails_off_axis_for_small_a():
    # with alpha = a + R the lower bound on |h'| - |g'| is attained at z = -r but is
    # not a global bound when a < 1; value checked with mpmath at 30 digits
    f = make_KaR(0, 1)
    r, t = 0.9, 7 * math.pi / 12
    z = r * np.exp(1j * t)
    lo, _ = A.distortion_bounds(1, r)
    gap = abs(f.h.derivative(z)) - abs(f.g.derivative(z)) - lo
    assert gap == pytest.approx(-0.239108958081988503, abs=1e-9)


# --- Schwarzian ----------------------------------------------------------------

def test_schwarzian_examples():
    assert A.schwarzian(maps.make_koebe(), 0) == pytest.approx(-6)
    assert abs(A.schwarzian(maps.make_generalized_koebe(1), 0.3 + 0.2j)) < 1e-12
    assert abs(A.schwarzian(maps.make_identity(), 0.4j)) < 1e-9
    z = 0.3 - 0.5j
    assert A.schwarzian(maps.make_generalized_koebe(1.7), z) == pytest.approx(
        2 * (1 - 1.7 ** 2) / (1 - z * z) ** 2, rel=1e-12)


@pytest.mark.parametrize("a", [0.5, 1.5, 2, 3 + 1j])
def test_schwarzian_exact_vs_numeric(a):
    z = random_disk(100, 0.9, seed=3)
    k = maps.make_generalized_koebe(a)
    assert np.max(np.abs(A.schwarzian(k, z) - A.schwarzian(k, z, method="numeric"))) <= 1e-6


def test_schwarzian_numeric_lens():
    z = random_disk(20, 0.8, seed=5)
    # l_R = R k_R / (1 + R k_R) is a Moebius image of k_R, and S is Moebius invariant
    S1 = A.schwarzian(maps.make_lens(0.6), z)
    S2 = A.schwarzian_koebe_closed_form(0.6, z)
    assert np.max(np.abs(S1 - S2)) < 1e-7


@pytest.mark.parametrize("M", [0, 2, 6])
def test_schwarzian_norm(M):
    a = math.sqrt(1 + M / 2)
    norm = A.schwarzian_norm(maps.make_generalized_koebe(a), 64)
    assert M - 1e-3 <= norm <= M + 1e-6


def test_schwarzian_norm_refinement():
    k = maps.make_generalized_koebe(2.5)
    vals = [A.schwarzian_norm(k, g) for g in (8, 16, 32, 64)]
    assert all(x <= y + 1e-12 for x, y in zip(vals, vals[1:]))
    assert vals[-1] <= 2 * abs(1 - 2.5 ** 2) + 1e-6
