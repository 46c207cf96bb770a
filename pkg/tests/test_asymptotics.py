import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp

from cavscat.asymptotics import (HotRegimeParams, classical_average_rabi, cold_peak_positions,
                                 cold_resonance_profile, critical_angle, eikonal_amplitude,
                                 eikonal_differential, eikonal_phase_shift, gaussian_stationary_points,
                                 hot_differential_b, hot_total_b_stationary, hot_totals, lambert_argument,
                                 rabi_a, rabi_b)
from cavscat.constant_mode import phase_shift_sequence
from cavscat.model import ModeFunction, ScatterConfig
from cavscat.scattering import build_table, differential

HOT = HotRegimeParams(10.0, 100.0)


def angle(a):
    return HotRegimeParams(1.0, a)


def test_rabi_examples():
    assert rabi_b(angle(math.pi)) == pytest.approx(0, abs=1e-30)
    assert rabi_b(angle(math.pi / 2)) == 1.0
    assert rabi_b(HOT) == pytest.approx(0.29595, abs=1e-5)
    assert rabi_a(angle(0.0)) == 0.0
    assert rabi_a(angle(math.pi)) == pytest.approx(4.0)
    assert rabi_a(HOT) == pytest.approx(4 * math.sin(5) ** 4)
    assert rabi_a(HOT) == pytest.approx(3.38, abs=5e-3)


def test_photon_number_scaling():
    p = HotRegimeParams.from_kappa_R(10.0, 100.0, n=3)
    assert p.kappa_n_R == pytest.approx(100 * math.sqrt(2))
    with pytest.raises(ValueError):
        HotRegimeParams(-1.0, 1.0)


def test_forward_lobe():
    # 25 (1 - sin 20) with sin(20) = +0.913
    assert hot_differential_b(0.0, HOT) == pytest.approx(25 * (1 - math.sin(20)), rel=1e-14)
    assert hot_differential_b(0.0, HOT) == pytest.approx(2.176, abs=1e-3)
    th = np.linspace(0, 0.05, 11)
    assert np.allclose(hot_differential_b(th, HOT), hot_differential_b(-th, HOT))
    # envelope decays as (r^4 theta^2 + 1)^(-3/2)
    big = np.array([0.5, 1.0, 2.0])
    env = 25 * 2 / (1e4 * big**2 + 1) ** 1.5
    assert np.all(hot_differential_b(big, HOT) <= env * (1 + 1e-12))


def test_hot_totals():
    z = 2.404825557695773
    lb, _ = hot_totals(angle(z / 2))
    assert lb == pytest.approx(0.5, abs=1e-15)
    lb, la = hot_totals(HOT)
    assert lb == pytest.approx(0.3688, abs=1e-4)


def test_stationary_total_form():
    # printed amplitude sqrt(pi/32 r/x); the large-x J_0 expansion of hot_totals gives sqrt(pi/16 r/x)
    p = HotRegimeParams(10.0, 4000.0)
    printed = 0.5 - hot_total_b_stationary(p)
    from_j0 = 0.5 - hot_totals(p)[0]
    assert printed * math.sqrt(2) == pytest.approx(from_j0, rel=1e-3)
    with pytest.raises(ValueError):
        hot_total_b_stationary(HotRegimeParams(10.0, 0.0))


def test_hot_totals_oscillation_decay():
    """Amplitude of the J_0 oscillation about 1/2 scales as (kappa_n R)^(-1/2)."""
    def amp(center):
        xs = np.linspace(center - 20, center + 20, 4001)
        return max(abs(hot_totals(HotRegimeParams(10.0, x))[0] - 0.5) for x in xs)
    assert amp(400.0) / amp(1600.0) == pytest.approx(2.0, rel=0.05)


@settings(max_examples=100)
@given(x=st.floats(0, 100))
def test_classical_average(x):
    p = HotRegimeParams(1.0, x)
    j = sp.j0(2 * x)
    assert classical_average_rabi(p) - hot_totals(p)[0] == pytest.approx((math.pi / 2 - 1) / 2 * j, abs=1e-14)


def test_classical_average_examples():
    assert classical_average_rabi(angle(0.0)) == 0.0
    assert classical_average_rabi(angle(2.404825557695773 / 2)) == pytest.approx(0.5, abs=1e-15)


def test_cold_profiles():
    # even form at X - pi/4 = j pi is exactly 1
    for j in range(4):
        x = (math.pi / 4 + j * math.pi) / math.sqrt(1.01)
        assert cold_resonance_profile("even", HotRegimeParams(0.1, x)) == pytest.approx(1.0, abs=1e-12)
    off = HotRegimeParams(0.1, (math.pi / 4 + math.pi / 2) / math.sqrt(1.01))
    assert cold_resonance_profile("even", off) < 2.0 / 100
    with pytest.raises(ValueError):
        cold_resonance_profile("both", off)
    peaks = cold_peak_positions("even", 0.1, (0, 10))
    assert np.allclose(np.diff([p for p, _ in peaks]), math.pi / math.sqrt(1.01))
    assert peaks[0][0] == pytest.approx(math.pi / 4 / math.sqrt(1.01))


def test_cold_profile_positions_deep_in_validity():
    """Analytic peaks track exact ones when kappa_n R >> kappa r_m."""
    ratio = 0.1
    for m in (0, 1):
        parity = "even" if m % 2 == 0 else "odd"
        for x0, _ in cold_peak_positions(parity, ratio, (30.0, 40.0)):
            xs = np.linspace(x0 - 0.3, x0 + 0.3, 601)
            d = np.array([phase_shift_sequence(m, "plus", ratio, x)[m] - phase_shift_sequence(m, "minus", ratio, x)[m]
                          for x in xs])
            exact = xs[np.argmax(np.sin(d) ** 2)]
            assert abs(exact - x0) <= 0.05


# eikonal -----------------------------------------------------------------------

def test_eikonal_phases():
    c = ModeFunction("constant", 3.0)
    assert eikonal_phase_shift(c, 0.0, 2.0) == pytest.approx(-0.75)
    assert eikonal_phase_shift(c, 4.0, 2.0) == 0
    assert eikonal_phase_shift(c, 1.0, 2.0, sign=-1) > 0
    g = ModeFunction("gaussian", 2.0)
    assert eikonal_phase_shift(g, 0.0, 1.0) == pytest.approx(-math.sqrt(math.pi / 2))


def test_eikonal_free_space():
    assert eikonal_amplitude(ModeFunction("constant", 0.0), "b_n1", 0.0, 10.0) == 0
    assert eikonal_differential(ModeFunction("gaussian", 0.0), "a_n", 0.0, 10.0) == 0


@pytest.fixture(scope="module")
def hot_exact():
    t = build_table(ScatterConfig(ModeFunction("constant", 100.0), 10.0))
    return t


@pytest.mark.parametrize("theta", [0.0, 0.004, 0.01, 0.02])
def test_eikonal_matches_partial_waves(hot_exact, theta):
    mode = ModeFunction("constant", 100.0)
    d = differential(hot_exact, thetas=np.array([theta]))
    for exit, exact in (("b_n1", d.lambda_b[0]), ("a_n", d.lambda_a[0])):
        eik = eikonal_differential(mode, exit, theta, 10.0)
        assert eik == pytest.approx(exact, rel=0.02, abs=0.01 * d.lambda_b.max())


def test_eikonal_lobe_peak_matches_closed_form():
    mode = ModeFunction("constant", 100.0)
    th = np.linspace(0, 0.05, 101)
    eik = np.array([eikonal_differential(mode, "b_n1", t, 10.0) for t in th])
    closed = hot_differential_b(th, HOT)
    assert eik.max() == pytest.approx(closed.max(), rel=0.03)
    assert abs(th[np.argmax(eik)] - th[np.argmax(closed)]) <= 2 * (th[1] - th[0])


@pytest.mark.xfail(strict=True, reason="closed-form forward value 2.176 vs quadrature 1.484")
def test_eikonal_forward_value_within_two_percent():
    mode = ModeFunction("constant", 100.0)
    assert eikonal_differential(mode, "b_n1", 0.0, 10.0) == pytest.approx(hot_differential_b(0.0, HOT), rel=0.02)


def test_gaussian_drop_past_critical_angle():
    ratio = 10.0
    tc = critical_angle(ratio)
    mode = ModeFunction("gaussian", 20.0)
    inside = eikonal_differential(mode, "b_n1", tc / 2, ratio)
    outside = eikonal_differential(mode, "b_n1", 2 * tc, ratio)
    assert inside > 10 * outside


def test_critical_angle():
    assert critical_angle(10.0) == pytest.approx(7.602e-3, rel=1e-4)
    assert critical_angle(1.0) == pytest.approx(0.7602, rel=1e-4)
    for r in (0.5, 3.0, 10.0):
        assert lambert_argument(critical_angle(r), r) == pytest.approx(-math.exp(-1), rel=1e-15)


def test_stationary_points():
    r, s = 10.0, 3.0
    tc = critical_angle(r)
    assert gaussian_stationary_points(0.0, r, s) == [0.0]
    assert gaussian_stationary_points(1.01 * tc, r, s) == []
    at = gaussian_stationary_points(tc, r, s)
    assert at == pytest.approx([s], rel=1e-6)  # the two branches merge
    pts = gaussian_stationary_points(0.5 * tc, r, s)
    assert len(pts) == 2 and pts[0] < s < pts[1]
    # stationarity: d/db [k b theta + 2 delta(b)] = 0 for the emitting channel pair
    th = 0.5 * tc
    for b in pts:
        slope = math.sqrt(math.pi / 2) * b / (r * s) * math.exp(-b * b / (2 * s * s))
        assert r * th == pytest.approx(slope, rel=1e-10)
