import math

import mpmath
import numpy as np
import pytest
from scipy import special as sp
from hypothesis import given, settings, strategies as st

from cavscat.special_fn import (DomainError, bessel, bessel_i_scaled, bessel_jy_sequence,
                                lambert_w, sequence_derivative)

mpmath.mp.dps = 40


def _series_j(m, z, terms=80):
    """Ascending series oracle, evaluated in extended precision."""
    z = mpmath.mpc(z)
    s = mpmath.mpf(0)
    for j in range(terms):
        s += (-z * z / 4) ** j / (mpmath.factorial(j) * mpmath.factorial(j + m))
    return complex(s * (z / 2) ** m)


def _mp(kind, m, z):
    z = mpmath.mpc(z) if isinstance(z, complex) else mpmath.mpf(z)
    f = {"J": mpmath.besselj, "Y": mpmath.bessely, "I": mpmath.besseli,
         "H1": lambda m, z: mpmath.hankel1(m, z)}[kind]
    return complex(f(m, z))


def test_trivial_values():
    assert bessel("J", 0, 0.0) == 1.0
    assert bessel("I", 0, 0.0) == 1.0
    assert bessel("J", 3, 0.0) == 0.0


def test_j0_20_series_oracle():
    v = bessel("J", 0, 20.0)
    assert abs(v - 0.1670246643) < 1e-10
    assert abs(v - _series_j(0, 20.0, 120).real) < 1e-12


def test_complex_argument_series_oracle():
    z = 1 + 0.5j
    assert abs(bessel("J", 2, z) - _series_j(2, z)) <= 1e-12 * abs(_series_j(2, z))


@pytest.mark.parametrize("kind", ["J", "Y", "H1", "I"])
@pytest.mark.parametrize("m,z", [(0, 0.3), (1, 2.5), (5, 7.0), (20, 30.0), (50, 120.0), (300, 450.0),
                                 (3, 2.0 - 0.4j), (7, 11.5 - 0.01j), (0, 0.07 - 0.02j)])
def test_against_mpmath(kind, m, z):
    if kind == "I" and isinstance(z, complex):
        pytest.skip("I is real-argument only")
    if kind == "I" and abs(z) > 300:
        pytest.skip("I overflows")
    ref = _mp(kind, m, z)
    got = complex(bessel(kind, m, z))
    assert abs(got - ref) <= 1e-12 * abs(ref) + 1e-300


def test_h1_is_j_plus_iy():
    z = np.linspace(0.1, 50, 37)
    for m in (0, 1, 4, 17):
        assert np.allclose(bessel("H1", m, z), bessel("J", m, z) + 1j * bessel("Y", m, z), rtol=1e-14, atol=0)


def test_domain_and_overflow():
    for kind in ("Y", "H1"):
        with pytest.raises(DomainError):
            bessel(kind, 1, 0.0)
    with pytest.raises(DomainError):
        bessel("J", -1, 1.0)
    with pytest.raises(DomainError):
        bessel("J", 1.5, 1.0)
    with pytest.raises(DomainError):
        bessel("J", 0, float("nan"))
    with pytest.raises(OverflowError):
        bessel("Y", 300, 1e-3)
    with pytest.raises(ValueError):
        bessel("K", 0, 1.0)


def test_derivative_matches_mpmath():
    for kind, f in (("J", mpmath.besselj), ("Y", mpmath.bessely), ("I", mpmath.besseli)):
        for m in (0, 1, 6):
            for x in (0.4, 3.3, 25.0):
                ref = float(f(m, x, derivative=1))
                assert abs(bessel(kind, m, x, derivative=True) - ref) <= 1e-12 * max(abs(ref), 1e-3)
    assert bessel("J", 1, 0.0, derivative=True) == 0.5
    assert bessel("I", 2, 0.0, derivative=True) == 0.0


def test_scaled_i():
    for m in (0, 1, 5):
        for x in (0.0, 0.7, 40.0, 700.0):
            ref = mpmath.besseli(m, x) * mpmath.exp(-x)
            assert abs(bessel_i_scaled(m, x) - float(ref)) <= 1e-13 * max(float(ref), 1e-300)
            if x == 0:
                continue
            dref = mpmath.besseli(m, x, derivative=1) * mpmath.exp(-x)
            assert abs(bessel_i_scaled(m, x, derivative=True) - float(dref)) <= 1e-12 * max(float(dref), 1e-3)
    with pytest.raises(DomainError):
        bessel_i_scaled(0, -1.0)


# property suites ----------------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(m=st.integers(0, 50), x=st.floats(0.1, 200.0))
def test_wronskian(m, x):
    J, dJ = bessel("J", m, x), bessel("J", m, x, derivative=True)
    Y, dY = bessel("Y", m, x), bessel("Y", m, x, derivative=True)
    w = J * dY - dJ * Y
    # cancellation scale: the two products individually
    scale = max(abs(J * dY), abs(dJ * Y), 2 / (math.pi * x))
    assert abs(w - 2 / (math.pi * x)) <= 1e-10 * scale


@settings(max_examples=300, deadline=None)
@given(m=st.integers(1, 60), x=st.floats(0.1, 300.0), kind=st.sampled_from(["J", "Y"]))
def test_recurrence(m, x, kind):
    lo, mid, hi = bessel(kind, m - 1, x), bessel(kind, m, x), bessel(kind, m + 1, x)
    scale = max(abs(lo), abs(hi), abs(2 * m / x * mid))
    assert abs(lo + hi - 2 * m / x * mid) <= 1e-10 * scale


@settings(max_examples=100, deadline=None)
@given(x=st.floats(0.05, 1200.0), m_max=st.integers(0, 400))
def test_sequences_match_single_order(x, m_max):
    J, Y = bessel_jy_sequence(m_max, [x])
    orders = np.arange(m_max + 2)
    envelope = np.hypot(sp.jv(orders, x), np.nan_to_num(sp.yv(orders, x), neginf=1e308))
    ok = np.isfinite(Y[:, 0]) & np.isfinite(sp.yv(orders, x))
    assert np.all(np.abs(J[:, 0] - sp.jv(orders, x)) <= 1e-11 * envelope)
    assert np.all(np.abs(Y[ok, 0] - sp.yv(orders[ok], x)) <= 1e-11 * envelope[ok])
    dJ = sequence_derivative(J, x)
    ref = np.array([bessel("J", m, x, derivative=True) for m in range(min(m_max, 5) + 1)])
    assert np.allclose(dJ[:ref.size, 0], ref, rtol=0, atol=1e-11 * envelope[:ref.size].max())


def test_sequence_domain():
    with pytest.raises(DomainError):
        bessel_jy_sequence(3, [0.0])


# Lambert W -------------------------------------------------------------------------

def test_lambert_examples():
    assert lambert_w(0, 0.0) == 0.0
    assert lambert_w(0, -math.exp(-1)) == -1.0
    assert lambert_w(-1, -math.exp(-1)) == -1.0
    # Newton oracle for W0(-0.1)
    w = -0.1
    for _ in range(50):
        w -= (w * math.exp(w) + 0.1) / (math.exp(w) * (w + 1))
    assert abs(lambert_w(0, -0.1) - w) < 1e-15
    assert abs(lambert_w(0, -0.1) + 0.1118325) < 1e-7


def test_lambert_domain():
    with pytest.raises(DomainError):
        lambert_w(0, -0.5)
    with pytest.raises(DomainError):
        lambert_w(-1, 0.1)
    with pytest.raises(DomainError):
        lambert_w(1, 0.1)
    with pytest.raises(DomainError):
        lambert_w(0, float("inf"))


@settings(max_examples=400, deadline=None)
@given(e=st.floats(-300, 300))
def test_lambert_roundtrip_principal(e):
    x = 10.0**e if e > -300 else 0.0
    for xv in (x, -math.exp(-1) * min(1.0, 10.0**(e / 30) if e < 0 else 1.0)):
        w = lambert_w(0, xv)
        assert abs(w * math.exp(w) - xv) <= 1e-13 * max(1.0, abs(xv))


@settings(max_examples=400, deadline=None)
@given(e=st.floats(-300, -1e-12))
def test_lambert_roundtrip_lower(e):
    x = -math.exp(-1) * 10.0**e  # log-spaced over (-1/e, 0)
    w = lambert_w(-1, x)
    assert w <= -1.0
    assert abs(w * math.exp(w) - x) <= 1e-13 * max(1.0, abs(x))
