"""Closed-form approximations and the eikonal impact-parameter integral.

Hot regime (``k/kappa_n >> 1``): Rabi-like coefficient envelopes, the
forward-lobe differential length and J_0 forms of the totals. Cold regime:
resonance profiles of ``4|B^b_m|^2`` for even and odd ``m``. Eikonal:
straight-line phases ``delta(b)`` integrated over impact parameter, with the
Lambert-W stationary points and critical angle of the gaussian mode.

Lengths are in units of ``1/kappa_n``; ``kappa_n_R`` is ``kappa_n R``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy import special as sp

from .model import ConvergenceError, ExitChannel, ModeFunction, ModeShape, kappa_n_scale
from .special_fn import lambert_w


@dataclass(frozen=True)
class HotRegimeParams:
    ratio: float  # k / kappa_n
    kappa_n_R: float

    def __post_init__(self):
        if not self.ratio > 0:
            raise ValueError("ratio k/kappa_n must be positive")
        if not self.kappa_n_R >= 0:
            raise ValueError("kappa_n R must be nonnegative")

    @classmethod
    def from_kappa_R(cls, ratio, kappa_R, n=0):
        return cls(ratio, kappa_R * kappa_n_scale(n))

    @property
    def rabi_angle(self):
        """``kappa_n R / (k/kappa_n)``, the Rabi angle accumulated across a diameter."""
        return self.kappa_n_R / self.ratio


def rabi_b(params):
    """Photon-emission envelope ``4|B^b|^2 ~ sin^2(kappa_n R / (k/kappa_n))``."""
    return math.sin(params.rabi_angle) ** 2


def rabi_a(params):
    """No-deexcitation envelope ``4|B^a|^2 ~ 4 sin^4(kappa_n R / (2 k/kappa_n))``."""
    return 4.0 * math.sin(params.rabi_angle / 2) ** 4


def hot_differential_b(theta, params):
    """Stationary-phase forward lobe of the dimensionless ``lambda^b(theta)``."""
    r = params.ratio
    s = (r**4) * np.asarray(theta, dtype=float) ** 2 + 1.0
    return r * r / 4.0 * (1.0 - np.sin(2.0 * params.kappa_n_R * np.sqrt(s) / r)) / s**1.5


def hot_totals(params):
    """J_0 forms ``(lambda^b, lambda^a)`` of the dimensionless totals."""
    a1 = sp.j0(params.rabi_angle)
    a2 = sp.j0(2.0 * params.rabi_angle)
    lb = 0.5 * (1.0 - math.pi / 2 * a2)
    la = 0.5 * (3.0 - 2.0 * math.pi * a1 + math.pi / 2 * a2)
    return float(lb), float(la)


def hot_total_b_stationary(params):
    """Intermediate form ``1/2 - sqrt(pi/32 * ratio/kappa_n R) cos(2 angle - pi/4)``."""
    if params.kappa_n_R == 0:
        raise ValueError("valid for kappa_n R >> 1 only")
    amp = math.sqrt(math.pi / 32 * params.ratio / params.kappa_n_R)
    return 0.5 - amp * math.cos(2.0 * params.rabi_angle - math.pi / 4)


def classical_average_rabi(params):
    """Rabi probability averaged over straight chords: ``(1 - J_0(2 angle))/2``."""
    return float(0.5 * (1.0 - sp.j0(2.0 * params.rabi_angle)))


def cold_phase(params):
    """``X = kappa_n R sqrt(1 + (k/kappa_n)^2)``."""
    return params.kappa_n_R * math.sqrt(1.0 + params.ratio**2)


def cold_resonance_profile(parity, params):
    """Cold-regime ``4|B^b_m|^2`` for even or odd ``m``."""
    X = cold_phase(params)
    inv2 = params.ratio ** -2
    if parity == "even":
        return (1.0 - math.cos(2 * X)) / (1.0 + inv2 * math.sin(X - math.pi / 4) ** 2)
    if parity == "odd":
        return (1.0 + math.cos(2 * X)) / (1.0 + inv2 * math.cos(X - math.pi / 4) ** 2)
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def cold_peak_positions(parity, ratio, window, n=0):
    """``kappa R`` values where the cold profile denominator is 1, inside ``window``.

    Even orders peak at ``X = pi/4 + j pi``, odd ones at ``X = 3 pi/4 + j pi``.
    Returned with the full width at half maximum of the profile in ``kappa R``.
    """
    lo, hi = window
    to_x = math.sqrt(1.0 + ratio * ratio) * kappa_n_scale(n)
    offset = math.pi / 4 if parity == "even" else 3 * math.pi / 4
    width = 2.0 * math.asin(min(ratio, 1.0)) / to_x
    j0 = math.ceil((lo * to_x - offset) / math.pi)
    out = []
    j = max(j0, 0)
    while (offset + j * math.pi) / to_x <= hi:
        x = (offset + j * math.pi) / to_x
        if x >= lo:
            out.append((x, width))
        j += 1
    return out


# eikonal ----------------------------------------------------------------------

def eikonal_phase_shift(mode: ModeFunction, b, ratio, sign=1.0):
    """Straight-line phase ``delta^pm(b)``; ``sign=+1`` is the repulsive channel."""
    b = np.asarray(b, dtype=float)
    k = ratio
    if mode.shape is ModeShape.CONSTANT:
        R = mode.size
        return -sign * np.sqrt(np.clip(R * R - b * b, 0.0, None)) / (2.0 * k)
    s = mode.size
    return -sign * s / (2.0 * k) * math.sqrt(math.pi / 2) * np.exp(-b * b / (2 * s * s))


def _profile(mode, exit, ratio):
    """Integrand weight ``C(t)`` and Jacobian on the integration variable.

    For the constant mode ``b = R sin t`` absorbs the square-root edge.
    """
    k = ratio
    if mode.shape is ModeShape.CONSTANT:
        R = mode.size
        t_max = math.pi / 2

        def b_of(t):
            return R * math.sin(t)

        def jac(t):
            return R * math.cos(t)

        def half_phase(t):
            return R * math.cos(t) / (2.0 * k)

        rate = R / k
    else:
        s = mode.size
        t_max = mode.cutoff_radius(1e-16)

        def b_of(t):
            return t

        def jac(t):
            return 1.0

        def half_phase(t):
            return s / (2.0 * k) * math.sqrt(math.pi / 2) * math.exp(-t * t / (2 * s * s))

        rate = math.sqrt(math.pi / 2) * math.exp(-0.5) / k

    exit = ExitChannel(exit)

    def C(t):
        d = half_phase(t)  # delta^- = d, delta^+ = -d
        if exit is ExitChannel.B:
            return (-2j * math.sin(2 * d)) / 4 * jac(t)
        return (2.0 * math.cos(2 * d) - 2.0) / 4 * jac(t)

    return b_of, C, t_max, rate


def eikonal_amplitude(mode: ModeFunction, exit, theta, ratio, tol=1e-8):
    """Eikonal scattering amplitude for a mode given in units of ``1/kappa_n``.

    ``f(theta) = sqrt(2/(pi k)) exp(-i pi/4) 2k int_0^b_max cos(k b theta) C(b) db``
    with ``C^b = (e^{2i delta+} - e^{2i delta-})/4`` and
    ``C^a = (e^{2i delta+} + e^{2i delta-} - 2)/4``. The range is cut into
    panels no longer than a quarter period of the fastest local phase and each
    panel integrated adaptively; ``tol`` bounds the summed absolute error.
    """
    k = float(ratio)
    if mode.size == 0:
        return 0j
    theta = abs(float(theta))
    b_of, C, t_max, rate = _profile(mode, exit, ratio)
    # largest d(phase)/dt of cos(k b theta) and of exp(2 i delta)
    if mode.shape is ModeShape.CONSTANT:
        omega = k * theta * mode.size + rate + 1.0
        panel = (math.pi / 2) / omega
    else:
        omega = k * theta + rate + 1.0
        panel = min((math.pi / 2) / omega, mode.size / 4)
    edges = np.linspace(0.0, t_max, max(2, math.ceil(t_max / panel)) + 1)
    budget = tol / (edges.size - 1)
    total = 0j
    err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        for part in (np.real, np.imag):
            val, e = integrate.quad(lambda t: float(part(math.cos(k * b_of(t) * theta) * C(t))),
                                    lo, hi, epsabs=budget / 4, epsrel=0.0, limit=200)
            total += val if part is np.real else 1j * val
            err += e
    if err > tol:
        raise ConvergenceError("eikonal quadrature did not reach tolerance", achieved=err)
    pref = math.sqrt(2.0 / (math.pi * k)) * complex(math.sqrt(0.5), -math.sqrt(0.5)) * 2.0 * k
    return pref * total


def eikonal_differential(mode: ModeFunction, exit, theta, ratio, tol=1e-8):
    """Dimensionless ``|f_eik(theta)|^2 / (2 size)``."""
    if mode.size == 0:
        return 0.0
    return abs(eikonal_amplitude(mode, exit, theta, ratio, tol)) ** 2 / mode.divisor


def critical_angle(ratio):
    """Gaussian-mode angle beyond which stationary points leave the real axis."""
    return math.sqrt(math.pi / (2.0 * math.e)) / ratio**2


def lambert_argument(theta, ratio):
    """``-(2/pi) (k/kappa_n)^4 theta^2``."""
    return -(2.0 / math.pi) * ratio**4 * theta**2


def gaussian_stationary_points(theta, ratio, sigma):
    """Real stationary impact parameters ``b_s = +/- i sigma sqrt(W(z))``.

    Both real branches of W contribute; an empty list means the
    stationary points are complex (``theta > theta_c``). Points are
    returned nonnegative and sorted.
    """
    z = lambert_argument(theta, ratio)
    if z < -math.exp(-1.0) * (1 + 4e-16):
        return []
    if z == 0:
        return [0.0]
    out = {sigma * math.sqrt(-lambert_w(br, z)) for br in (0, -1)}
    return sorted(out)
