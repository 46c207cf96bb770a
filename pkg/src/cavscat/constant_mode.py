"""Closed-form partial waves for the transverse constant (top-hat) mode.

Inside ``r <= R`` the radial function of channel +/- is ``A_m C_m(q r)`` with
``q = sqrt(|k^2 -/+ kappa_n^2|)`` and ``C = J`` (propagating) or ``C = I``
(evanescent, repulsive channel with ``k < kappa_n``). Outside it is
``i^m J_m(kr) + B_m H_m(kr)`` per partial wave (the common ``eps_m/sqrt(2)``
factor dropped). Value and slope continuity at ``r = R`` fix ``A_m, B_m``.

Low-level functions take explicit ``(k, kappa_n, R)`` in any consistent unit
so that ``kappa_n = 0`` (no field) and unit-scaling checks are expressible;
the ``cfg`` wrappers work in units of ``1/kappa_n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .model import Channel, ModeShape, ScatterConfig
from .special_fn import BesselKind, bessel, bessel_i_scaled, bessel_jy_sequence, sequence_derivative


@dataclass(frozen=True)
class ChannelWavenumbers:
    k: float
    k_plus: float
    k_minus: float
    regime: str  # "propagating" or "evanescent", for the plus channel


def channel_wavenumbers(k, kappa_n=1.0):
    """Interior wavenumbers ``k_pm = sqrt(|k^2 -/+ kappa_n^2|)``."""
    regime = "propagating" if k >= kappa_n else "evanescent"
    return ChannelWavenumbers(
        k=k,
        k_plus=math.sqrt(abs(k * k - kappa_n * kappa_n)),
        k_minus=math.sqrt(k * k + kappa_n * kappa_n),
        regime=regime,
    )


def _interior_sequence(m_max, channel, k, kappa_n, R):
    """Value ``C`` and radial slope ``D`` of the regular interior solution at R.

    Both are returned for ``m = 0..m_max`` and may share an arbitrary
    positive per-order factor (the evanescent branch drops ``exp(qR)``).
    """
    ch = Channel(channel)
    waves = channel_wavenumbers(k, kappa_n)
    m = np.arange(m_max + 1)
    if ch is Channel.MINUS or waves.regime == "propagating":
        q = waves.k_minus if ch is Channel.MINUS else waves.k_plus
        if q == 0.0:
            # k == kappa_n exactly: interior solution r**m, slope m/R
            return np.ones(m_max + 1), m / R
        J, _ = bessel_jy_sequence(m_max, [q * R])
        J = J[:, 0]
        return J[:-1], q * sequence_derivative(J, q * R)
    q = waves.k_plus
    orders = np.arange(m_max + 2)
    I = sp.ive(orders, q * R)
    return I[:-1], q * sequence_derivative(I, q * R, kind=BesselKind.I)


def phase_shift_sequence(m_max, channel, k, R, kappa_n=1.0):
    """Phase shifts ``delta_m`` for ``m = 0..m_max``, each in (-pi/2, pi/2].

    ``tan delta = (k C J' - D J) / (k C Y' - D Y)`` with Bessel functions of
    ``kR``. Orders whose ``Y_m(kR)`` leaves the double range do not scatter
    at double precision and get exactly 0.
    """
    if R == 0 or kappa_n == 0:
        return np.zeros(m_max + 1)
    C, D = _interior_sequence(m_max, channel, k, kappa_n, R)
    J, Y = bessel_jy_sequence(m_max, [k * R])
    J, Y = J[:, 0], Y[:, 0]
    dJ = sequence_derivative(J, k * R)
    dY = sequence_derivative(Y, k * R)
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        num = k * C * dJ - D * J[:-1]
        den = k * C * dY - D * Y[:-1]
        delta = np.arctan(num / den)
    delta = np.where(np.isfinite(delta), delta, 0.0)
    return np.where(delta == -np.pi / 2, np.pi / 2, delta)


def matching_coefficients_raw(m, channel, k, R, kappa_n=1.0):
    """``(A_m, B_m)`` from continuity of value and slope at ``r = R``."""
    if R == 0 or kappa_n == 0:
        return 0j, 0j
    ch = Channel(channel)
    waves = channel_wavenumbers(k, kappa_n)
    kR = k * R
    J, dJ = bessel("J", m, kR), bessel("J", m, kR, derivative=True)
    H, dH = bessel("H1", m, kR), bessel("H1", m, kR, derivative=True)
    log_scale = 0.0
    if ch is Channel.MINUS or waves.regime == "propagating":
        q = waves.k_minus if ch is Channel.MINUS else waves.k_plus
        if q == 0.0:
            C, D = 1.0, m / R
            log_scale = m * math.log(R) if m else 0.0
        else:
            C, D = bessel("J", m, q * R), q * bessel("J", m, q * R, derivative=True)
    else:
        q = waves.k_plus
        C = bessel_i_scaled(m, q * R)
        D = q * bessel_i_scaled(m, q * R, derivative=True)
        log_scale = q * R
    im = complex(i_power(m))
    B = im * (k * C * dJ - D * J) / (D * H - k * C * dH)
    exterior = im * J + B * H
    A = exterior / C * math.exp(-log_scale) if C != 0 else complex("nan")
    return complex(A), complex(B)


def _require_constant(cfg):
    if cfg.mode.shape is not ModeShape.CONSTANT:
        raise ValueError("closed-form solution exists for the constant mode only")


def matching_coefficients(m, channel, cfg: ScatterConfig):
    _require_constant(cfg)
    return matching_coefficients_raw(m, channel, cfg.k, cfg.mode_n.size)


def phase_shift(m, channel, cfg: ScatterConfig):
    _require_constant(cfg)
    return float(phase_shift_sequence(m, channel, cfg.k, cfg.mode_n.size)[m])


def phase_shifts(cfg: ScatterConfig, m_max):
    """``(delta_plus, delta_minus)`` arrays for ``m = 0..m_max``."""
    _require_constant(cfg)
    R = cfg.mode_n.size
    return (
        phase_shift_sequence(m_max, Channel.PLUS, cfg.k, R),
        phase_shift_sequence(m_max, Channel.MINUS, cfg.k, R),
    )


def coefficient_from_phase(m, delta):
    """``B_m = (i^m / 2)(exp(2 i delta) - 1)``."""
    return i_power(m) / 2 * (np.exp(2j * np.asarray(delta)) - 1)


_I_POWERS = np.array([1, 1j, -1, -1j])


def i_power(m):
    """Exact ``i**m`` for integer (array) ``m``."""
    return _I_POWERS[np.asarray(m) % 4]


def unrolled_phase_shifts(m, channel, cfg: ScatterConfig, sizes):
    """Phase shift along a scan of mode sizes, made continuous by adding multiples of pi."""
    deltas = np.array([phase_shift(m, channel, cfg.with_size(s)) for s in sizes])
    return np.unwrap(deltas, period=np.pi)
