"""From dressed-channel phase shifts to bare-basis amplitudes and lengths.

Channel coefficients ``B^pm_m = (i^m/2)(exp(2 i delta^pm_m) - 1)`` combine
into the exit channels ``B^a = (B^+ + B^-)/2`` (atom leaves excited) and
``B^b = (B^+ - B^-)/2`` (photon left in the mode). Scattering lengths carry
the units of ``1/kappa_n``; dimensionless values divide by ``2R`` or
``2 sigma``.

Normalization: the incident dressed superposition carries weights
``1/sqrt(2)`` per channel. These are absorbed into the exit-channel
combination, so ``lambda^a + lambda^b = (lambda^+ + lambda^-)/2`` holds
with ``lambda^pm = (4/k) sum eps_m sin^2 delta^pm_m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import constant_mode
from .constant_mode import coefficient_from_phase, i_power
from .model import (Channel, ConvergenceError, ExitChannel, ModeShape, ScatterConfig, auto_m_max,
                    initial_m_max)
from .radial import solve_radial

_RUN = 3


@dataclass(frozen=True)
class PartialWaveTable:
    m: np.ndarray
    delta_plus: np.ndarray
    delta_minus: np.ndarray
    B_plus: np.ndarray
    B_minus: np.ndarray
    B_a: np.ndarray
    B_b: np.ndarray
    k: float  # units of kappa_n
    divisor: float  # 2R or 2 sigma, units of 1/kappa_n

    @property
    def m_max(self):
        return int(self.m[-1])

    @classmethod
    def from_phases(cls, delta_plus, delta_minus, k, divisor):
        dp = np.asarray(delta_plus, dtype=float)
        dm = np.asarray(delta_minus, dtype=float)
        m = np.arange(dp.size)
        bp = coefficient_from_phase(m, dp)
        bm = coefficient_from_phase(m, dm)
        return cls(m, dp, dm, bp, bm, (bp + bm) / 2, (bp - bm) / 2, float(k), float(divisor))

    def coefficients(self, exit):
        return self.B_a if ExitChannel(exit) is ExitChannel.A else self.B_b


@dataclass(frozen=True)
class AngularDistribution:
    thetas: np.ndarray
    lambda_a: np.ndarray
    lambda_b: np.ndarray


@dataclass(frozen=True)
class ScatterSummary:
    lambda_a_total: float
    lambda_b_total: float
    lambda_plus_total: float
    lambda_minus_total: float


def weights(m):
    """Neumann factors ``eps_0 = 1``, ``eps_m = 2``."""
    return np.where(np.asarray(m) == 0, 1.0, 2.0)


def trig_abs2(delta_plus, delta_minus):
    """``(|B^a|^2, |B^b|^2)`` written through the phase shifts alone."""
    d = np.asarray(delta_plus) - np.asarray(delta_minus)
    s = np.asarray(delta_plus) + np.asarray(delta_minus)
    b = np.sin(d) ** 2 / 4
    a = (np.cos(d) ** 2 - 2 * np.cos(d) * np.cos(s) + 1) / 4
    return a, b


def _constant_phases(cfg, m_max):
    return constant_mode.phase_shifts(cfg, m_max)


def _gaussian_phases(cfg, m_lo, m_hi, out_plus, out_minus):
    for m in range(m_lo, m_hi + 1):
        out_plus.append(solve_radial(m, Channel.PLUS, cfg).delta)
        out_minus.append(solve_radial(m, Channel.MINUS, cfg).delta)


def phase_table(cfg: ScatterConfig):
    """``(delta_plus, delta_minus)`` over ``m = 0..m_max``.

    With ``cfg.m_max`` unset the truncation starts at ``ceil(m_l) + 8`` and
    grows until three consecutive orders have both ``|B^pm|^2`` below the
    series tail.
    """
    mode = cfg.mode_n
    tail = cfg.tolerances.series_tail
    if mode.size == 0:
        m_max = cfg.m_max if cfg.m_max is not None else 0
        return np.zeros(m_max + 1), np.zeros(m_max + 1)
    gaussian = mode.shape is ModeShape.GAUSSIAN
    if cfg.m_max is not None:
        if gaussian:
            dp, dm = [], []
            _gaussian_phases(cfg, 0, cfg.m_max, dp, dm)
            return np.array(dp), np.array(dm)
        return _constant_phases(cfg, cfg.m_max)

    start = initial_m_max(cfg.k, mode, tail)
    hi = start + 2 * _RUN
    dp, dm = [], []
    while True:
        if gaussian:
            _gaussian_phases(cfg, len(dp), hi, dp, dm)
            p, q = np.array(dp), np.array(dm)
        else:
            p, q = _constant_phases(cfg, hi)
        M = auto_m_max(np.sin(p) ** 2, np.sin(q) ** 2, start, tail, _RUN)
        if M is not None:
            return p[:M + 1], q[:M + 1]
        if hi > 100_000:
            raise ConvergenceError("partial-wave series does not decay")
        hi = int(hi * 1.5) + 10


def build_table(cfg: ScatterConfig) -> PartialWaveTable:
    dp, dm = phase_table(cfg)
    return PartialWaveTable.from_phases(dp, dm, cfg.k, cfg.mode_n.divisor)


def amplitude(table: PartialWaveTable, exit, theta):
    """Scattering amplitude ``f(theta)`` in units of ``kappa_n^(-1/2)``.

    ``f = sqrt(2/(pi k)) sum_m eps_m cos(m theta) exp(-i(m pi/2 + pi/4)) B_m``.
    Accepts a scalar or an array of angles.
    """
    B = table.coefficients(exit)
    theta = np.asarray(theta, dtype=float)
    if np.any(np.abs(theta) > math.pi * (1 + 1e-15)):
        raise ValueError("angles must lie in [-pi, pi]")
    # exp(-i m pi/2) = conj(i^m), exactly
    c = weights(table.m) * np.conj(i_power(table.m)) * B * complex(math.sqrt(0.5), -math.sqrt(0.5))
    ang = np.abs(theta).reshape(-1)
    f = np.cos(np.outer(ang, table.m)) @ c
    f *= math.sqrt(2.0 / (math.pi * table.k))
    return f.reshape(theta.shape)[()] if theta.ndim else complex(f[0])


def theta_grid(points):
    """Uniform grid over ``(-pi, pi]`` closed at ``pi``."""
    j = np.arange(1, points + 1)
    return -math.pi + 2.0 * math.pi * j / points


def _scale(table):
    return 1.0 / table.divisor if table.divisor > 0 else 0.0


def differential(table: PartialWaveTable, thetas=None, points=2048) -> AngularDistribution:
    """Dimensionless differential lengths ``|f(theta)|^2 / divisor`` for both exits."""
    thetas = theta_grid(points) if thetas is None else np.asarray(thetas, dtype=float)
    s = _scale(table)
    la = np.abs(amplitude(table, ExitChannel.A, thetas)) ** 2 * s
    lb = np.abs(amplitude(table, ExitChannel.B, thetas)) ** 2 * s
    return AngularDistribution(thetas, np.atleast_1d(la), np.atleast_1d(lb))


def integrate_periodic(values):
    """Trapezoid rule on the uniform periodic grid of :func:`theta_grid`."""
    values = np.asarray(values)
    return float(values.sum() * 2.0 * math.pi / values.size)


def raw_totals(table: PartialWaveTable):
    """Totals ``(a, b, plus, minus)`` in units of ``1/kappa_n``."""
    w = weights(table.m) * 4.0 / table.k
    return (
        float(w @ np.abs(table.B_a) ** 2),
        float(w @ np.abs(table.B_b) ** 2),
        float(w @ np.sin(table.delta_plus) ** 2),
        float(w @ np.sin(table.delta_minus) ** 2),
    )


def totals(table: PartialWaveTable) -> ScatterSummary:
    s = _scale(table)
    return ScatterSummary(*(v * s for v in raw_totals(table)))


def coefficient_abs2(table: PartialWaveTable, exit, m):
    """``4 |B_m|^2`` of an exit channel, 0 past the truncation."""
    if m > table.m_max:
        return 0.0
    return float(4.0 * abs(table.coefficients(exit)[m]) ** 2)
