"""Dimensionless model: channels, mode functions, configuration, truncation.

Internally every length is measured in units of ``1/kappa_n`` (so the
coupling strength is 1 and the exterior wavenumber equals ``k/kappa_n``).
User-facing sizes are ``kappa R`` or ``kappa sigma`` and are rescaled once by
``kappa_n / kappa = (n + 1)**(1/4)``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace
from enum import Enum

import numpy as np


class ConfigError(ValueError):
    """Invalid problem definition; ``field`` names the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class ConvergenceError(RuntimeError):
    """A numerical procedure stopped short of its tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message if achieved is None else f"{message} (achieved {achieved:.3e})")
        self.achieved = achieved


class Channel(str, Enum):
    """Dressed channel; plus sees ``+v(r)`` (repulsive), minus ``-v(r)``."""

    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self):
        return 1.0 if self is Channel.PLUS else -1.0


class ExitChannel(str, Enum):
    A = "a_n"  # atom still excited, field unchanged
    B = "b_n1"  # photon emitted into the mode


class ModeShape(str, Enum):
    CONSTANT = "constant"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class ModeFunction:
    """Cylindrically symmetric mode profile ``0 <= v(r) <= 1``.

    ``size`` is the radius R (constant mode) or the standard deviation sigma
    (gaussian mode), in whatever length unit the caller works in.
    """

    shape: ModeShape
    size: float

    def __post_init__(self):
        object.__setattr__(self, "shape", ModeShape(self.shape))
        if not (self.size >= 0 and math.isfinite(self.size)):
            raise ConfigError("size", f"mode size must be finite and >= 0, got {self.size!r}")

    def scaled(self, factor):
        return replace(self, size=self.size * factor)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        if self.shape is ModeShape.CONSTANT:
            return np.where(r <= self.size, 1.0, 0.0)
        if self.size == 0:
            return np.zeros_like(r)
        return np.exp(-(r * r) / (2.0 * self.size**2))

    def taylor_coefficients(self, nterms):
        """Coefficients ``c_i`` with ``v(r) = sum_i c_i r**(2i)`` near the origin."""
        c = np.zeros(nterms)
        c[0] = 1.0
        if self.shape is ModeShape.GAUSSIAN:
            a = -1.0 / (2.0 * self.size**2)
            for i in range(1, nterms):
                c[i] = c[i - 1] * a / i
        return c

    def cutoff_radius(self, tail=1e-12):
        """Radius beyond which the profile is treated as zero."""
        if self.shape is ModeShape.CONSTANT:
            return self.size
        return self.size * math.sqrt(-2.0 * math.log(tail))

    @property
    def divisor(self):
        """Length dividing scattering lengths into dimensionless form (2R or 2 sigma)."""
        return 2.0 * self.size


@dataclass(frozen=True)
class Tolerances:
    series_tail: float = 1e-12
    ode_step: float = 1e-8
    root_tol: float = 1e-10

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not (value > 0 and math.isfinite(value)):
                raise ConfigError(name, f"tolerance must be a positive real, got {value!r}")


@dataclass(frozen=True)
class ScatterConfig:
    """Dimensionless problem definition.

    ``mode.size`` is kappa*R or kappa*sigma; ``m_max=None`` selects the
    automatic truncation rule of :func:`auto_m_max`.
    """

    mode: ModeFunction
    k_over_kappa_n: float
    n: int = 0
    m_max: int | None = None
    theta_points: int = 2048
    tolerances: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self):
        if not isinstance(self.mode, ModeFunction):
            raise ConfigError("mode", "expected a ModeFunction")
        if int(self.n) != self.n or self.n < 0:
            raise ConfigError("n", f"photon number must be a nonnegative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not (self.k_over_kappa_n > 0 and math.isfinite(self.k_over_kappa_n)):
            raise ConfigError("k_over_kappa_n", f"must be a positive real, got {self.k_over_kappa_n!r}")
        if self.m_max is not None:
            if int(self.m_max) != self.m_max or self.m_max < 0:
                raise ConfigError("m_max", f"must be a nonnegative integer or auto, got {self.m_max!r}")
            object.__setattr__(self, "m_max", int(self.m_max))
        if int(self.theta_points) != self.theta_points or self.theta_points < 4:
            raise ConfigError("theta_points", f"need an integer >= 4, got {self.theta_points!r}")

    @property
    def k(self):
        """Exterior wavenumber in units of kappa_n."""
        return float(self.k_over_kappa_n)

    @property
    def mode_n(self):
        """Mode function with its size expressed in units of 1/kappa_n."""
        return self.mode.scaled(kappa_n_scale(self.n))

    def with_size(self, size):
        return replace(self, mode=replace(self.mode, size=float(size)))


def kappa_n_scale(n):
    """kappa_n / kappa = (n + 1)**(1/4)."""
    if int(n) != n or n < 0:
        raise ConfigError("n", f"photon number must be a nonnegative integer, got {n!r}")
    return (n + 1) ** 0.25


def critical_radius(m, k):
    """Classical turning radius of the centrifugal barrier, ``sqrt(m^2 - 1/4)/k``.

    The s-wave has no barrier and returns 0.
    """
    if m == 0:
        return 0.0
    if m < 0 or k <= 0:
        raise ValueError("need m >= 0 and k > 0")
    return math.sqrt(m * m - 0.25) / k


def m_cutoff(kR):
    """Order of magnitude of the number of contributing partial waves."""
    if kR < 0:
        raise ValueError("kR must be nonnegative")
    return math.sqrt(kR * kR + 0.25)


AUTO_MARGIN = 8


def initial_m_max(k, mode_n, tail=1e-12):
    """Starting truncation ``ceil(m_l) + 8`` using the mode cutoff radius."""
    return math.ceil(m_cutoff(k * mode_n.cutoff_radius(tail))) + AUTO_MARGIN


def auto_m_max(abs2_plus, abs2_minus, m_start, tail, run=3):
    """Truncation order from ``|B^+_m|^2`` and ``|B^-_m|^2`` sequences.

    The smallest ``M >= m_start`` whose last ``run`` orders ``M-run+1..M``
    all fall below ``tail``; ``None`` if the sequences are too short to tell.
    """
    small = np.maximum(abs2_plus, abs2_minus) < tail
    for M in range(max(m_start, run - 1), small.size):
        if small[M - run + 1:M + 1].all():
            return M
    return None


def effective_potential(m, r, mode):
    """Attractive-channel effective potential ``-v(r) + (m^2 - 1/4)/r^2``.

    Units of kappa_n^2 with ``r`` and ``mode.size`` in units of 1/kappa_n.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("effective potential is defined for r > 0")
    return -mode(r) + (m * m - 0.25) / (r * r)
