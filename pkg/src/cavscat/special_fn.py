"""Cylindrical Bessel functions and the Lambert W function.

Single-order evaluation is backed by the AMOS routines in ``scipy.special``;
whole order sequences at real argument (needed for partial-wave sums with
hundreds of terms) use three-term recurrences compiled with numba.
Derivatives always come from the order recurrence
``C'_m(z) = C_{m-1}(z) - (m/z) C_m(z)``.
"""
from __future__ import annotations

import math
from enum import Enum

import numba
import numpy as np
from scipy import special as sp


class BesselKind(str, Enum):
    J = "J"
    Y = "Y"
    H1 = "H1"
    I = "I"  # noqa: E741


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


_EVAL = {
    BesselKind.J: sp.jv,
    BesselKind.Y: sp.yv,
    BesselKind.H1: sp.hankel1,
    BesselKind.I: sp.iv,
}


def _check_order(m):
    if int(m) != m or m < 0:
        raise DomainError(f"order must be a nonnegative integer, got {m!r}")
    return int(m)


def _raw(kind, m, z):
    return _EVAL[kind](m, z)


def _check_overflow(value, z):
    value = np.asarray(value)
    bad = ~np.isfinite(value) & np.isfinite(np.asarray(z))
    if np.any(bad):
        raise OverflowError("Bessel function value exceeds the floating-point range")


def bessel(kind, m, z, derivative=False):
    """Evaluate ``C_m(z)`` (or ``C'_m(z)``) for C in {J, Y, H1, I}.

    ``z`` may be a real or complex scalar or array. Y and H1 are singular at
    the origin and raise :class:`DomainError` there. Results that overflow
    raise :class:`OverflowError` instead of returning ``inf``.
    """
    kind = BesselKind(kind)
    m = _check_order(m)
    z_arr = np.asarray(z)
    if not np.all(np.isfinite(z_arr)):
        raise DomainError("argument must be finite")
    if kind in (BesselKind.Y, BesselKind.H1) and np.any(z_arr == 0):
        raise DomainError(f"{kind.value}_m(z) is singular at z = 0")

    if not derivative:
        out = _raw(kind, m, z_arr)
        _check_overflow(out, z_arr)
        return out[()] if out.ndim == 0 else out

    with np.errstate(divide="ignore", invalid="ignore"):
        lower = _raw(kind, m - 1, z_arr)
        here = _raw(kind, m, z_arr)
        out = lower - (m / z_arr) * here if m else lower
    if kind in (BesselKind.J, BesselKind.I) and np.any(z_arr == 0):
        # C'_m(0) = 1/2 for m = 1, 0 otherwise (J and I alike)
        out = np.where(z_arr == 0, 0.5 if m == 1 else 0.0, out)
    if kind is BesselKind.J or kind is BesselKind.I:
        out = out if np.iscomplexobj(z_arr) else np.real(out)
    _check_overflow(out, z_arr)
    return out[()] if np.ndim(out) == 0 else out


def bessel_i_scaled(m, x, derivative=False):
    """``exp(-x) I_m(x)`` (or its derivative factor) for real ``x >= 0``.

    The derivative variant returns ``exp(-x) I'_m(x)``, so ratios of the two
    are the logarithmic derivative with the exponential growth removed.
    """
    m = _check_order(m)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("scaled I is implemented for real x >= 0 only")
    if not derivative:
        out = sp.ive(m, x)
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = sp.ive(m + 1, x) + (m / x) * sp.ive(m, x) if m else sp.ive(1, x)
        out = np.where(x == 0, 0.5 if m == 1 else 0.0, out)
    return out[()] if np.ndim(out) == 0 else out


@numba.njit(cache=True)
def _j_sequence(m_max, x, out):
    """Miller backward recurrence for J_0..J_m_max at real x > 0."""
    start = m_max + 20 + int(x + 12.0 * x ** (1.0 / 3.0) + 10.0)
    if start % 2:
        start += 1
    for i in range(m_max + 1):
        out[i] = 0.0
    jp1 = 0.0
    j = 1e-300
    norm = 0.0
    for order in range(start, 0, -1):
        jm1 = 2.0 * order / x * j - jp1
        jp1 = j
        j = jm1
        # j now holds J_{order-1}
        if order - 1 <= m_max:
            out[order - 1] = j
        if (order - 1) % 2 == 0 and order - 1 > 0:
            norm += 2.0 * j
        if abs(j) > 1e250:
            j *= 1e-250
            jp1 *= 1e-250
            norm *= 1e-250
            for i in range(m_max + 1):
                out[i] *= 1e-250
    norm += j
    for i in range(m_max + 1):
        out[i] /= norm


@numba.njit(cache=True)
def _y_sequence(m_max, x, y0, y1, out):
    out[0] = y0
    if m_max >= 1:
        out[1] = y1
    for order in range(1, m_max):
        out[order + 1] = 2.0 * order / x * out[order] - out[order - 1]


def bessel_jy_sequence(m_max, x):
    """Return ``(J, Y)`` arrays of shape ``(m_max + 2, len(x))``.

    Row ``m`` holds ``J_m(x)``/``Y_m(x)`` for ``m = 0..m_max+1`` (one extra
    order so derivatives are available up to ``m_max``). ``x`` must be real
    and positive. Y grows without bound in ``m`` and saturates to ``-inf``
    once it leaves the floating-point range; callers treat such orders as
    non-scattering.
    """
    m_max = _check_order(m_max)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise DomainError("sequence evaluation needs x > 0")
    n = m_max + 2
    J = np.empty((n, x.size))
    Y = np.empty((n, x.size))
    y0 = sp.y0(x)
    y1 = sp.y1(x)
    col = np.empty(n)
    with np.errstate(over="ignore", invalid="ignore"):
        for i, xi in enumerate(x):
            _j_sequence(n - 1, xi, col)
            J[:, i] = col
            _y_sequence(n - 1, xi, y0[i], y1[i], col)
            Y[:, i] = col
    Y[~np.isfinite(Y)] = -np.inf
    return J, Y


def sequence_derivative(seq, x, kind=BesselKind.J):
    """Derivatives for orders ``0..len(seq)-2`` from a sequence of values.

    Uses ``C'_m = C_{m-1} - (m/x) C_m`` with ``C'_0 = -C_1`` (J, Y) or
    ``I'_0 = I_1``.
    """
    seq = np.asarray(seq)
    m = np.arange(seq.shape[0] - 1).reshape((-1,) + (1,) * (seq.ndim - 1))
    d = np.empty_like(seq[:-1])
    sign = 1.0 if BesselKind(kind) is BesselKind.I else -1.0
    d[0] = sign * seq[1]
    with np.errstate(invalid="ignore", over="ignore"):
        d[1:] = seq[:-2] - (m[1:] / x) * seq[1:-1]
    return d


_INV_E = math.exp(-1.0)
_BRANCH_SERIES = (-1.0, 1.0, -1.0 / 3, 11.0 / 72, -43.0 / 540, 769.0 / 17280, -221.0 / 8505,
                  680863.0 / 43545600, -1963.0 / 204120, 226287557.0 / 37623398400)


def lambert_w(branch, x):
    """Real Lambert W on branch 0 (x >= -1/e) or -1 (-1/e <= x < 0)."""
    if branch not in (0, -1):
        raise DomainError(f"branch must be 0 or -1, got {branch!r}")
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("argument must be finite")
    # arguments within rounding of the branch point are snapped onto it
    if -_INV_E * (1 + 4e-16) <= x <= -_INV_E * (1 - 4e-16):
        return -1.0
    if x < -_INV_E:
        raise DomainError(f"W({x}) is not real: argument below -1/e")
    if branch == -1 and x >= 0:
        raise DomainError("branch -1 requires -1/e <= x < 0")
    if x == 0:
        return 0.0
    t = math.e * x + 1.0
    if t < 1e-2:
        # branch-point series in p = +/- sqrt(2(e x + 1)); scipy loses accuracy here
        p = math.sqrt(2.0 * max(t, 0.0)) * (1.0 if branch == 0 else -1.0)
        w = 0.0
        for c in reversed(_BRANCH_SERIES):
            w = w * p + c
    else:
        w = float(sp.lambertw(x, k=branch).real)
    for _ in range(2):
        ew = math.exp(w)
        f = w * ew - x
        d = ew * (w + 1)
        if f == 0 or d == 0:
            break
        w -= f / (d - (w + 2) * f / (2 * w + 2))
    return w
