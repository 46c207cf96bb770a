"""Numerov integration of ``u'' + Q(r) u = 0`` for ``u_m = sqrt(r) R_m``.

``Q(r) = k^2 -/+ v(r) - (m^2 - 1/4)/r^2`` in units of kappa_n. Works for any
cylindrical mode profile; for the constant mode it is the independent oracle
of the closed form, for the gaussian mode it is the production solver.

The regular solution is started off the origin from its Frobenius series
(the ``1/r^2`` term defeats Numerov at the origin itself). A grid node sits
exactly on a discontinuity of ``v`` and the step across it carries the
third-order jump correction, so the scheme stays fourth order and Richardson
extrapolation over successive step halvings is valid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np
from scipy import special as sp

from .model import Channel, ConvergenceError, ModeFunction, ModeShape, ScatterConfig

MAX_NODES = 4_000_000


@dataclass
class RadialSolution:
    """Radial wavefunction on the finest grid used plus the extracted phase shift."""

    grid: np.ndarray
    u: np.ndarray
    m: int
    channel: Channel
    delta: float
    k: float
    error_estimate: float = 0.0
    step: float = 0.0

    def to_table(self, path):
        """Write ``r, u`` as a two-column text table."""
        np.savetxt(path, np.column_stack([self.grid, self.u]), fmt="%.8e", delimiter=",", header="r,u", comments="")


@numba.njit(cache=True)
def _numerov(Q, h, u0, u1, jump, q_right, out):
    """March ``out`` through the grid. ``jump`` is the index of a node on a
    discontinuity of Q (``Q[jump]`` is the left value, ``q_right`` the right),
    or -1."""
    n = Q.size
    c = h * h / 12.0
    out[0] = u0
    out[1] = u1
    for i in range(1, n - 1):
        qi = Q[i]
        qm = Q[i - 1]
        corr = 0.0
        if i == jump:
            qi = 0.5 * (Q[i] + q_right)
            slope = (3.0 * out[i] - 4.0 * out[i - 1] + out[i - 2]) / (2.0 * h)
            corr = -(h * h * h / 12.0) * (q_right - Q[i]) * slope
        elif i - 1 == jump:
            qm = q_right
        out[i + 1] = (2.0 * out[i] * (1.0 - 5.0 * c * qi) - out[i - 1] * (1.0 + c * qm) + corr) / (1.0 + c * Q[i + 1])
        if abs(out[i + 1]) > 1e200:
            for j in range(i + 2):
                out[j] *= 1e-200


def _series_start(m, r, k, sign, mode, scale_r):
    """``u(r) / scale_r**(m+1/2)`` from the Frobenius series of the regular solution."""
    coeffs = mode.taylor_coefficients(60)
    c = -sign * coeffs
    c[0] += k * k
    out = []
    for ri in r:
        a = [1.0]
        total = 1.0
        x2 = ri * ri
        power = 1.0
        for j in range(1, 400):
            s = 0.0
            for i in range(min(j, c.size)):
                s += c[i] * a[j - 1 - i]
            a.append(-s / (4.0 * j * (m + j)))
            power *= x2
            term = a[j] * power
            total += term
            if abs(term) < 1e-18 * abs(total) and j > 2:
                break
        out.append(total * (ri / scale_r) ** (m + 0.5))
    return out


def _default_step(k, mode):
    h = min(1.0 / (40.0 * k), 1.0 / 40.0, mode.size / 200.0)
    return h


@dataclass
class _Layout:
    h: float  # coarsest step
    j0: int  # start index (r0 = j0 h)
    j_cut: int  # first matching node
    j_far: int  # second matching node
    j_end: int
    j_jump: int  # discontinuity node or -1


def _layout(m, k, mode, tail, step, r_match, r_max, r_start):
    """Grid indices shared by every refinement level."""
    r_cut = mode.cutoff_radius(tail)
    h = step if step is not None else _default_step(k, mode)
    if mode.shape is ModeShape.CONSTANT:
        n_in = max(200, math.ceil(mode.size / h))
        h = mode.size / n_in
        j_jump = n_in
    else:
        j_jump = -1
    q_max = math.sqrt(k * k + 1.0)
    if r_start is None:
        r_start = min(0.5 * max(m, 1) / q_max, 0.5 * mode.size)
    j0 = max(1, int(round(r_start / h)))
    if j_jump > 0:
        j0 = min(j0, j_jump - 3)
    match = r_cut if r_match is None else max(r_match, r_cut)
    j_cut = math.ceil(match / h - 1e-9)
    gap = min(math.pi / (2.0 * k), max(2.0 * r_cut, 400 * h))
    j_far = j_cut + max(4, math.ceil(gap / h))
    j_end = max(j_far, math.ceil((r_max or 0.0) / h))
    return _Layout(h, j0, j_cut, j_far, j_end, j_jump)


def _integrate(m, sign, k, mode, lay, level):
    s = 2**level
    h = lay.h / s
    j = np.arange(lay.j0 * s, lay.j_end * s + 1)
    r = j * h
    if mode.shape is ModeShape.CONSTANT:
        v = np.where(j <= lay.j_jump * s, 1.0, 0.0)
    else:
        v = mode(r)
    Q = k * k - sign * v - (m * m - 0.25) / (r * r)
    jump = lay.j_jump * s - lay.j0 * s if lay.j_jump > 0 else -1
    q_right = k * k - (m * m - 0.25) / (mode.size**2) if jump > 0 else 0.0
    u0, u1 = _series_start(m, r[:2], k, sign, mode, r[0])
    u = np.empty_like(r)
    _numerov(Q, h, u0, u1, jump, q_right, u)
    return r, u


def _extract_phase(m, k, r, u, i1, i2):
    """Fit ``u = alpha sqrt(r) J_m(kr) + beta sqrt(r) Y_m(kr)`` at two nodes."""
    r1, r2 = r[i1], r[i2]
    M = np.array([
        [math.sqrt(r1) * sp.jv(m, k * r1), math.sqrt(r1) * sp.yv(m, k * r1)],
        [math.sqrt(r2) * sp.jv(m, k * r2), math.sqrt(r2) * sp.yv(m, k * r2)],
    ])
    alpha, beta = np.linalg.solve(M, [u[i1], u[i2]])
    d = math.atan(-beta / alpha) if alpha != 0 else math.pi / 2
    return math.pi / 2 if d == -math.pi / 2 else d


def _wrap(d):
    """Reduce a phase difference modulo pi into [-pi/2, pi/2)."""
    return (d + math.pi / 2) % math.pi - math.pi / 2


def solve_radial_raw(m, channel, k, mode: ModeFunction, *, tol=1e-8, tail=1e-12,
                     step=None, r_match=None, r_max=None, r_start=None, max_nodes=MAX_NODES):
    """Phase shift and wavefunction for explicit ``k`` (units of kappa_n) and mode.

    The step is halved until the Richardson error estimate of the phase
    shift drops below ``tol``; the extrapolated value is reported.
    """
    ch = Channel(channel)
    if mode.size == 0:
        r = np.linspace(0.0, r_max or 1.0, 2)
        return RadialSolution(r, r ** (m + 0.5), m, ch, 0.0, k)
    lay = _layout(m, k, mode, tail, step, r_match, r_max, r_start)
    prev = None
    best = None  # (err, delta, r, u, level)
    level = 0
    while True:
        r, u = _integrate(m, ch.sign, k, mode, lay, level)
        s = 2**level
        delta = _extract_phase(m, k, r, u, (lay.j_cut - lay.j0) * s, (lay.j_far - lay.j0) * s)
        if prev is not None:
            diff = _wrap(delta - prev)
            err = abs(diff) / 15.0
            # growing estimates mean rounding noise now dominates truncation error
            stalled = best is not None and level >= 3 and err > best[0]
            if best is None or err < best[0]:
                best = (err, delta + diff / 15.0, r, u, level)
            if err <= tol or stalled:
                if best[0] > tol:
                    raise ConvergenceError(f"radial solve m={m} {ch.value}: tolerance {tol:g} unreachable",
                                           achieved=best[0])
                err, d, r, u, level = best
                d = _wrap(d)
                return RadialSolution(r, u, m, ch, math.pi / 2 if d == -math.pi / 2 else d, k, err,
                                      lay.h / 2**level)
        if r.size * 2 > max_nodes:
            raise ConvergenceError(f"radial solve m={m} {ch.value}: node budget exhausted",
                                   achieved=best[0] if best else float("nan"))
        prev = delta
        level += 1


def solve_radial(m, channel, cfg: ScatterConfig, **kwargs):
    """Radial solution for partial wave ``m`` of a dressed channel (units of 1/kappa_n)."""
    kwargs.setdefault("tol", cfg.tolerances.ode_step)
    kwargs.setdefault("tail", cfg.tolerances.series_tail)
    return solve_radial_raw(m, channel, cfg.k, cfg.mode_n, **kwargs)


def count_nodes(sol: RadialSolution, r_max):
    """Sign changes of ``u`` on ``(0, r_max]``."""
    u = sol.u[sol.grid <= r_max]
    s = np.sign(u[u != 0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def weight_inside(sol: RadialSolution, r_inner, r_outer):
    """Fraction of ``int |u|^2 dr`` over ``[0, r_outer]`` lying in ``[0, r_inner]``."""
    g, p = sol.grid, sol.u**2
    inner = g <= r_inner
    outer = g <= r_outer
    return float(np.trapezoid(p[inner], g[inner]) / np.trapezoid(p[outer], g[outer]))
