"""Quasibound states of the attractive channel of the constant mode.

A purely outgoing exterior wave matched to the regular interior solution
exists only at complex interaction lengths ``x = kappa R``; the root
``x0 = kappa R_0 - i Gamma/2`` of the secular function gives the position
and width of a resonance in ``|B^b_m|^2``. Roots are bracketed by the
winding number of the secular function around cells of a grid on the lower
half-plane strip, refined by quartering, and polished with Newton steps.

Ratio ``k/kappa_n`` and ``n`` are held fixed while ``x`` moves, so both
``kR`` and ``k^-_n R`` are complexified together.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy import signal
from scipy import special as sp

from .asymptotics import cold_peak_positions
from .model import ConvergenceError, kappa_n_scale

COMPLEX_ROOT = "complex_root"
ANALYTIC_PROFILE = "analytic_profile"


@dataclass(frozen=True)
class ResonanceRecord:
    m: int
    kappa_R0: float
    gamma: float
    method: str
    residual: float  # |secular| at the root; nan for analytic profiles


def _dbessel(f, m, z):
    return f(m - 1, z) - m / z * f(m, z) if m else -f(1, z)


def secular(m, x, ratio, n=0):
    """``(k/kappa_n) J_m(k^- R) H'_m(kR) - sqrt(1 + (k/kappa_n)^2) J'_m(k^- R) H_m(kR)``.

    Holomorphic in ``x = kappa R`` for ``Re x > 0``; accepts arrays.
    """
    x = np.asarray(x, dtype=complex)
    if np.any(x.real <= 0):
        raise ValueError("secular function needs Re(x) > 0")
    xn = x * kappa_n_scale(n)
    q = math.sqrt(1.0 + ratio * ratio)
    kr = ratio * xn
    qr = q * xn
    out = (ratio * sp.jv(m, qr) * _dbessel(sp.hankel1, m, kr)
           - q * _dbessel(sp.jv, m, qr) * sp.hankel1(m, kr))
    return out[()] if out.ndim == 0 else out


# winding-number bracketing -----------------------------------------------------

_MAX_TURN = math.pi / 3


def _arg_change(f, z0, z1, f0, f1, depth=0):
    """Continuous change of ``arg f`` along the segment, refining large jumps."""
    d = np.angle(f1 / f0)
    if abs(d) <= _MAX_TURN or depth > 40:
        return float(d)
    zm = 0.5 * (z0 + z1)
    fm = complex(f(zm))
    return _arg_change(f, z0, zm, f0, fm, depth + 1) + _arg_change(f, zm, z1, fm, f1, depth + 1)


def _winding(f, corners, values):
    total = 0.0
    for i in range(4):
        j = (i + 1) % 4
        total += _arg_change(f, corners[i], corners[j], values[i], values[j])
    return int(round(total / (2 * math.pi)))


_OUTWARD = (-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j)


def _cell_corners(re0, re1, im0, im1):
    return [complex(re0, im0), complex(re1, im0), complex(re1, im1), complex(re0, im1)]


def _newton(f, z, tol, max_iter=60):
    """Newton iteration with a central-difference derivative."""
    fz = complex(f(z))
    for _ in range(max_iter):
        h = 1e-6 * max(1.0, abs(z))
        df = (complex(f(z + h)) - complex(f(z - h))) / (2 * h)
        if df == 0:
            break
        step = fz / df
        z -= step
        fz = complex(f(z))
        if abs(fz) <= tol and abs(step) < 1e-10 * max(1.0, abs(z)):
            break
        if abs(step) < 1e-15 * abs(z):
            break
    return z, abs(fz)


def _search_cell(f, box, tol, out, failures, depth=0):
    re0, re1, im0, im1 = box
    corners = _cell_corners(re0, re1, im0, im1)
    values = [complex(f(c)) for c in corners]
    # a root sitting on a corner: keep it and nudge the corner outward
    eps = 1e-9 * max(re1 - re0, im1 - im0)
    for i, (c, v) in enumerate(zip(corners, values)):
        if v == 0:
            out.append((c, 0.0))
            corners[i] = c + eps * _OUTWARD[i]
            values[i] = complex(f(corners[i]))
    w = _winding(f, corners, values)
    if w <= 0:
        return
    size = max(re1 - re0, im1 - im0)
    if w == 1:
        z, res = _newton(f, complex(0.5 * (re0 + re1), 0.5 * (im0 + im1)), tol)
        pad = 1e-9 * max(1.0, abs(z))
        if re0 - pad <= z.real <= re1 + pad and im0 - pad <= z.imag <= im1 + pad and res <= tol:
            out.append((z, res))
            return
    if depth > 30 or size < 1e-9:
        failures.append((box, w))
        return
    rm, im = 0.5 * (re0 + re1), 0.5 * (im0 + im1)
    for sub in ((re0, rm, im0, im), (rm, re1, im0, im), (re0, rm, im, im1), (rm, re1, im, im1)):
        _search_cell(f, sub, tol, out, failures, depth + 1)


def find_roots(f, window, gamma_max=2.0, root_tol=1e-10, cell=0.1):
    """Roots of ``f`` with ``Re`` in ``window`` and ``-gamma_max/2 <= Im < 0``.

    Returns ``(roots, failures)``; failures list cells with nonzero winding
    whose roots could not be polished to ``root_tol``.
    """
    lo, hi = window
    lo = max(lo, 1e-3)
    if hi <= lo:
        return [], []
    n_re = max(1, math.ceil((hi - lo) / cell))
    depth = gamma_max / 2
    n_im = max(1, math.ceil(depth / cell))
    re_edges = np.linspace(lo, hi, n_re + 1)
    # the real axis itself is never a root (H1 has no real zeros), so it closes the strip
    im_edges = np.linspace(-depth, 0.0, n_im + 1)
    roots, failures = [], []
    for a, b in zip(re_edges[:-1], re_edges[1:]):
        for c, d in zip(im_edges[:-1], im_edges[1:]):
            _search_cell(f, (a, b, c, d), root_tol, roots, failures)
    roots.sort(key=lambda t: (t[0].real, t[0].imag))
    unique = []
    for z, res in roots:
        if unique and abs(z - unique[-1][0]) <= 1e-7 * max(1.0, abs(z)):
            continue
        unique.append((z, res))
    return unique, failures


def find_resonances(m, window, ratio, n=0, *, gamma_max=2.0, root_tol=1e-10, cell=0.1):
    """Complex roots of the secular function as :class:`ResonanceRecord`, sorted by position."""
    if m < 0 or int(m) != m:
        raise ValueError("m must be a nonnegative integer")
    lo, hi = window
    if lo < 0 or hi > 200:
        raise ValueError("window must lie within [0, 200]")
    roots, failures = find_roots(lambda z: secular(m, z, ratio, n), window, gamma_max, root_tol, cell)
    if failures:
        boxes = ", ".join(f"Re[{b[0]:.4g},{b[1]:.4g}] Im[{b[2]:.4g},{b[3]:.4g}]" for b, _ in failures)
        raise ConvergenceError(f"m={m}: roots bracketed but not polished in {boxes}")
    out = []
    for z, res in roots:
        if z.real < lo or z.real > hi or z.imag >= 0:
            continue
        out.append(ResonanceRecord(int(m), float(z.real), float(-2 * z.imag), COMPLEX_ROOT, float(res)))
    return out


def analytic_records(m, window, ratio, n=0):
    """Peaks of the cold analytic profile of order ``m`` as records without residual."""
    parity = "even" if m % 2 == 0 else "odd"
    return [ResonanceRecord(int(m), x, w, ANALYTIC_PROFILE, float("nan"))
            for x, w in cold_peak_positions(parity, ratio, window, n)]


def sort_records(records):
    return sorted(records, key=lambda r: (r.m, r.kappa_R0))


@dataclass(frozen=True)
class PeakLabel:
    x: float
    value: float
    m: int | None  # None marks an unmatched peak
    record: ResonanceRecord | None


def label_total_length_peaks(xs, values, records, prominence=1e-3):
    """Attach to every local maximum of a scan the ``m`` of the nearest record.

    A record matches when its position lies within ``max(Gamma, grid step)``
    of the peak. Complex roots win over analytic profiles at equal distance.
    """
    xs = np.asarray(xs, dtype=float)
    values = np.asarray(values, dtype=float)
    if xs.size < 3:
        return []
    peaks, _ = signal.find_peaks(values, prominence=prominence * max(values.max(), 1e-300))
    step = float(np.median(np.diff(xs)))
    labels = []
    for p in peaks:
        x = xs[p]
        best = None
        for r in records:
            d = abs(r.kappa_R0 - x)
            if d <= max(r.gamma, step):
                key = (d, r.method != COMPLEX_ROOT)
                if best is None or key < best[0]:
                    best = (key, r)
        rec = best[1] if best else None
        labels.append(PeakLabel(float(x), float(values[p]), rec.m if rec else None, rec))
    return labels


CSV_COLUMNS = ("m", "kappa_R0", "gamma", "residual", "method")


def write_records(records, path):
    """CSV with fixed columns, 9 significant digits in scientific notation."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in sort_records(records):
            w.writerow([r.m, f"{r.kappa_R0:.8e}", f"{r.gamma:.8e}", f"{r.residual:.8e}", r.method])
