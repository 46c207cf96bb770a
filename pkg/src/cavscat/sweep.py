"""Parameter sweeps over the interaction length and deterministic CSV output."""
from __future__ import annotations

import csv
import math
import os
import re
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .model import ConfigError, ExitChannel
from .scattering import build_table, totals

QUANTITIES = ("total_a", "total_b", "total_plus", "total_minus", "coeff_a", "coeff_b")
_COEFF = re.compile(r"^(coeff_[ab])[:(](\d+)\)?$")


def parse_quantity(text):
    """``total_b`` or ``coeff_b:3`` / ``coeff_b(3)`` -> ``(name, m)``."""
    text = text.strip()
    if text in QUANTITIES[:4]:
        return text, None
    match = _COEFF.match(text)
    if not match:
        raise ConfigError("quantity", f"unknown quantity {text!r}; expected one of "
                          "total_a, total_b, total_plus, total_minus, coeff_a:M, coeff_b:M")
    return match.group(1), int(match.group(2))


def parse_range(text, field="range"):
    """``start:stop:step`` -> grid of ``floor((stop - start)/step) + 1`` points."""
    try:
        start, stop, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise ConfigError(field, f"expected start:stop:step, got {text!r}") from None
    if not step > 0:
        raise ConfigError(field, "step must be positive")
    if not start < stop:
        raise ConfigError(field, "start must be below stop")
    count = math.floor((stop - start) / step + 1e-9) + 1
    return start + step * np.arange(count)


def parse_pair(text, field):
    try:
        lo, hi = (float(p) for p in text.split(":"))
    except ValueError:
        raise ConfigError(field, f"expected lo:hi, got {text!r}") from None
    return lo, hi


def point_values(cfg, requests):
    """Several quantities from one table: ``requests`` is a list of ``(name, m)``."""
    table = build_table(cfg)
    s = totals(table)
    out = []
    for name, m in requests:
        if name.startswith("coeff"):
            B = table.coefficients(ExitChannel.A if name == "coeff_a" else ExitChannel.B)
            out.append(float(abs(B[m]) ** 2) if m <= table.m_max else 0.0)
        else:
            out.append({"total_a": s.lambda_a_total, "total_b": s.lambda_b_total,
                        "total_plus": s.lambda_plus_total, "total_minus": s.lambda_minus_total}[name])
    return out


def point_value(cfg, quantity, m=None):
    return point_values(cfg, [(quantity, m)])[0]


def _task(args):
    cfg, x, requests = args
    return point_values(cfg.with_size(x), requests)


def resolve_threads(threads):
    if threads in (None, "auto"):
        return os.cpu_count() or 1
    threads = int(threads)
    if threads < 1:
        raise ConfigError("threads", "need at least one worker")
    return threads


def scan(cfg, xs, requests, threads=1):
    """Array of shape ``(len(xs), len(requests))``; row order follows ``xs``."""
    tasks = [(cfg, float(x), list(requests)) for x in xs]
    workers = resolve_threads(threads)
    if workers == 1 or len(tasks) < 2:
        rows = [_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_task, tasks, chunksize=max(1, len(tasks) // (8 * workers))))
    return np.array(rows, dtype=float).reshape(len(tasks), len(requests))


def fmt(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return f"{float(value):.8e}"


def write_csv(path, header, rows):
    """Comma separated, header row, LF endings, 9 significant digits."""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path
