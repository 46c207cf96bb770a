import csv
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp

from cavscat.model import ConvergenceError
from cavscat.resonances import (ANALYTIC_PROFILE, COMPLEX_ROOT, CSV_COLUMNS, ResonanceRecord, analytic_records,
                                find_resonances, find_roots, label_total_length_peaks, secular, sort_records,
                                write_records)
from cavscat.sweep import scan

CAPTION = {0: 0.72890, 1: 2.35741, 2: 3.79243, 3: 5.09697}


@pytest.fixture(scope="module")
def cold_records():
    return {m: find_resonances(m, (0.0, 12.0), 0.1) for m in range(4)}


def test_caption_positions(cold_records):
    for m, x in CAPTION.items():
        first = cold_records[m][0]
        assert first.method == COMPLEX_ROOT
        assert abs(first.kappa_R0 - x) <= 1e-3
        assert first.gamma > 0


def test_quasibound_m3(cold_records):
    assert any(abs(r.kappa_R0 - 11.5287) < 1e-3 for r in cold_records[3])


def test_residuals_and_order(cold_records):
    for m, recs in cold_records.items():
        xs = [r.kappa_R0 for r in recs]
        assert xs == sorted(xs)
        assert np.all(np.diff(xs) > 1e-9)
        for r in recs:
            z = complex(r.kappa_R0, -r.gamma / 2)
            assert abs(secular(m, z, 0.1)) <= 1e-10
            assert r.residual <= 1e-10


def test_widths_narrow_with_m(cold_records):
    g = [cold_records[m][0].gamma for m in range(4)]
    assert g == sorted(g, reverse=True)


def test_finesse_scaling():
    """Lower k/kappa_n traps longer: the first m=2 width shrinks."""
    wide = find_resonances(2, (3.0, 4.5), 0.1)[0]
    narrow = find_resonances(2, (3.0, 4.5), 0.05)[0]
    assert narrow.gamma < wide.gamma


@settings(max_examples=60, deadline=None)
@given(m=st.integers(0, 6), re=st.floats(0.2, 20), im=st.floats(-1, 1), ratio=st.sampled_from([0.05, 0.1, 1.0]))
def test_schwarz_reflection(m, re, im, ratio):
    x = complex(re, im)
    q = math.sqrt(1 + ratio * ratio)
    xc = x.conjugate()
    h2 = ratio * sp.jv(m, q * xc) * sp.h2vp(m, ratio * xc) - q * sp.jvp(m, q * xc) * sp.hankel2(m, ratio * xc)
    ref = secular(m, x, ratio).conjugate()
    assert abs(ref - h2) <= 1e-10 * max(1.0, abs(h2))


def test_secular_domain():
    with pytest.raises(ValueError):
        secular(0, complex(-1, 0), 0.1)
    with pytest.raises(ValueError):
        find_resonances(0, (0, 300), 0.1)


def test_find_roots_polynomial():
    want = [1.23 - 0.2j, 2.47 - 0.53j, 2.47 - 0.01j]
    f = lambda z: (z - want[0]) * (z - want[1]) * (z - want[2])
    roots, failures = find_roots(f, (0.5, 3.0), gamma_max=2.0)
    assert not failures
    got = sorted((complex(z) for z, _ in roots), key=lambda z: (z.real, z.imag))
    assert np.allclose(got, sorted(want, key=lambda z: (z.real, z.imag)), atol=1e-10)


def test_find_roots_corner_hit():
    # 0.7 - 0.3j lies exactly on a cell corner
    roots, failures = find_roots(lambda z: z - (0.7 - 0.3j), (0.5, 1.0))
    assert not failures
    assert len(roots) == 1 and abs(roots[0][0] - (0.7 - 0.3j)) < 1e-10


def test_empty_window():
    assert find_resonances(0, (1.2, 1.25), 0.1) == []
    assert label_total_length_peaks([0, 1], [0, 0], []) == []


def test_analytic_records():
    recs = analytic_records(0, (0, 5), 0.1)
    assert all(r.method == ANALYTIC_PROFILE and math.isnan(r.residual) for r in recs)
    assert recs[0].kappa_R0 == pytest.approx(math.pi / 4 / math.sqrt(1.01))


def test_peak_labels(cold_records):
    from cavscat.model import ModeFunction, ScatterConfig
    # the m=3 peak (Gamma ~ 1.6e-4) needs a local refinement of the 0.005 grid
    xs = np.union1d(np.arange(1, 1200) * 0.005, np.linspace(5.0960, 5.0980, 201))
    vals = scan(ScatterConfig(ModeFunction("constant", 1.0), 0.1), xs, [("total_b", None)])[:, 0]
    recs = [r for rs in cold_records.values() for r in rs] + analytic_records(0, (0, 6), 0.1)
    labels = label_total_length_peaks(xs, vals, recs)
    found = {}
    for lab in labels:
        if lab.m is not None:
            found.setdefault(lab.m, lab.x)
    for m, x in CAPTION.items():
        assert m in found
        # broad peaks sit on the background of other orders
        assert abs(found[m] - x) < max(0.02, cold_records[m][0].gamma / 2)


def test_csv(tmp_path):
    recs = [ResonanceRecord(1, 2.35741, 0.0662, COMPLEX_ROOT, 1e-14),
            ResonanceRecord(0, 0.7289, 0.42, COMPLEX_ROOT, 2e-13)]
    path = tmp_path / "r.csv"
    write_records(recs, path)
    rows = list(csv.reader(open(path)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [r[0] for r in rows[1:]] == ["0", "1"]
    assert rows[2][1] == "2.35741000e+00"
    assert sort_records(recs)[0].m == 0
