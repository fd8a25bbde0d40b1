import math

import mpmath
import numpy as np
import pytest

from zsl import zerofind as zf
from zsl.errors import DomainError, ScanError
from zsl.specfun import hardy_theta

# Odlyzko's table, first ten ordinates
ODLYZKO = [14.134725141734693, 21.022039638771555, 25.010857580145688, 30.424876125859513,
           32.935061587739189, 37.586178158825671, 40.918719012147495, 43.327073280914999,
           48.005150881167159, 49.773832477672302]
ZERO_100 = 236.524229665816205


def test_first_zeros_match_table(riemann100):
    assert len(riemann100.zeros) == 100
    assert np.max(np.abs(riemann100.gammas[:10] - ODLYZKO)) < 1e-9
    assert abs(riemann100.gammas[-1] - ZERO_100) < 1e-9


def test_catalog_is_certified_and_simple(riemann100):
    assert riemann100.certified
    assert all(z.mult == 1 for z in riemann100.zeros)
    assert np.all(np.diff(riemann100.gammas) > 0)
    cert = zf.completeness_check(riemann100)
    assert cert.passed and cert.found == 100 and cert.slack <= 1 and not cert.flagged


def test_zeros_reevaluate_small(riemann100):
    for g in riemann100.gammas[::17]:
        assert abs(complex(mpmath.zeta(0.5 + 1j * g))) < 1e-8


def test_removed_zero_is_flagged(riemann100):
    zeros = riemann100.zeros[:40] + riemann100.zeros[41:]
    bad = zf.ZeroCatalog("riemann", 1, zeros, (), riemann100.t_max, 1e-8, False)
    cert = zf.completeness_check(bad)
    assert not cert.passed
    lo, hi, what = cert.flagged[0]
    assert what == "missing zero"
    assert lo <= riemann100.gammas[40] <= hi


def test_gram_points():
    for n in (-1, 0, 5, 30):
        g = zf.gram_point(n)
        assert abs(hardy_theta(g) - n * math.pi) < 1e-9
    assert abs(zf.gram_point(0) - 17.845599540410) < 1e-8


def test_scan_t_max_and_truncation(riemann100):
    cat = zf.scan_zeros(zf.RiemannL(), 50.0)
    assert len(cat.zeros) == 10 and cat.t_max == 50.0 and cat.certified
    cut = riemann100.truncated(10)
    assert cut.gammas.tolist() == cat.gammas.tolist()
    assert ODLYZKO[9] < cut.t_max < riemann100.gammas[10]


def test_json_round_trip_is_exact(riemann100, tmp_path):
    text = riemann100.to_json()
    back = zf.ZeroCatalog.from_json(text)
    assert back.to_json() == text
    path = tmp_path / "cat.json"
    path.write_text(text)
    assert zf.ZeroCatalog.load(path) == back
    assert list(riemann100.to_dict()) == ["family", "weight", "center", "t_max", "tolerance",
                                          "zeros", "real_zeros", "certified"]


def test_refine_root_brackets_and_secant():
    r = zf.refine_root(math.cos, 1.0, 2.0)
    assert abs(r.root - math.pi / 2) < 1e-12 and r.secant
    assert all(b <= a for a, b in zip(r.widths, r.widths[1:]))
    with pytest.raises(DomainError):
        zf.refine_root(math.cos, 2.0, 3.0)


def test_step_limits():
    with pytest.raises(DomainError):
        zf.scan_zeros(zf.RiemannL(), 30.0, step=0.2)


class _Toy:
    """Line function with two zeros closer than the scan step can separate."""
    family, weight, center, certifiable = "toy", 1, 0.5, False

    def line_function(self, t):
        t = np.asarray(t, dtype=float)
        return (t - 5.002) * (t - 5.007) * (t - 5.0131)

    def value(self, s):
        return 0.0


def test_overlapping_brackets_raise():
    with pytest.raises(ScanError):
        zf.scan_zeros(_Toy(), 8.0, step=0.005)


def test_riemann_has_no_real_zeros_in_strip():
    assert zf.detect_real_zeros(zf.RiemannL(), (0.05, 0.95), 0.01) == []
