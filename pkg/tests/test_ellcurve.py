import cmath
import math

import numpy as np
import pytest

from zsl import ellcurve as ec
from zsl.errors import AmbiguousSign, DomainError, ParseError, PoleError

# published values
L11_AT_1 = 0.2538418608559106843
L37_DERIV_AT_1 = 0.3059997738340523
ZERO_11A1 = 6.362613894713
AP_37A1 = {2: -2, 3: -3, 5: -2, 7: -1, 11: -5, 13: -2, 17: 0, 19: 0}


def eta_product_11(n_max):
    """Coefficients of q prod (1 - q^n)^2 (1 - q^{11 n})^2, the weight-2 newform of level 11."""
    c = np.zeros(n_max + 1, dtype=np.int64)
    c[0] = 1
    for n in range(1, n_max + 1):
        for step in (n, 11 * n):
            if step > n_max:
                continue
            for _ in range(2):
                c[step:] = c[step:] - c[:-step].copy()
    return [0] + c[:n_max].tolist()  # shift by q


def test_hecke_coefficients_match_eta_product():
    E = ec.PRESETS["11a1"]
    got = ec.hecke_coefficients(E, 200).array()
    ref = eta_product_11(200)
    assert got.tolist() == ref[1:201]


def test_ap_37a1():
    E = ec.PRESETS["37a1"]
    for p, a in AP_37A1.items():
        assert ec.ap_good(E, p) == a
    with pytest.raises(DomainError):
        ec.ap_good(E, 37)


def test_bad_ap_from_reduction():
    assert ec.ap_reduced(ec.PRESETS["11a1"], 11) == 1
    assert ec.ap_reduced(ec.PRESETS["37a1"], 37) == -1


def test_root_numbers(curve11, curve37):
    assert curve11.epsilon == 1 and curve37.epsilon == -1


def test_L_values_against_published(curve11, curve37):
    assert abs(curve11.L_value(1.0) - L11_AT_1) < 1e-12
    h = 1e-4
    deriv = (curve37.L_value(1 + h) - curve37.L_value(1 - h)) / (2 * h)
    assert abs(deriv - L37_DERIV_AT_1) < 1e-7
    assert abs(curve37.value(1.0)) < 1e-14


def test_L_value_matches_dirichlet_series_far_right(curve11):
    s = 3.0 + 1.0j
    a = ec.hecke_coefficients(ec.PRESETS["11a1"], 4000).array()
    n = np.arange(1, a.size + 1)
    direct = (a * np.exp(-s * np.log(n))).sum()
    assert abs(curve11.L_value(s) - direct) < 1e-9


@pytest.mark.parametrize("s", [0.3 + 0.5j, 1.0 + 7j, 1.7 - 3j, -0.5 + 2j])
def test_functional_equation(curve11, curve37, s):
    assert ec.functional_equation_residual(curve11, s) < 1e-12
    assert ec.functional_equation_residual(curve37, s) < 1e-12


def test_wrong_coefficients_make_sign_ambiguous():
    E = ec.PRESETS["11a1"]
    with pytest.raises(AmbiguousSign):
        ec.elliptic_L(E, ap_override={2: 1})


def test_first_zero_11a1():
    L = ec.elliptic_L(ec.PRESETS["11a1"])
    cat = ec.elliptic_zero_catalog(L, t_max=7.0)
    assert len(cat.zeros) == 1
    assert abs(cat.zeros[0].gamma - ZERO_11A1) < 1e-9
    assert cat.real_zeros == () and not cat.certified


def test_hypothesis_verdicts(curve11, curve37):
    assert ec.theorem3_hypothesis(curve11).satisfied
    v = ec.theorem3_hypothesis(curve37)
    assert not v.satisfied and [r.sigma for r in v.real_zeros] == [1.0]


def test_lambda_total_symmetry_and_poles(curve11):
    for s in (0.4 + 2j, 1.6 - 0.3j, 0.5 + 11j):
        assert ec.lambda_total_residual(curve11, s) < 1e-10
    T = ec.lambda_total(curve11, 0.4 + 2j)
    assert len(T.factors) == 7
    prod = 1
    for _, v in T.factors:
        prod *= v
    assert prod == T.value
    for pole in (0, 1, 2):
        with pytest.raises(PoleError):
            ec.lambda_total(curve11, pole)


def test_motive_table():
    rows = ec.motive_factors()
    assert [r.expression for r in rows] == ["2pi/s", "L_Z(s)", "2pi/(1-s)", "1/Lambda(E,s)",
                                            "2pi/(s-1)", "L_Z(s-1)", "2pi/(2-s)"]


def test_parse_ec():
    assert ec.parse_ec("11a1") is ec.PRESETS["11a1"]
    E = ec.parse_ec("ec:0,0,1,-1,0@N=37;ap:37=-1")
    assert E.bad_ap == {37: -1} and E.conductor == 37


@pytest.mark.parametrize("text,token", [
    ("ec:0,-1,1,-10,-20@N=11", "ap:11"),
    ("ec:0,-1,1,-10,-20@N=11;ap:11=1,13=1", "ap:13"),
    ("ec:0,-1,1@N=11", "ec:0,-1,1"),
    ("ec:0,0,0,0,0@N=1", "ec:0,0,0,0,0@N=1"),
])
def test_parse_ec_errors(text, token):
    with pytest.raises(ParseError) as info:
        ec.parse_ec(text)
    assert token in info.value.token


def test_curve_validation():
    with pytest.raises(DomainError):
        ec.EllipticCurveQ((0, -1, 1, -10, -20), 11, {})
    with pytest.raises(DomainError):
        ec.EllipticCurveQ((0, -1, 1, -10, -20), 11, {11: 2})


def test_report(curve37):
    rep = ec.ec_report(ec.PRESETS["37a1"], curve37)
    assert rep["root_number"] == -1
    assert rep["bad_ap"] == rep["bad_ap_from_reduction"] == {"37": -1}
    assert rep["theorem3_hypothesis"]["satisfied"] is False
