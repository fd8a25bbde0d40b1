import itertools

import numpy as np
import pytest

from zsl import ffield as ff
from zsl.errors import DomainError, InconsistentCounts, ParseError, WeilViolation
from zsl.gf import GF
from zsl.quadratic import Quad


def brute_count(curve, degree=1):
    """Affine pairs (x, y) satisfying the Weierstrass equation, plus infinity."""
    base = curve.base_field
    L = GF(curve.p, curve.k * degree)
    emb = L.embedding(base)
    a1, a2, a3, a4, a6 = (int(emb[c]) for c in curve.a)
    total = 1
    for x, y in itertools.product(range(L.order), repeat=2):
        lhs = L.add(L.add(L.mul(y, y), L.mul(L.mul(a1, x), y)), L.mul(a3, y))
        x2 = L.mul(x, x)
        rhs = L.add(L.add(L.mul(x2, x), L.mul(a2, x2)), L.add(L.mul(a4, x), a6))
        total += int(lhs == rhs)
    return total


CURVES = [
    ff.CurveOverFq(2, (0, 0, 1, 0, 0)),        # y^2 + y = x^3
    ff.CurveOverFq(3, (0, 0, 0, 1, 0)),        # y^2 = x^3 + x
    ff.CurveOverFq(5, (0, 0, 0, 1, 1)),
    ff.CurveOverFq(4, (1, 0, 0, 0, 1)),        # y^2 + xy = x^3 + 1
    ff.CurveOverFq(9, (0, 0, 0, 3, 1)),
    ff.CurveOverFq(7, (0, 0, 0, 0, 3)),
]


@pytest.mark.parametrize("curve", CURVES, ids=str)
def test_counts_match_brute_force(curve):
    for degree in (1, 2):
        if curve.q ** degree <= 49:
            assert ff.count_points(curve, degree) == brute_count(curve, degree)


@pytest.mark.parametrize("curve", CURVES, ids=str)
def test_eigenvalues_predict_higher_counts(curve):
    P, S, pp = ff.analyze(curve)
    for i in range(1, 4):
        predicted = curve.q ** i + 1 - sum(e.mult * complex(e.alpha ** i).real for e in S.eigenvalues)
        assert round(predicted) == ff.count_points(curve, i)
    assert pp.is_antisymmetric() and pp.equivariance_ok() and pp.exact
    assert pp.determinant() == 1


def test_supersingular_curve_over_F2():
    curve = CURVES[0]
    assert [ff.count_points(curve, i) for i in (1, 2, 3)] == [3, 9, 9]
    P, S, _ = ff.analyze(curve)
    assert P.coeffs == (1, 0, 2)
    assert all(e.alpha * e.alpha == -2 for e in S.eigenvalues)


def test_twist_with_real_sqrt_q():
    twist = ff.find_twist(4, 1)
    assert twist is not None and ff.count_points(twist) == 1
    P, S, pp = ff.analyze(twist)
    assert P.coeffs == (1, -4, 4)
    assert S.real_sqrt_q_mult == 2
    assert S.eigenvalues == (ff.Eigenvalue(Quad(2), 2),)
    assert pp.blocks == 1
    mult, rest = ff.split_real_zeros(S)
    assert mult == 2 and rest.dimension == 0


def test_base_change_composes():
    P = ff.zeta_numerator([4], 1, 3)
    assert P.coeffs == (1, 0, 3)
    assert ff.base_change(P, 2).coeffs == (1, 6, 9)
    assert ff.base_change(ff.base_change(P, 2), 3) == ff.base_change(P, 6)
    assert ff.base_change(P, 1) is P


def test_base_change_matches_count_over_extension():
    curve = CURVES[2]
    P = ff.zeta_numerator([ff.count_points(curve)], 1, 5)
    P2 = ff.base_change(P, 2)
    assert 25 + 1 + P2.coeffs[1] == ff.count_points(curve, 2)


def hyperelliptic_counts(p, coeffs, upto):
    """Projective counts of y^2 = f(x), deg f = 5, over F_{p^i}, by brute force."""
    out = []
    for i in range(1, upto + 1):
        L = GF(p, i)
        x = L.elements()
        fx = L.poly_eval(coeffs, x)
        out.append(L.order + 1 + int(L.quadratic_character(fx).sum()))
    return out


def test_genus_two_counts_curve():
    coeffs = [1, 0, 1, 0, 0, 1]  # 1 + x^2 + x^5 over F_3, squarefree
    counts = hyperelliptic_counts(3, coeffs, 3)
    curve = ff.CurveOverFq(3, None, 2, tuple(counts[:2]))
    P, S, pp = ff.analyze(curve)
    assert P.coeffs[0] == 1 and P.coeffs[-1] == 9
    assert ff.count_points(curve, 3) == counts[2]
    assert all(abs(abs(complex(e.alpha)) ** 2 - 3) < 1e-10 for e in S.eigenvalues)
    assert pp.blocks == 2 and pp.is_antisymmetric() and pp.equivariance_ok()


def test_power_sums():
    P = ff.ZetaPolynomial(1, 2, (1, 0, 2))
    assert ff.power_sums(P, 4) == [2, 0, -4, 0, 8]


def test_weil_violation_and_bad_counts():
    with pytest.raises(WeilViolation):
        ff.frobenius_eigenvalues(ff.ZetaPolynomial(1, 4, (1, -5, 4)))
    with pytest.raises(InconsistentCounts):
        ff.zeta_numerator([3, 4], 2, 3)
    with pytest.raises(DomainError):
        ff.ZetaPolynomial(1, 3, (1, 0, 4))


def test_curve_validation():
    with pytest.raises(DomainError):
        ff.CurveOverFq(3, (0, 0, 0, 0, 0))     # y^2 = x^3 is singular
    with pytest.raises(DomainError):
        ff.CurveOverFq(6, (0, 0, 0, 1, 0))
    with pytest.raises(DomainError):
        ff.CurveOverFq(3, None, 4, (1, 2, 3, 4))


def test_parse_curve_forms():
    c = ff.parse_curve("ell:q=2^2;a1=1,a2=0,a3=0,a4=0,a6=1")
    assert c == CURVES[3]
    c9 = ff.parse_curve("ell: q=9; a1=0,a2=0,a3=0,a4=g,a6=1")
    assert c9.a[3] == 3
    k = ff.parse_curve("counts:q=3;g=2;N=5,11")
    assert k.counts == (5, 11) and k.genus == 2


@pytest.mark.parametrize("text,token", [
    ("ell:q=6;a1=0,a2=0,a3=1,a4=0,a6=0", "6"),
    ("elk:q=2;a1=0", "elk"),
    ("ell:q=2;a1=0,a2=0,a3=1,a4=0", "a6"),
    ("ell:q=4;a1=0,a2=0,a3=1,a4=g^2,a6=0", "g^2"),
    ("ell:q=5;a1=7,a2=0,a3=0,a4=1,a6=0", "7"),
])
def test_parse_curve_errors(text, token):
    with pytest.raises(ParseError) as info:
        ff.parse_curve(text)
    assert token in info.value.token


def test_report_keys():
    rep = ff.ff_report(CURVES[1])
    assert list(rep) == ["q", "g", "P", "eigenvalues", "real_sqrt_q_mult", "pairing", "suspension"]
    assert rep["P"] == [1, 0, 3]
    assert all(e["exact"] for e in rep["eigenvalues"])
