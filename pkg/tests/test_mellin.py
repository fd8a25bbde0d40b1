import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from zsl import mellin as M
from zsl.errors import DomainError
from zsl.specfun import completed_L_Q


def direct(F_of_x, s, lo=-12.0, hi=12.0):
    """int_0^inf F(x) x^{s-1} dx in log coordinates, by adaptive quadrature."""
    f = lambda u: F_of_x(math.exp(u)) * cmath.exp(s * u)
    re = integrate.quad(lambda u: f(u).real, lo, hi, limit=400, epsabs=1e-15, epsrel=1e-13)[0]
    im = integrate.quad(lambda u: f(u).imag, lo, hi, limit=400, epsabs=1e-15, epsrel=1e-13)[0]
    return complex(re, im)


def lg(a, mu, amp=1.0):
    return lambda x: amp * math.exp(-a * (math.log(x) - mu) ** 2)


@pytest.mark.parametrize("s", [0.5 + 0j, 0.5 + 3j, 1.2 - 2j, -0.7 + 1j])
def test_log_gaussian_closed_form_vs_scipy(s):
    F = M.log_gaussian(4.0, 0.3, 2 - 1j)
    assert abs(M.mellin(F, s) - direct(lg(4.0, 0.3, 2 - 1j), s)) < 1e-11


def test_operators_vs_scipy():
    base = lg(3.0, -0.2)
    F = M.log_gaussian(3.0, -0.2)
    s = 0.4 + 1.7j
    J1 = lambda x: base(1 / x) / x
    assert abs(M.mellin(M.apply_J(F, 1), s) - direct(J1, s)) < 1e-11
    J2 = lambda x: base(1 / x) / x ** 2
    assert abs(M.mellin(M.apply_J(F, 2), s) - direct(J2, s)) < 1e-11
    sc = lambda x: base(x / 2.5)
    assert abs(M.mellin(M.scale_action(F, 2.5), s) - direct(sc, s)) < 1e-11


def test_quadrature_agrees_with_closed_forms():
    F = M.fsum(M.log_gaussian(100, 0.5, 1j), M.apply_J(M.log_gaussian(50, -0.3), 1))
    for s in (0.5 + 14.13j, 0.5 + 120j, 0.1 - 40j):
        ref = F.mellin(s)
        assert abs(M.mellin_quadrature(F, s) - ref) <= 1e-10 * abs(ref)


def test_convolution_is_product():
    F, G = M.log_gaussian(20, 0.1), M.log_gaussian(30, -0.4)
    C = M.mult_convolve(F, G)
    s = 0.5 + 6j
    assert abs(C.mellin(s) - F.mellin(s) * G.mellin(s)) < 1e-15
    assert abs(M.mellin_quadrature(C, s) - C.mellin(s)) <= 1e-9 * abs(C.mellin(s))
    assert M.mult_convolve(G, F) == C


def test_smoothed_image_quadrature():
    h = M.log_gaussian(10, 0.2)
    T = M.smoothed_image(h)
    s = 1.5 + 4j
    ref = completed_L_Q(s) * h.mellin(s)
    assert abs(T.mellin(s) - ref) < 1e-15
    assert abs(M.mellin_quadrature(T, s) - ref) <= 1e-9 * abs(ref)


def test_theta_series_tail():
    x = 0.7
    full = 2 * sum(math.exp(-math.pi * n * n * x * x) for n in range(1, 200))
    assert abs(M.theta_series(x) - full) < 1e-14
    with pytest.raises(DomainError):
        M.theta_series(0.0)


def test_pointwise_node():
    P = M.Pointwise(lambda x: np.exp(-5 * np.log(x) ** 2), -6.0, 6.0)
    s = 0.5 + 2j
    assert abs(M.mellin(P, s) - M.log_gaussian(5).mellin(s)) < 1e-11
    assert P.envelope(0.5, 10) == M.INF


def test_involutions_collapse():
    F = M.log_gaussian(7, 0.1)
    assert M.apply_J(M.apply_J(F, 2), 2) == F
    assert M.conj(M.conj(F)) == F
    assert M.scale_action(M.scale_action(F, 2.0), 0.5) == F


def test_conj_mellin_identity():
    F = M.log_gaussian(9, 0.2, 1 + 2j)
    s = 0.3 + 5j
    assert abs(M.mellin(M.conj(F), s) - M.mellin(F, s.conjugate()).conjugate()) < 1e-15


def test_domain_errors():
    with pytest.raises(DomainError):
        M.log_gaussian(0)
    with pytest.raises(DomainError):
        M.apply_J(M.log_gaussian(1), 3)
    with pytest.raises(DomainError):
        M.scale_action(M.log_gaussian(1), -1)
    with pytest.raises(DomainError):
        M.mellin_quadrature(M.smoothed_image(M.log_gaussian(1)), 0.5)


def test_envelope_dominates():
    F = M.fsum(M.log_gaussian(40, 0.3, 1 - 1j), M.scale_action(M.log_gaussian(60, -0.2), 1.7))
    for t in (0, 5, 30, 90):
        for sigma in (0.0, 0.5, 1.0):
            assert abs(F.mellin(complex(sigma, t))) <= F.envelope(sigma, t) * (1 + 1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(1.0, 200.0), st.floats(-1.0, 1.0), st.floats(-60.0, 60.0), st.sampled_from([1, 2]))
def test_J_identity_property(a, mu, t, w):
    F = M.log_gaussian(a, mu)
    s = complex(0.3, t)
    lhs = M.mellin(M.apply_J(F, w), s)
    rhs = M.mellin(F, w - s)
    assert lhs == rhs


def test_default_family_shape():
    fam = M.default_family()
    assert [F.mu for F in fam] == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert all(F.a == 100.0 and F.is_real for F in fam)
