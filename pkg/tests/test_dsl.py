import pytest
from hypothesis import given, settings, strategies as st

from zsl import mellin as M
from zsl.dsl import parse_function
from zsl.errors import ParseError


def test_leaf_and_complex_amplitude():
    F = parse_function("loggauss:a=100,mu=0.5,amp=1+2j")
    assert F == M.log_gaussian(100, 0.5, 1 + 2j)
    assert not F.is_real


def test_nested_expression():
    text = "sum(j1(loggauss:a=10,mu=0); scale:2(conj(loggauss:a=5,mu=-1)))"
    F = parse_function(text)
    G = M.fsum(M.apply_J(M.log_gaussian(10), 1),
               M.scale_action(M.conj(M.log_gaussian(5, -1)), 2))
    assert F == G


def test_conv_and_smooth():
    F = parse_function("conv(loggauss:a=2,mu=0, loggauss:a=3,mu=1)")
    assert isinstance(F, M.MultConv)
    assert isinstance(parse_function("smooth(loggauss:a=2,mu=0)"), M.ThetaSmoothed)


def test_whitespace_insensitive():
    a = parse_function(" j2 ( loggauss : a = 4 , mu = 0.25 ) ")
    assert a == parse_function("j2(loggauss:a=4,mu=0.25)")


@pytest.mark.parametrize("text,token", [
    ("loggaus:a=1", "loggaus"),
    ("loggauss:a=1,mu=x", "x"),
    ("j3(loggauss:a=1)", "j3"),
    ("sum(loggauss:a=1", ""),
    ("loggauss:a=-1", "loggauss"),
])
def test_errors_name_the_token(text, token):
    with pytest.raises(ParseError) as info:
        parse_function(text)
    assert token in info.value.token


@settings(max_examples=60, deadline=None)
@given(st.floats(0.5, 500), st.floats(-3, 3), st.integers(1, 2), st.floats(0.2, 5), st.booleans())
def test_dsl_round_trip(a, mu, w, lam, use_conj):
    F = M.scale_action(M.apply_J(M.log_gaussian(a, mu), w), lam)
    if use_conj:
        F = M.conj(F)
    assert parse_function(F.dsl()) == F
