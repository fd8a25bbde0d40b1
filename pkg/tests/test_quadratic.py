from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zsl.quadratic import Quad, squarefree_split

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=20)
dvals = st.sampled_from([-7, -3, -2, -1, 2, 3, 5, 13])


@pytest.mark.parametrize("n,f,d", [(12, 2, 3), (-28, 2, -7), (49, 7, 1), (1, 1, 1), (-1, 1, -1), (0, 0, 1)])
def test_squarefree_split(n, f, d):
    assert squarefree_split(n) == (f, d)


def test_weil_number():
    alpha = (Quad(1) + Quad.sqrt_of(-7)) / 2   # root of T^2 - T + 2
    assert alpha * alpha - alpha + 2 == 0
    assert alpha * alpha.conjugate() == 2
    assert alpha ** 5 * (Quad(2) / alpha) ** 5 == 32
    assert alpha ** -2 * alpha ** 2 == 1


def test_mixed_fields_refused():
    with pytest.raises(ValueError):
        Quad.sqrt_of(2) + Quad.sqrt_of(3)


def test_complex_and_str():
    z = Quad(Fraction(1, 2), 3, -2)
    assert abs(complex(z) - complex(0.5, 3 * 2 ** 0.5)) < 1e-15
    assert str(Quad(4)) == "4"


@given(fracs, fracs, fracs, fracs, dvals)
def test_field_axioms(x1, y1, x2, y2, d):
    a, b = Quad(x1, y1, d), Quad(x2, y2, d)
    assert a + b == b + a and a * b == b * a
    assert (a * b).norm() == a.norm() * b.norm()
    if b != 0:
        assert (a / b) * b == a
    assert abs(complex(a * b) - complex(a) * complex(b)) <= 1e-9 * (1 + abs(complex(a)) * abs(complex(b)))
