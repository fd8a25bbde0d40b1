"""Exact arithmetic in Q(sqrt d) for squarefree integer d.

Frobenius eigenvalues of elliptic curves over finite fields are roots of
T^2 - a T + q, so they live in Q(sqrt(a^2 - 4q)) and every identity needed
by the function-field checks (|alpha|^2 = q, alpha^m (q/alpha)^m = q^m) can
be decided without rounding.
"""

from dataclasses import dataclass
from fractions import Fraction
import cmath
import math


def squarefree_split(n):
    """Write the integer n as f^2 * d with d squarefree; returns (f, d)."""
    from sympy import factorint  # deferred: sympy is slow to import

    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    f, d = 1, sign
    for p, e in factorint(abs(n)).items():
        f *= p ** (e // 2)
        d *= p ** (e % 2)
    return f, d


@dataclass(frozen=True)
class Quad:
    """x + y sqrt(d) with rational x, y and squarefree d."""

    x: Fraction
    y: Fraction = Fraction(0)
    d: int = -1

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        if self.y == 0:
            object.__setattr__(self, "d", 1)

    @classmethod
    def sqrt_of(cls, n, scale=1):
        """scale * sqrt(n) for an integer n."""
        f, d = squarefree_split(n)
        return cls(Fraction(0), Fraction(scale) * f, d)

    def _field(self, other):
        if not isinstance(other, Quad):
            other = Quad(Fraction(other))
        if self.y == 0:
            return other.d, other
        if other.y != 0 and other.d != self.d:
            raise ValueError("elements of different quadratic fields")
        return self.d, other

    def __add__(self, other):
        d, o = self._field(other)
        return Quad(self.x + o.x, self.y + o.y, d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.x, -self.y, self.d)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Quad) else Quad(-Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        d, o = self._field(other)
        return Quad(self.x * o.x + d * self.y * o.y, self.x * o.y + o.x * self.y, d)

    __rmul__ = __mul__

    def conjugate(self):
        """Galois conjugate x - y sqrt(d); complex conjugation when d < 0."""
        return Quad(self.x, -self.y, self.d)

    def norm(self):
        return self.x * self.x - self.d * self.y * self.y

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        c = self.conjugate()
        return Quad(c.x / n, c.y / n, self.d)

    def __truediv__(self, other):
        if not isinstance(other, Quad):
            other = Quad(Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Quad(Fraction(other)) * self.inverse()

    def __pow__(self, m):
        if m < 0:
            return self.inverse() ** (-m)
        out, base = Quad(Fraction(1)), self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Quad):
            try:
                other = Quad(Fraction(other))
            except (TypeError, ValueError):
                return NotImplemented
        return self.x == other.x and self.y == other.y and (self.y == 0 or self.d == other.d)

    def __hash__(self):
        return hash((self.x, self.y, self.d if self.y else 1))

    def is_rational(self):
        return self.y == 0

    def __complex__(self):
        root = cmath.sqrt(self.d) if self.d < 0 else math.sqrt(self.d)
        return complex(float(self.x) + float(self.y) * root)

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        return f"{self.x} + {self.y}*sqrt({self.d})"
