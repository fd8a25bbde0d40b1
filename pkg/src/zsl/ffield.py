"""Curves over finite fields: point counts, zeta numerators, Frobenius
eigenvalues and the Frobenius-equivariant symplectic pairing.

Everything except the genus > 1 root finding is exact: counts are integers,
zeta numerators come from Newton's identities in rational arithmetic, and
genus-1 eigenvalues are quadratic integers (see :mod:`zsl.quadratic`).
"""

from dataclasses import dataclass
from fractions import Fraction
import math
import re

import numpy as np

from . import io
from .errors import DomainError, InconsistentCounts, ParseError, WeilViolation
from .gf import GF, prime_power
from .pairing import suspend
from .quadratic import Quad

MAX_GENUS = 3
MAX_Q = 2 ** 16
MAX_COUNT_FIELD = 2 ** 20

_FIELDS = {}


def field_of(p, n):
    key = (p, n)
    if key not in _FIELDS:
        _FIELDS[key] = GF(p, n)
    return _FIELDS[key]


@dataclass(frozen=True)
class CurveOverFq:
    """Either an elliptic Weierstrass model with coefficients in F_q (as
    integer-encoded field elements) or a list of point counts N_1..N_g."""

    q: int
    a: tuple = None  # (a1, a2, a3, a4, a6)
    genus: int = 1
    counts: tuple = ()

    def __post_init__(self):
        p, k = prime_power(self.q)
        if self.q > MAX_Q:
            raise DomainError(f"q = {self.q} exceeds {MAX_Q}")
        if not 1 <= self.genus <= MAX_GENUS:
            raise DomainError(f"genus must be between 1 and {MAX_GENUS}")
        if self.a is None:
            if len(self.counts) < self.genus:
                raise DomainError(f"need {self.genus} point counts, got {len(self.counts)}")
        else:
            if len(self.a) != 5 or self.genus != 1:
                raise DomainError("elliptic model needs five coefficients and genus 1")
            if any(not 0 <= c < self.q for c in self.a):
                raise DomainError("coefficients must be field elements")
            if discriminant(self.base_field, self.a) == 0:
                raise DomainError("singular Weierstrass model (discriminant 0)")

    @property
    def p(self):
        return prime_power(self.q)[0]

    @property
    def k(self):
        return prime_power(self.q)[1]

    @property
    def base_field(self):
        return field_of(*prime_power(self.q))

    @property
    def is_elliptic(self):
        return self.a is not None


def discriminant(F, a):
    """Discriminant of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 in F."""
    a1, a2, a3, a4, a6 = (np.int64(c) for c in a)
    m, ad, s = F.mul, F.add, F.smul
    b2 = ad(m(a1, a1), s(4, a2))
    b4 = ad(s(2, a4), m(a1, a3))
    b6 = ad(m(a3, a3), s(4, a6))
    b8 = ad(ad(m(m(a1, a1), a6), s(4, m(a2, a6))),
            ad(F.neg(m(m(a1, a3), a4)), ad(m(a2, m(a3, a3)), F.neg(m(a4, a4)))))
    d = F.neg(m(m(b2, b2), b8))
    d = F.sub(d, s(8, m(b4, m(b4, b4))))
    d = F.sub(d, s(27, m(b6, b6)))
    d = ad(d, s(9, m(b2, m(b4, b6))))
    return int(d)


def count_points(curve, degree=1):
    """Number of projective points over F_{q^degree}.

    Elliptic models are counted by sweeping x over the extension field: in
    odd characteristic each x contributes 1 + chi(D(x)) with D the
    discriminant of the quadratic in y; in characteristic 2 the equation
    y^2 + b y = c has one root when b = 0 and two or none according to the
    absolute trace of c / b^2. The point at infinity adds one.
    """
    if degree < 1:
        raise DomainError("degree must be >= 1")
    if not curve.is_elliptic:
        if degree <= len(curve.counts):
            return int(curve.counts[degree - 1])
        P = zeta_numerator(curve.counts[:curve.genus], curve.genus, curve.q)
        return curve.q ** degree + 1 - power_sums(P, degree)[degree]
    Q = curve.q ** degree
    if Q > MAX_COUNT_FIELD:
        raise DomainError(f"q^i = {Q} exceeds the enumeration cap {MAX_COUNT_FIELD}")
    base = curve.base_field
    L = field_of(curve.p, curve.k * degree)
    emb = L.embedding(base)
    a1, a2, a3, a4, a6 = (int(emb[c]) for c in curve.a)
    x = L.elements()
    b = L.add(L.mul(a1, x), a3)
    x2 = L.mul(x, x)
    c = L.add(L.add(L.mul(x2, x), L.mul(a2, x2)), L.add(L.mul(a4, x), a6))
    if L.p == 2:
        zero_b = b == 0
        safe_b = np.where(zero_b, 1, b)
        z = L.div(c, L.mul(safe_b, safe_b))
        two = L.absolute_trace(z) == 0
        affine = int(zero_b.sum()) + 2 * int((two & ~zero_b).sum())
    else:
        disc = L.add(L.smul(4, c), L.mul(b, b))
        affine = Q + int(L.quadratic_character(disc).sum())
    return affine + 1


@dataclass(frozen=True)
class ZetaPolynomial:
    g: int
    q: int
    coeffs: tuple

    def __post_init__(self):
        c = self.coeffs
        if len(c) != 2 * self.g + 1 or c[0] != 1 or c[-1] != self.q ** self.g:
            raise DomainError("zeta numerator must have a_0 = 1 and a_2g = q^g")
        for i in range(self.g + 1):
            if c[2 * self.g - i] != self.q ** (self.g - i) * c[i]:
                raise DomainError("zeta numerator breaks a_{2g-i} = q^{g-i} a_i")


def zeta_numerator(counts, g, q):
    """P(T) from N_1..N_g via Newton's identities on log Z(T).

    With p_i = q^i + 1 - N_i the power sums of the reciprocal roots, the
    elementary symmetric functions satisfy j e_j = sum (-1)^(i-1) e_(j-i) p_i
    and P(T) = sum (-1)^j e_j T^j; the top half follows from the symmetry.
    """
    if len(counts) < g:
        raise DomainError(f"need {g} counts")
    psum = [None] + [q ** i + 1 - int(counts[i - 1]) for i in range(1, g + 1)]
    e = [Fraction(1)]
    for j in range(1, g + 1):
        acc = sum((-1) ** (i - 1) * e[j - i] * psum[i] for i in range(1, j + 1))
        ej = Fraction(acc, j)
        if ej.denominator != 1:
            raise InconsistentCounts(f"non-integer symmetric function e_{j} = {ej}")
        e.append(ej)
    low = [int((-1) ** j * e[j]) for j in range(g + 1)]
    coeffs = low + [q ** (g - i) * low[i] for i in range(g - 1, -1, -1)]
    return ZetaPolynomial(g, q, tuple(coeffs))


def power_sums(P, upto):
    """Power sums sum alpha^n of the reciprocal roots of P, n = 0..upto (exact)."""
    e = [(-1) ** j * c for j, c in enumerate(P.coeffs)]
    deg = 2 * P.g
    ps = [deg]
    for n in range(1, upto + 1):
        acc = (-1) ** (n - 1) * n * e[n] if n <= deg else 0
        for i in range(1, min(n - 1, deg) + 1):
            acc += (-1) ** (i - 1) * e[i] * ps[n - i]
        ps.append(acc)
    return ps


def base_change(P, r):
    """Zeta numerator over F_{q^r}: eigenvalues alpha -> alpha^r.

    The new power sums are p_j' = p_{jr}; for g = 1 this is the recursion
    t_j = a t_{j-1} - q t_{j-2}.
    """
    if r < 1:
        raise DomainError("r must be >= 1")
    if r == 1:
        return P
    ps = power_sums(P, P.g * r)
    qr = P.q ** r
    counts = [qr ** j + 1 - ps[j * r] for j in range(1, P.g + 1)]
    return zeta_numerator(counts, P.g, qr)


@dataclass(frozen=True)
class Eigenvalue:
    alpha: object  # Quad when exact, complex otherwise
    mult: int

    @property
    def exact(self):
        return isinstance(self.alpha, Quad)

    def __complex__(self):
        return complex(self.alpha)


@dataclass(frozen=True)
class FrobeniusSpectrum:
    q: int
    eigenvalues: tuple
    real_sqrt_q_mult: int

    @property
    def dimension(self):
        return sum(e.mult for e in self.eigenvalues)


def _is_plus_sqrt_q(alpha, q):
    if isinstance(alpha, Quad):
        if alpha * alpha != q:
            return False
        return complex(alpha).real > 0 and (alpha.y == 0 or alpha.d > 0)
    return abs(alpha - math.sqrt(q)) <= 1e-8 * math.sqrt(q)


def frobenius_eigenvalues(P):
    """Reciprocal roots of P with multiplicities, after the Weil check."""
    q = P.q
    if P.g == 1:
        a = -P.coeffs[1]
        disc = a * a - 4 * q
        if disc > 0:
            raise WeilViolation(f"|a| = {abs(a)} exceeds 2 sqrt(q) for q = {q}")
        if disc == 0:
            eig = (Eigenvalue(Quad(Fraction(a, 2)), 2),)
        else:
            root = Quad.sqrt_of(disc, Fraction(1, 2))
            half = Quad(Fraction(a, 2), 0, root.d)
            eig = (Eigenvalue(half + root, 1), Eigenvalue(half - root, 1))
        for e in eig:
            if e.alpha * e.alpha.conjugate() != q:
                raise WeilViolation("alpha * conj(alpha) != q")
    else:
        eig = _numeric_eigenvalues(P)
        for e in eig:
            z = complex(e.alpha)
            if abs(abs(z) ** 2 - q) > 1e-10 * q:
                raise WeilViolation(f"|alpha|^2 = {abs(z) ** 2} differs from q = {q}")
    m = sum(e.mult for e in eig if _is_plus_sqrt_q(e.alpha, q))
    return FrobeniusSpectrum(q, eig, m)


def _numeric_eigenvalues(P):
    import sympy  # square-free factorisation keeps repeated roots accurate

    T = sympy.Symbol("T")
    poly = sympy.Poly(list(reversed(P.coeffs)), T)
    out = []
    for factor, mult in sympy.sqf_list(poly)[1]:
        coeffs = [float(c) for c in factor.all_coeffs()]
        for root in np.roots(coeffs):
            out.append(Eigenvalue(complex(1.0 / root), int(mult)))
    out.sort(key=lambda e: (round(complex(e.alpha).imag, 9), complex(e.alpha).real))
    return tuple(out)


def split_real_zeros(S):
    """Separate the alpha = +sqrt(q) part (real zeros of L_K) from the rest."""
    rest = tuple(e for e in S.eigenvalues if not _is_plus_sqrt_q(e.alpha, S.q))
    return S.real_sqrt_q_mult, FrobeniusSpectrum(S.q, rest, 0)


@dataclass
class PoincarePairing:
    matrix: np.ndarray  # integer entries
    frobenius: list  # diagonal of the Frobenius action in the same basis
    basis: list
    blocks: int
    equivariance_factor: object

    def determinant(self):
        return round(np.linalg.det(self.matrix.astype(float)))

    def is_antisymmetric(self):
        return bool(np.array_equal(self.matrix, -self.matrix.T))

    def equivariance_ok(self):
        """<F v, F w> = q <v, w> entry by entry; exact for quadratic-integer
        eigenvalues, to 1e-10 relative for numeric ones."""
        n = len(self.frobenius)
        for i in range(n):
            for j in range(n):
                mij = int(self.matrix[i, j])
                if not mij:
                    continue
                fi, fj = self.frobenius[i], self.frobenius[j]
                if isinstance(fi, Quad) and isinstance(fj, Quad):
                    if fi * fj * mij != self.equivariance_factor * mij:
                        return False
                elif abs(complex(fi) * complex(fj) - self.equivariance_factor) > 1e-10 * self.equivariance_factor:
                    return False
        return True

    @property
    def exact(self):
        return all(isinstance(f, Quad) for f in self.frobenius)


def poincare_pairing_matrix(S):
    """Block pairing e_alpha <-> e_{q/alpha} with blocks [[0, 1], [-1, 0]].

    Each eigenvalue is matched with q/alpha (its complex conjugate under the
    Weil bound); a self-partnered eigenvalue (alpha = +-sqrt q) must have
    even multiplicity and is split into mult / 2 blocks.
    """
    q = S.q
    pool = []
    for e in S.eigenvalues:
        pool.extend([e.alpha] * e.mult)
    used = [False] * len(pool)
    order = []
    for i, a in enumerate(pool):
        if used[i]:
            continue
        partner = (Quad(q) / a) if isinstance(a, Quad) else q / complex(a)
        j = next((j for j in range(len(pool)) if j != i and not used[j]
                  and _same(pool[j], partner)), None)
        if j is None:
            raise DomainError(f"eigenvalue {a} has no partner q/alpha")
        used[i] = used[j] = True
        order.append((pool[i], pool[j]))
    n = 2 * len(order)
    M = np.zeros((n, n), dtype=np.int64)
    frob, basis = [], []
    for b, (a, c) in enumerate(order):
        M[2 * b, 2 * b + 1] = 1
        M[2 * b + 1, 2 * b] = -1
        frob += [a, c]
        basis += [f"e[{a}]", f"e[{c}]"]
    return PoincarePairing(M, frob, basis, len(order), q)


def _same(x, y):
    if isinstance(x, Quad) and isinstance(y, Quad):
        return x == y
    return abs(complex(x) - complex(y)) <= 1e-9 * max(1.0, abs(complex(y)))


def find_twist(q, target):
    """First curve y^2 + a3 y = x^3 + a4 x + a6 over F_q (characteristic 2,
    j = 0 family) with ``target`` rational points, in coefficient order."""
    p, _ = prime_power(q)
    if p != 2:
        raise DomainError("the j = 0 twist search is implemented for characteristic 2")
    for a3 in range(1, q):
        for a4 in range(q):
            for a6 in range(q):
                curve = CurveOverFq(q, (0, 0, a3, a4, a6))
                if count_points(curve) == target:
                    return curve
    return None


# descriptor strings -----------------------------------------------------------

_TERM = re.compile(r"^(\d*)\*?(g(?:\^(\d+))?)?$")


def parse_element(text, F):
    """Field element from a polynomial in the generator g, e.g. ``g^2+2g+1``.

    A bare integer below p is a prime-field element.
    """
    text = "".join(text.split())
    if not text:
        raise ParseError("empty coefficient", "<empty>")
    coeffs = [0] * max(F.n, 1)
    for term in text.split("+"):
        m = _TERM.match(term)
        if not m or not term:
            raise ParseError(f"bad field element term {term!r}", term)
        c = int(m.group(1)) if m.group(1) else 1
        e = 0
        if m.group(2):
            e = int(m.group(3)) if m.group(3) else 1
        if e >= F.n:
            raise ParseError(f"exponent {e} too large for F_{F.order}", term)
        if not m.group(2) and c >= F.p and F.n == 1:
            raise ParseError(f"{c} is not below p = {F.p}", term)
        coeffs[e] += c
    return F.from_coeffs(coeffs)


def _parse_q(text):
    try:
        if "^" in text:
            base, exp = text.split("^")
            q = int(base) ** int(exp)
        else:
            q = int(text)
        prime_power(q)
    except (ValueError, DomainError):
        raise ParseError(f"bad field size {text!r}", text) from None
    return q


def parse_curve(text):
    """``ell:q=<q>;a1=..,a2=..,a3=..,a4=..,a6=..`` or
    ``counts:q=<q>;g=<g>;N=<n1>[,<n2>...]``."""
    src = "".join(text.split())
    kind, _, rest = src.partition(":")
    if kind not in ("ell", "counts"):
        raise ParseError(f"unknown curve kind {kind!r}", kind or src)
    parts = dict()
    for chunk in rest.split(";"):
        key, eq, val = chunk.partition("=")
        if not eq:
            raise ParseError(f"expected key=value, got {chunk!r}", chunk)
        if kind == "ell" and key == "a1":
            parts["coeffs"] = chunk
        else:
            parts[key] = val
    if "q" not in parts:
        raise ParseError("missing q=", src)
    q = _parse_q(parts["q"])
    if kind == "ell":
        if "coeffs" not in parts:
            raise ParseError("missing a1=..,a6=..", src)
        F = field_of(*prime_power(q))
        vals = {}
        for item in parts["coeffs"].split(","):
            key, eq, val = item.partition("=")
            if key not in ("a1", "a2", "a3", "a4", "a6") or not eq:
                raise ParseError(f"bad coefficient {item!r}", item)
            vals[key] = parse_element(val, F)
        missing = [k for k in ("a1", "a2", "a3", "a4", "a6") if k not in vals]
        if missing:
            raise ParseError(f"missing coefficient {missing[0]}", missing[0])
        a = tuple(vals[k] for k in ("a1", "a2", "a3", "a4", "a6"))
        try:
            return CurveOverFq(q, a)
        except DomainError as exc:
            raise ParseError(str(exc), src) from None
    try:
        g = int(parts["g"])
        counts = tuple(int(n) for n in parts["N"].split(","))
    except (KeyError, ValueError):
        raise ParseError("counts curve needs g=<int> and N=<n1>,...", src) from None
    try:
        return CurveOverFq(q, None, g, counts)
    except DomainError as exc:
        raise ParseError(str(exc), src) from None


# report ----------------------------------------------------------------------

def analyze(curve):
    """Zeta numerator, eigenvalues and pairing for a curve, as a dict."""
    counts = [count_points(curve, i) for i in range(1, curve.genus + 1)]
    P = zeta_numerator(counts, curve.genus, curve.q)
    S = frobenius_eigenvalues(P)
    pp = poincare_pairing_matrix(S)
    if not (pp.is_antisymmetric() and pp.equivariance_ok()):
        raise DomainError("pairing failed its structural checks")
    return P, S, pp


def ff_report(curve):
    P, S, pp = analyze(curve)
    spec = suspend(S.q, [(e.alpha, e.mult) for e in S.eigenvalues])
    return {
        "q": curve.q,
        "g": P.g,
        "P": list(P.coeffs),
        "eigenvalues": [{**io.cnum(complex(e.alpha)), "mult": e.mult, "exact": e.exact}
                        for e in S.eigenvalues],
        "real_sqrt_q_mult": S.real_sqrt_q_mult,
        "pairing": {"blocks": pp.blocks, "equivariance_factor": int(pp.equivariance_factor)},
        "suspension": spec.to_dict(),
    }
