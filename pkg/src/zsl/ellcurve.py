"""L-functions of elliptic curves over Q.

Coefficients come from point counts mod p and the Hecke recursion; the
completed L-function

    Lambda(E, s) = (sqrt N / 2 pi)^s Gamma(s) L(E, s),   Lambda(s) = eps Lambda(2 - s)

is evaluated by the approximate functional equation split at y = A:

    Lambda(s) = sum_n a_n [A^s G(s, c_n A) + eps A^(s-2) G(2 - s, c_n / A)]

with c_n = 2 pi n / sqrt N and G(s, x) = x^-s Gamma(s, x). Any A > 0 gives
the same value, so comparing two splits is an honest functional-equation
test; with A = 1 alone the identity would hold by construction.
"""

from dataclasses import dataclass, field
import math
import re

import numpy as np

from . import io
from .errors import AmbiguousSign, DomainError, ParseError, PoleError
from .gf import is_prime
from .specfun import POLE_TOL, completed_L_Q, log_gamma, upper_gamma_scaled
from .zerofind import detect_real_zeros, scan_count, scan_zeros, with_real_zeros

SPLIT_ALT = 1.15  # second split point for independent evaluations
SIGN_TRIALS = (1.3 + 0j, 1.3 + 2j)
SIGN_TOL = 1e-8
MAX_AP_PRIME = 10 ** 5


def prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def weierstrass_discriminant(a):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class EllipticCurveQ:
    a: tuple
    conductor: int
    bad_ap: dict = field(default_factory=dict)
    sign_hint: int = None
    label: str = ""

    def __post_init__(self):
        if len(self.a) != 5:
            raise DomainError("need five Weierstrass coefficients")
        if weierstrass_discriminant(self.a) == 0:
            raise DomainError("singular Weierstrass model")
        if self.conductor < 1:
            raise DomainError("conductor must be positive")
        bad = set(prime_factors(self.conductor))
        if set(self.bad_ap) != bad:
            raise DomainError(f"bad_ap must list exactly the primes {sorted(bad)}")
        if any(v not in (-1, 0, 1) for v in self.bad_ap.values()):
            raise DomainError("bad-prime a_p must be -1, 0 or 1")
        if self.sign_hint not in (None, 1, -1):
            raise DomainError("sign_hint must be +-1")

    def __hash__(self):
        return hash((self.a, self.conductor, tuple(sorted(self.bad_ap.items()))))

    @property
    def name(self):
        return self.label or "ec:" + ",".join(str(c) for c in self.a) + f"@N={self.conductor}"


PRESETS = {
    "11a1": EllipticCurveQ((0, -1, 1, -10, -20), 11, {11: 1}, 1, "11a1"),
    # for a prime conductor the sign is eps = a_N, so root number -1 needs
    # a_37 = -1 (non-split reduction)
    "37a1": EllipticCurveQ((0, 0, 1, -1, 0), 37, {37: -1}, -1, "37a1"),
}


def ap_good(E, p):
    """a_p = p + 1 - #E(F_p) at a prime of good reduction."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if E.conductor % p == 0:
        raise DomainError(f"{p} is a bad prime for conductor {E.conductor}")
    return _ap_count(E, p)


def ap_reduced(E, p):
    """p + 1 - #(reduced curve)(F_p), singular point included.

    On a minimal model this is +1 for split and -1 for non-split
    multiplicative reduction and 0 for additive reduction, so it cross-checks
    the user-supplied bad a_p.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return _ap_count(E, p)


def _ap_count(E, p):
    if p > MAX_AP_PRIME:
        raise DomainError(f"p = {p} exceeds {MAX_AP_PRIME}")
    a1, a2, a3, a4, a6 = (c % p for c in E.a)
    x = np.arange(p, dtype=np.int64)
    b = (a1 * x + a3) % p
    c = (((x + a2) * x + a4) % p * x + a6) % p
    if p == 2:
        affine = 0
        for y in range(2):
            affine += int((((y * y + b * y - c) % 2) == 0).sum())
        return p - affine
    # (2y + b)^2 = 4c + b^2: each x gives 1 + chi(disc) values of y
    disc = (4 * c + b * b) % p
    square = np.zeros(p, dtype=bool)
    square[(x * x) % p] = True
    chi = np.where(disc == 0, 0, np.where(square[disc], 1, -1))
    return -int(chi.sum())


@dataclass(frozen=True)
class DirichletCoefficients:
    n_max: int
    a: tuple  # a[0] is a_1

    def __getitem__(self, n):
        return self.a[n - 1]

    def array(self):
        return np.array(self.a, dtype=float)


def _smallest_prime_factor(n):
    spf = np.zeros(n + 1, dtype=np.int64)
    for i in range(2, n + 1):
        if spf[i] == 0:
            spf[i:: i][spf[i:: i] == 0] = i
    return spf


def hecke_coefficients(E, n_max, ap_override=None):
    """a_1..a_{n_max} from a_p by the Hecke recursion and multiplicativity.

    ``ap_override`` replaces individual a_p (used to build deliberately
    inconsistent coefficient sets).
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    if n_max > 10 ** 6:
        raise DomainError("n_max capped at 10^6")
    spf = _smallest_prime_factor(n_max)
    ap = {}
    for p in range(2, n_max + 1):
        if spf[p] == p:
            if ap_override and p in ap_override:
                ap[p] = int(ap_override[p])
            elif E.conductor % p == 0:
                ap[p] = E.bad_ap[p]
            else:
                ap[p] = ap_good(E, p)
    a = [0] * (n_max + 1)
    a[1] = 1
    for n in range(2, n_max + 1):
        p = int(spf[n])
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        if m > 1:
            a[n] = a[p ** k] * a[m]
        elif k == 1:
            a[n] = ap[p]
        elif E.conductor % p == 0:
            a[n] = ap[p] * a[n // p]
        else:
            a[n] = ap[p] * a[n // p] - p * a[n // (p * p)]
    return DirichletCoefficients(n_max, tuple(a[1:]))


def n_terms_for(conductor, t):
    return int(math.ceil(10 * math.sqrt(conductor) * (1 + abs(t) / (2 * math.pi)))) + 10


class ModularL:
    """Completed weight-2 L-function from a coefficient list, a conductor and
    a sign. Coefficients are extended on demand for large |Im s|."""

    weight = 2
    center = 1.0
    certifiable = False

    def __init__(self, conductor, coeff_fn, epsilon=None, label="custom"):
        self.conductor = int(conductor)
        self._coeff_fn = coeff_fn
        self._coeffs = None
        self.epsilon = epsilon
        self.label = label

    @property
    def family(self):
        return f"elliptic:{self.label}:N={self.conductor}"

    def coefficients(self, n):
        if self._coeffs is None or self._coeffs.n_max < n:
            self._coeffs = self._coeff_fn(max(n, 64))
        return self._coeffs

    def _terms(self, s, A, eps):
        s = complex(s)
        n = n_terms_for(self.conductor, s.imag)
        a = self.coefficients(n).array()[:n]
        c = 2 * math.pi * np.arange(1, n + 1) / math.sqrt(self.conductor)
        keep = a != 0
        a, c = a[keep], c[keep]
        head = A ** s * upper_gamma_scaled(s, c * A)
        tail = A ** (s - 2) * upper_gamma_scaled(2 - s, c / A)
        return (a * head).sum() + eps * (a * tail).sum()

    def value(self, s, A=1.0, epsilon=None):
        """Lambda(E, s); ``A`` picks the split point of the approximate
        functional equation."""
        eps = self.epsilon if epsilon is None else epsilon
        if eps is None:
            raise DomainError("root number unknown; call root_number first")
        return complex(self._terms(s, A, eps))

    def line_function(self, t):
        """Lambda(1 + it) rotated to a real value (times i when eps = -1)."""
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        rot = 1.0 if self.epsilon == 1 else 1j
        out = np.array([(rot * self.value(1.0 + 1j * x)).real for x in ts])
        return out if np.ndim(t) else float(out[0])

    def real_function(self, sigma):
        sig = np.atleast_1d(np.asarray(sigma, dtype=float))
        out = np.array([self.value(complex(x)).real for x in sig])
        return out if np.ndim(sigma) else float(out[0])

    @property
    def forced_real_zeros(self):
        return (1.0,) if self.epsilon == -1 else ()

    def L_value(self, s):
        """The Dirichlet series value L(E, s) recovered from Lambda."""
        s = complex(s)
        lam = self.value(s)
        g = log_gamma(s)
        return lam * np.exp(-g) * (2 * math.pi / math.sqrt(self.conductor)) ** s


def elliptic_L(E, epsilon=None, ap_override=None):
    """ModularL handle for a curve; the sign is found by ``root_number``
    unless given."""
    L = ModularL(E.conductor, lambda n: hecke_coefficients(E, n, ap_override), None,
                 E.label or E.name)
    L.epsilon = root_number(L) if epsilon is None else epsilon
    return L


def root_number(L, trials=SIGN_TRIALS, tol=SIGN_TOL):
    """The sign eps with Lambda(s) = eps Lambda(2 - s).

    For each candidate the left side uses split A = 1 and the right side
    A = 1.15; only the true sign makes the two agree.
    """
    scores = {}
    for eps in (1, -1):
        worst = 0.0
        for s0 in trials:
            lhs = L.value(s0, 1.0, eps)
            rhs = eps * L.value(2 - s0, SPLIT_ALT, eps)
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
        scores[eps] = worst
    best = min(scores, key=scores.get)
    if scores[best] > tol:
        raise AmbiguousSign(f"functional-equation residuals {scores} both exceed {tol}")
    return best


def functional_equation_residual(L, s):
    """|Lambda(s) - eps Lambda(2 - s)| / max(1, |Lambda(s)|) with the two
    sides evaluated at different split points."""
    lhs = L.value(s, 1.0)
    rhs = L.epsilon * L.value(2 - complex(s), SPLIT_ALT)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


# motive factorisation ---------------------------------------------------------

@dataclass(frozen=True)
class Factor:
    motive: str
    twist: object
    expression: str
    catalog: str


MOTIVE_TABLE = (
    Factor("C", 0, "2pi/s", ""),
    Factor("H1(Z)", 0, "L_Z(s)", "riemann"),
    Factor("C(1)", 1, "2pi/(1-s)", ""),
    Factor("H2_p(E)", None, "1/Lambda(E,s)", "elliptic"),
    Factor("C(1)", 1, "2pi/(s-1)", ""),
    Factor("H1(Z)(1)", 1, "L_Z(s-1)", "riemann shifted by 1"),
    Factor("C(2)", 2, "2pi/(2-s)", ""),
)


def motive_factors(E=None):
    """The seven motive pieces with their twists, analytic factors and catalogs."""
    return list(MOTIVE_TABLE)


@dataclass
class LambdaTotal:
    value: complex
    factors: list  # (Factor, value) pairs in display order


def lambda_total(L, s, A=1.0):
    """Product of the seven factors; the central one uses the completed Lambda."""
    s = complex(s)
    for pole in (0.0, 1.0, 2.0):
        if abs(s - pole) <= POLE_TOL:
            raise PoleError(f"lambda_total has a pole at s = {pole:g}")
    lam = L.value(s, A)
    if lam == 0:
        raise PoleError("central factor 1/Lambda(E, s) is infinite here")
    two_pi = 2 * math.pi
    vals = [two_pi / s, completed_L_Q(s), two_pi / (1 - s), 1 / lam,
            two_pi / (s - 1), completed_L_Q(s - 1), two_pi / (2 - s)]
    total = 1 + 0j
    for v in vals:
        total *= v
    return LambdaTotal(total, list(zip(MOTIVE_TABLE, vals)))


def lambda_total_residual(L, s):
    """|T(s) - eps T(2 - s)| / |T(s)| with T = lambda_total, each side on its
    own split point."""
    left = lambda_total(L, s, 1.0).value
    right = lambda_total(L, 2 - complex(s), SPLIT_ALT).value
    return abs(left - L.epsilon * right) / abs(left)


# the real-axis hypothesis --------------------------------------------------------

@dataclass
class HypothesisVerdict:
    satisfied: bool
    real_zeros: list


def theorem3_hypothesis(L, interval=(0.2, 1.8), step=0.01):
    """Does Lambda avoid zeros on the real segment?"""
    zeros = detect_real_zeros(L, interval, step)
    return HypothesisVerdict(not zeros, zeros)


def elliptic_zero_catalog(L, t_max=None, count=None, step=0.01, real_interval=(0.2, 1.8)):
    """Critical-line zeros up to ``t_max`` (or the first ``count``) plus the
    real zeros on ``real_interval``. Elliptic catalogs are never certified."""
    if (t_max is None) == (count is None):
        raise DomainError("give exactly one of t_max and count")
    cat = scan_zeros(L, t_max, step) if count is None else scan_count(L, count, step)
    return with_real_zeros(cat, L, real_interval, step)


# descriptors ---------------------------------------------------------------

_EC = re.compile(r"^ec:(-?\d+),(-?\d+),(-?\d+),(-?\d+),(-?\d+)@N=(\d+)((?:;.*)?)$")


def parse_ec(text):
    """``ec:a1,a2,a3,a4,a6@N=<N>[;ap:<p>=<v>...]`` or a preset name."""
    src = "".join(text.split())
    if src in PRESETS:
        return PRESETS[src]
    m = _EC.match(src)
    if not m:
        head = src.split("@")[0] if "@" in src else src
        raise ParseError(f"cannot parse elliptic curve {src!r}", head)
    a = tuple(int(m.group(i)) for i in range(1, 6))
    N = int(m.group(6))
    bad = {}
    for chunk in filter(None, m.group(7).split(";")):
        body = chunk[3:] if chunk.startswith("ap:") else chunk
        for item in body.split(","):
            p, eq, v = item.partition("=")
            try:
                bad[int(p)] = int(v)
            except ValueError:
                raise ParseError(f"bad a_p entry {item!r}", item) from None
            if not eq:
                raise ParseError(f"bad a_p entry {item!r}", item)
    for p in prime_factors(N):
        if p not in bad:
            raise ParseError(f"missing a_p for bad prime {p}", f"ap:{p}")
    extra = [p for p in bad if N % p]
    if extra:
        raise ParseError(f"a_p given for good prime {extra[0]}", f"ap:{extra[0]}")
    try:
        return EllipticCurveQ(a, N, bad)
    except DomainError as exc:
        raise ParseError(str(exc), src) from None


def ec_report(E, L, catalog=None, sample_points=None):
    """JSON-ready summary: sign, residuals, L(E,1), hypothesis, motive table."""
    pts = sample_points or [complex(0.7, 1.5)]
    verdict = theorem3_hypothesis(L)
    report = {
        "curve": E.name,
        "conductor": E.conductor,
        "root_number": L.epsilon,
        "bad_ap": {str(p): v for p, v in sorted(E.bad_ap.items())},
        "bad_ap_from_reduction": {str(p): ap_reduced(E, p) for p in sorted(E.bad_ap)},
        "L_at_1": io.cnum(L.L_value(1.0)),
        "functional_equation_residual": io.sig(max(functional_equation_residual(L, s) for s in pts)),
        "theorem3_hypothesis": {
            "satisfied": verdict.satisfied,
            "real_zeros": [{"sigma": z.sigma, "note": z.note} for z in verdict.real_zeros],
        },
        "motive_factors": [{"motive": f.motive, "twist": f.twist, "factor": f.expression,
                            "catalog": f.catalog} for f in MOTIVE_TABLE],
    }
    try:
        tot = lambda_total(L, pts[0])
        report["lambda_total"] = {
            "s": io.cnum(pts[0]),
            "value": io.cnum(tot.value),
            "factors": [{"factor": f.expression, "value": io.cnum(v)} for f, v in tot.factors],
            "symmetry_residual": io.sig(lambda_total_residual(L, pts[0])),
        }
    except PoleError as exc:
        report["lambda_total"] = {"error": str(exc)}
    if catalog is not None:
        report["zeros"] = catalog.to_dict()
    return report
