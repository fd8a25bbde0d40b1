"""Test functions on the multiplicative half-line and their Mellin transforms.

Test functions are immutable expression trees. The constructors below
(``log_gaussian``, ``apply_J``, ``scale_action``, ``conj``, ``fsum``,
``mult_convolve``, ``smoothed_image``) normalise eagerly, so structural
identities such as J_w(J_w F) = F are plain ``==`` comparisons.

Conventions, with Haar measure dx/x on (0, inf):

* M(F)(s) = int_0^inf F(x) x^s dx/x = int F(e^u) e^{su} du
* (J_w F)(x) = x^{-w} F(1/x),  M(J_w F)(s) = M(F)(w - s)
* (lambda . F)(x) = F(x / lambda),  M(lambda . F)(s) = lambda^s M(F)(s)
* (F * G)(x) = int F(y) G(x/y) dy/y,  M(F * G) = M(F) M(G)
* smoothed_image(h) = theta~ * h with theta~(x) = 2 sum_{n>=1} exp(-pi n^2 x^2),
  whose transform is completed_L_Q(s) M(h)(s).
"""

from dataclasses import dataclass
import cmath
import math

import numpy as np

from .errors import ConvergenceError, DomainError
from .specfun import completed_L_Q, log_gamma

INF = math.inf
QUAD_RTOL = 1e-12
_WINDOW_LOG = 45.0  # integrand tails below e^-45 relative are dropped
_MAX_SHIFT_EXP = 600.0


def _num(x):
    x = complex(x)
    if x.imag == 0:
        return f"{x.real:.17g}"
    return f"{x!r}".strip("()")


class TestFunction:
    """Base class for expression-tree nodes."""

    __test__ = False  # not a pytest class
    closed_form = True

    def mellin(self, s):
        raise NotImplementedError

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = self.eval_log(np.log(np.atleast_1d(x)).astype(complex))
        return out if x.ndim else complex(out[0])

    def eval_log(self, u):
        """F(e^u) for an array of (possibly complex) u."""
        raise NotImplementedError

    # quadrature geometry -------------------------------------------------
    def strip(self):
        """Open interval of Re s where the Mellin integral converges."""
        return (-INF, INF)

    def window(self, sigma):
        """u-range carrying the integrand F(e^u) e^{sigma u}."""
        raise NotImplementedError

    def step(self, t):
        raise NotImplementedError

    def saddle_a(self):
        """Effective Gaussian width parameter for the contour shift, or None
        when the integrand must stay on the real u-axis."""
        return None

    def envelope(self, sigma, gamma):
        """Upper bound for |M(F)(sigma +- i gamma)| at large gamma."""
        return INF

    @property
    def is_real(self):
        return False

    def dsl(self):
        raise NotImplementedError

    def __str__(self):
        return self.dsl()


@dataclass(frozen=True, eq=True)
class LogGaussian(TestFunction):
    """amp * exp(-a (log x - mu)^2)."""

    a: float
    mu: float = 0.0
    amp: complex = 1.0

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError("LogGaussian needs a > 0")

    def mellin(self, s):
        s = complex(s)
        return self.amp * math.sqrt(math.pi / self.a) * cmath.exp(s * self.mu + s * s / (4 * self.a))

    def eval_log(self, u):
        return self.amp * np.exp(-self.a * (u - self.mu) ** 2)

    def window(self, sigma):
        c = self.mu + sigma / (2 * self.a)
        w = math.sqrt(_WINDOW_LOG / self.a)
        return (c - w, c + w)

    def step(self, t):
        return min(0.3 / math.sqrt(self.a), math.pi / (abs(t) + 10 * math.sqrt(self.a) + 1))

    def saddle_a(self):
        return self.a

    def envelope(self, sigma, gamma):
        return abs(self.amp) * math.sqrt(math.pi / self.a) * math.exp(
            sigma * self.mu + (sigma * sigma - gamma * gamma) / (4 * self.a))

    @property
    def is_real(self):
        return complex(self.amp).imag == 0

    def dsl(self):
        text = f"loggauss:a={_num(self.a)},mu={_num(self.mu)}"
        if self.amp != 1:
            text += f",amp={_num(self.amp)}"
        return text


@dataclass(frozen=True, eq=True)
class Jw(TestFunction):
    """x^{-w} F(1/x)."""

    w: int
    child: TestFunction

    @property
    def closed_form(self):
        return self.child.closed_form

    def mellin(self, s):
        return self.child.mellin(self.w - complex(s))

    def eval_log(self, u):
        return np.exp(-self.w * u) * self.child.eval_log(-u)

    def strip(self):
        lo, hi = self.child.strip()
        return (self.w - hi, self.w - lo)

    def window(self, sigma):
        lo, hi = self.child.window(self.w - sigma)
        return (-hi, -lo)

    def step(self, t):
        return self.child.step(t)

    def saddle_a(self):
        return self.child.saddle_a()

    def envelope(self, sigma, gamma):
        return self.child.envelope(self.w - sigma, gamma)

    @property
    def is_real(self):
        return self.child.is_real

    def dsl(self):
        return f"j{self.w}({self.child.dsl()})"


@dataclass(frozen=True, eq=True)
class Scale(TestFunction):
    """F(x / lam), the action of lam in R_+^*."""

    lam: float
    child: TestFunction

    @property
    def closed_form(self):
        return self.child.closed_form

    def mellin(self, s):
        return cmath.exp(complex(s) * math.log(self.lam)) * self.child.mellin(s)

    def eval_log(self, u):
        return self.child.eval_log(u - math.log(self.lam))

    def strip(self):
        return self.child.strip()

    def window(self, sigma):
        lo, hi = self.child.window(sigma)
        shift = math.log(self.lam)
        return (lo + shift, hi + shift)

    def step(self, t):
        return self.child.step(t)

    def saddle_a(self):
        return self.child.saddle_a()

    def envelope(self, sigma, gamma):
        return self.lam ** sigma * self.child.envelope(sigma, gamma)

    @property
    def is_real(self):
        return self.child.is_real

    def dsl(self):
        return f"scale:{_num(self.lam)}({self.child.dsl()})"


@dataclass(frozen=True, eq=True)
class Conj(TestFunction):
    """Complex conjugate of F."""

    child: TestFunction

    @property
    def closed_form(self):
        return self.child.closed_form

    def mellin(self, s):
        return self.child.mellin(complex(s).conjugate()).conjugate()

    def eval_log(self, u):
        return np.conj(self.child.eval_log(np.conj(u)))

    def strip(self):
        return self.child.strip()

    def window(self, sigma):
        return self.child.window(sigma)

    def step(self, t):
        return self.child.step(t)

    def saddle_a(self):
        return self.child.saddle_a()

    def envelope(self, sigma, gamma):
        return self.child.envelope(sigma, gamma)

    @property
    def is_real(self):
        return self.child.is_real

    def dsl(self):
        return f"conj({self.child.dsl()})"


@dataclass(frozen=True, eq=True)
class Sum(TestFunction):
    children: tuple

    @property
    def closed_form(self):
        return all(c.closed_form for c in self.children)

    def mellin(self, s):
        return sum(c.mellin(s) for c in self.children)

    def eval_log(self, u):
        return sum(c.eval_log(u) for c in self.children)

    def strip(self):
        lows, highs = zip(*(c.strip() for c in self.children))
        return (max(lows), min(highs))

    def window(self, sigma):
        lows, highs = zip(*(c.window(sigma) for c in self.children))
        return (min(lows), max(highs))

    def step(self, t):
        return min(c.step(t) for c in self.children)

    def saddle_a(self):
        vals = [c.saddle_a() for c in self.children]
        # |M(child)| ~ exp(-t^2 / 4a): the largest a dominates, and its saddle
        # keeps every other child below the size of the result
        return None if None in vals else max(vals)

    def envelope(self, sigma, gamma):
        return sum(c.envelope(sigma, gamma) for c in self.children)

    @property
    def is_real(self):
        return all(c.is_real for c in self.children)

    def dsl(self):
        return "sum(" + ";".join(c.dsl() for c in self.children) + ")"


def _convolve_eval(left, right, u):
    """int left(e^{u-w}) right(e^w) dw for an array of u, by the trapezoid rule.

    The integration runs over the window of the narrower factor (swapping the
    roles if needed). When both factors admit a contour shift the inner
    contour passes through the Gaussian saddle of the pair.
    """
    u = np.asarray(u, dtype=complex)
    lo_l, hi_l = left.window(0.0)
    lo_r, hi_r = right.window(0.0)
    if hi_r - lo_r > hi_l - lo_l:
        left, right = right, left
        lo_r, hi_r = lo_l, hi_l
    a_l, a_r = left.saddle_a(), right.saddle_a()
    frac = a_l / (a_l + a_r) if a_l is not None and a_r is not None else 0.0
    h = min(left.step(0.0), right.step(0.0))
    n = max(16, int(math.ceil((hi_r - lo_r) / h)))
    w = np.linspace(lo_r, hi_r, n + 1)
    weights = np.full(n + 1, (hi_r - lo_r) / n)
    weights[[0, -1]] *= 0.5
    flat = u.reshape(-1)
    ww = w[None, :] + 1j * frac * flat.imag[:, None]
    vals = left.eval_log(flat[:, None] - ww) * right.eval_log(ww)
    return (vals @ weights).reshape(u.shape)


@dataclass(frozen=True, eq=True)
class MultConv(TestFunction):
    left: TestFunction
    right: TestFunction

    @property
    def closed_form(self):
        return self.left.closed_form and self.right.closed_form

    def mellin(self, s):
        return self.left.mellin(s) * self.right.mellin(s)

    def eval_log(self, u):
        return _convolve_eval(self.left, self.right, u)

    def strip(self):
        lo1, hi1 = self.left.strip()
        lo2, hi2 = self.right.strip()
        return (max(lo1, lo2), min(hi1, hi2))

    def window(self, sigma):
        lo1, hi1 = self.left.window(sigma)
        lo2, hi2 = self.right.window(sigma)
        return (lo1 + lo2, hi1 + hi2)

    def step(self, t):
        return min(self.left.step(t), self.right.step(t))

    def saddle_a(self):
        a, b = self.left.saddle_a(), self.right.saddle_a()
        return None if a is None or b is None else a * b / (a + b)

    def envelope(self, sigma, gamma):
        return self.left.envelope(sigma, gamma) * self.right.envelope(sigma, gamma)

    @property
    def is_real(self):
        return self.left.is_real and self.right.is_real

    def dsl(self):
        return f"conv({self.left.dsl()},{self.right.dsl()})"


def theta_series(x, n_cap=None):
    """theta~(x) = sum_{n=1}^{n_cap} 2 exp(-pi n^2 x^2).

    The default cap makes the dropped tail smaller than 1e-14.
    """
    if not x > 0:
        raise DomainError("theta_series needs x > 0")
    if n_cap is None:
        n_cap = int(math.ceil(3.5 / x)) + 1
    n = np.arange(1, n_cap + 1, dtype=float)
    return float(2.0 * np.exp(-math.pi * n * n * x * x).sum())


class _Theta(TestFunction):
    """theta~ as a tree leaf; only used inside ThetaSmoothed."""

    def mellin(self, s):
        return completed_L_Q(s)

    def eval_log(self, u):
        u = np.asarray(u, dtype=complex)
        # theta~(x) = (theta~(1/x) + 1 - x) / x keeps the sum short for |x| < 1
        flip = u.real < 0
        v = np.where(flip, -u, u)
        x2 = np.exp(2 * v)
        out = np.zeros(u.shape, dtype=complex)
        for n in range(1, 8):
            out += np.exp(-math.pi * n * n * x2)
        out *= 2.0
        x = np.exp(u[flip])
        out[flip] = (out[flip] + 1.0 - x) / x
        return out

    def strip(self):
        return (1.0, INF)

    def window(self, sigma):
        # theta~(e^v) ~ e^{-v} as v -> -inf; double-exponential decay as v -> +inf
        lo = -_WINDOW_LOG / (sigma - 1.0) if sigma > 1.0 else -200.0
        hi = 0.5 * math.log((_WINDOW_LOG + 1.0 + 3.0 * abs(sigma)) / math.pi) + 0.5
        return (max(lo, -200.0), hi)

    def step(self, t):
        return min(0.02, math.pi / (abs(t) + 20.0))

    def dsl(self):
        return "theta"


_THETA = _Theta()


@dataclass(frozen=True, eq=True)
class ThetaSmoothed(TestFunction):
    """theta~ * h: the image of h under summation over Q^*."""

    h: TestFunction

    @property
    def closed_form(self):
        return self.h.closed_form

    def mellin(self, s):
        return completed_L_Q(s) * self.h.mellin(s)

    def eval_log(self, u):
        return _convolve_eval(_THETA, self.h, u)

    def strip(self):
        lo, hi = self.h.strip()
        return (max(1.0, lo), hi)

    def window(self, sigma):
        lo1, hi1 = _THETA.window(sigma)
        lo2, hi2 = self.h.window(sigma)
        return (lo1 + lo2, hi1 + hi2)

    def step(self, t):
        return min(_THETA.step(t), self.h.step(t))

    def envelope(self, sigma, gamma):
        # |Gamma(s/2)| pi^{-sigma/2} times a crude (1 + gamma) bound on |zeta|
        g = math.exp(log_gamma(complex(sigma, gamma) / 2).real)
        return g * math.pi ** (-sigma / 2) * (1.0 + gamma) * self.h.envelope(sigma, gamma)

    @property
    def is_real(self):
        return self.h.is_real

    def dsl(self):
        return f"smooth({self.h.dsl()})"


@dataclass(frozen=True, eq=False)
class Pointwise(TestFunction):
    """A callable F(x) without closed-form Mellin data.

    ``lo``/``hi`` bound the log-support; ``envelope_fn`` is an optional
    closed-form test function dominating |M(F)| along vertical lines.
    """

    fn: object
    lo: float
    hi: float
    label: str = "pointwise"
    h: float = 0.01
    real: bool = True
    envelope_fn: object = None

    closed_form = False

    def mellin(self, s):
        return mellin_quadrature(self, s)

    def eval_log(self, u):
        u = np.asarray(u, dtype=complex)
        return np.asarray(self.fn(np.exp(u.real)), dtype=complex)

    def window(self, sigma):
        return (self.lo, self.hi)

    def step(self, t):
        return min(self.h, math.pi / (abs(t) + 10.0))

    def envelope(self, sigma, gamma):
        if self.envelope_fn is None:
            return INF
        return self.envelope_fn.envelope(sigma, gamma)

    @property
    def is_real(self):
        return self.real

    def dsl(self):
        return f"pointwise:{self.label}"


# constructors with eager normalisation -----------------------------------

def log_gaussian(a, mu=0.0, amp=1.0):
    amp = complex(amp)
    return LogGaussian(float(a), float(mu), amp.real if amp.imag == 0 else amp)


def apply_J(F, w):
    """J_w F; J_w J_w F collapses back to F."""
    if w not in (1, 2):
        raise DomainError("J_w is defined for w in {1, 2}")
    if isinstance(F, Jw) and F.w == w:
        return F.child
    return Jw(w, F)


def scale_action(F, lam):
    """lam . F with (lam . F)(x) = F(x / lam)."""
    lam = float(lam)
    if not lam > 0:
        raise DomainError("scale factor must be positive")
    if isinstance(F, Scale):
        lam, F = lam * F.lam, F.child
    return F if lam == 1.0 else Scale(lam, F)


def conj(F):
    return F.child if isinstance(F, Conj) else Conj(F)


def fsum(*terms):
    flat = []
    for t in terms:
        flat.extend(t.children if isinstance(t, Sum) else (t,))
    if not flat:
        raise DomainError("empty sum")
    return flat[0] if len(flat) == 1 else Sum(tuple(flat))


def mult_convolve(F, G):
    """F * G, stored with its two factors in canonical order."""
    lo1, hi1 = F.strip()
    lo2, hi2 = G.strip()
    if max(lo1, lo2) >= min(hi1, hi2):
        raise DomainError("convolution factors have disjoint convergence strips")
    left, right = sorted((F, G), key=lambda node: node.dsl())
    return MultConv(left, right)


def smoothed_image(h):
    if not h.closed_form:
        raise DomainError("smoothed_image needs a closed-form h")
    return ThetaSmoothed(h)


def default_family(a=100.0, mus=(-1.0, -0.5, 0.0, 0.5, 1.0)):
    """The five log-Gaussians used throughout the checks."""
    return [log_gaussian(a, mu) for mu in mus]


# Mellin transform ----------------------------------------------------------

def _trapezoid(F, s, h, lo, hi, shift, growth):
    n = max(16, int(math.ceil((hi - lo) / h)))
    u = np.linspace(lo, hi, n + 1) + 1j * shift
    # F grows like e^{growth} on the shifted contour while e^{su} decays; move
    # the factor across so neither side under- or overflows on its own
    vals = (F.eval_log(u) * math.exp(-growth)) * np.exp(s * u + growth)
    step = (hi - lo) / n
    return step * (vals.sum() - 0.5 * (vals[0] + vals[-1]))


def mellin_quadrature(F, s, rtol=QUAD_RTOL, max_halvings=6):
    """M(F)(s) = int F(e^u) e^{su} du by the trapezoid rule in log coordinates.

    For trees built from Gaussians the contour is moved to Im u = t / (2a),
    through the saddle of the integrand, which removes the oscillation
    e^{itu} and with it the cancellation at large |Im s|. The step is halved
    until two successive sums agree to ``rtol``.
    """
    s = complex(s)
    lo, hi = F.strip()
    if not lo < s.real < hi:
        raise DomainError(f"Re s = {s.real} outside the convergence strip ({lo}, {hi})")
    a = F.saddle_a()
    shift = growth = 0.0
    if a is not None:
        shift = s.imag / (2 * a)
        cap = math.sqrt(_MAX_SHIFT_EXP / a)
        shift = max(-cap, min(cap, shift))
        growth = a * shift * shift
    wlo, whi = F.window(s.real)
    h = F.step(s.imag)
    prev = _trapezoid(F, s, h, wlo, whi, shift, growth)
    for _ in range(max_halvings):
        h *= 0.5
        cur = _trapezoid(F, s, h, wlo, whi, shift, growth)
        if abs(cur - prev) <= rtol * abs(cur) or cur == prev:
            return cur
        prev = cur
    raise ConvergenceError(f"Mellin quadrature did not settle at s={s}")


def mellin(F, s):
    """M(F)(s): closed form when the tree has one, quadrature otherwise."""
    if F.closed_form:
        return complex(F.mellin(s))
    return mellin_quadrature(F, s)
