"""Locate critical-line and real zeros of completed L-functions.

A completed L-function is passed around as a small handle object exposing

* ``family``, ``weight`` and ``center`` (= weight / 2),
* ``value(s)``: the completed L-value,
* ``line_function(t)``: a real-valued rotation of ``value(center + i t)``
  (vectorised over ``t``) whose sign changes are the zeros,
* ``real_function(sigma)``: a real-valued restriction to the real axis,
* ``forced_real_zeros``: real points where a zero is forced by parity,
* ``certifiable``: whether a zero-counting certificate is available.

``RiemannL`` is the handle for the completed Riemann zeta; elliptic curves
provide theirs in :mod:`zsl.ellcurve`.
"""

from dataclasses import dataclass, field
import json
import math

import numpy as np

from . import io
from .errors import ConvergenceError, DomainError, ScanError
from .specfun import completed_L_Q, hardy_theta, hardy_Z

DEFAULT_STEP = 0.01
MAX_STEP = 0.05
REFINE_TOL = 1e-9
MAX_REFINE = 200


class RiemannL:
    family = "riemann"
    weight = 1
    center = 0.5
    certifiable = True
    forced_real_zeros = ()

    def value(self, s):
        return completed_L_Q(s)

    def line_function(self, t):
        return hardy_Z(t)

    def real_function(self, sigma):
        # xi(sigma) = sigma (sigma - 1) / 2 * completed zeta is entire
        sig = np.atleast_1d(np.asarray(sigma, dtype=float))
        out = np.full(sig.shape, 0.5)
        ok = (sig != 0.0) & (sig != 1.0)
        out[ok] = (0.5 * sig[ok] * (sig[ok] - 1.0) * completed_L_Q(sig[ok].astype(complex))).real
        return out if np.ndim(sigma) else float(out[0])


@dataclass(frozen=True)
class Zero:
    gamma: float
    mult: int = 1


@dataclass(frozen=True)
class RealZero:
    sigma: float
    mult: int = 1
    note: str = ""


@dataclass(frozen=True)
class ZeroCatalog:
    family: str
    weight: int
    zeros: tuple = ()
    real_zeros: tuple = ()
    t_max: float = 0.0
    tolerance: float = 1e-8
    certified: bool = False

    def __post_init__(self):
        gammas = [z.gamma for z in self.zeros]
        if any(g <= 0 or g > self.t_max for g in gammas):
            raise DomainError("zero ordinates must lie in (0, t_max]")
        if any(b <= a for a, b in zip(gammas, gammas[1:])):
            raise DomainError("zero ordinates must be strictly increasing")

    @property
    def center(self):
        return self.weight / 2

    @property
    def gammas(self):
        return np.array([z.gamma for z in self.zeros], dtype=float)

    @property
    def mults(self):
        return np.array([z.mult for z in self.zeros], dtype=int)

    def points(self):
        """The zeros rho = center + i gamma with gamma > 0."""
        return self.center + 1j * self.gammas

    def truncated(self, count):
        """First ``count`` zeros, with t_max moved halfway to the next one."""
        if count >= len(self.zeros):
            return self
        t_max = io.sig(0.5 * (self.zeros[count - 1].gamma + self.zeros[count].gamma))
        return ZeroCatalog(self.family, self.weight, self.zeros[:count], self.real_zeros,
                           t_max, self.tolerance, self.certified)

    def to_dict(self):
        return {
            "family": self.family,
            "weight": self.weight,
            "center": self.center,
            "t_max": io.sig(self.t_max),
            "tolerance": self.tolerance,
            "zeros": [{"gamma": io.sig(z.gamma), "mult": z.mult} for z in self.zeros],
            "real_zeros": [{"sigma": io.sig(r.sigma), "mult": r.mult} for r in self.real_zeros],
            "certified": self.certified,
        }

    def to_json(self):
        return io.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        return cls(
            family=data["family"],
            weight=int(data["weight"]),
            zeros=tuple(Zero(float(z["gamma"]), int(z["mult"])) for z in data["zeros"]),
            real_zeros=tuple(RealZero(float(r["sigma"]), int(r["mult"])) for r in data["real_zeros"]),
            t_max=float(data["t_max"]),
            tolerance=float(data["tolerance"]),
            certified=bool(data["certified"]),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())


@dataclass
class Refinement:
    root: float
    widths: list = field(default_factory=list)
    secant: bool = False


def refine_root(f, a, b, fa=None, fb=None, tol=REFINE_TOL, max_iter=MAX_REFINE):
    """Bisect a sign-change bracket [a, b] down to width ``tol``, then take one
    secant step inside the final bracket.

    ``widths`` records the bracket width after each bisection step.
    """
    fa = f(a) if fa is None else fa
    fb = f(b) if fb is None else fb
    if fa == 0:
        return Refinement(a)
    if fb == 0:
        return Refinement(b)
    if np.sign(fa) == np.sign(fb):
        raise DomainError(f"no sign change on [{a}, {b}]")
    widths = []
    for _ in range(max_iter):
        if b - a <= tol:
            break
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0:
            widths.append(0.0)
            return Refinement(m, widths)
        if np.sign(fm) == np.sign(fa):
            a, fa = m, fm
        else:
            b, fb = m, fm
        widths.append(b - a)
    else:
        raise ConvergenceError(f"bracket refinement did not converge near t={a}")
    root = b - fb * (b - a) / (fb - fa)
    if a <= root <= b:
        return Refinement(root, widths, secant=True)
    return Refinement(0.5 * (a + b), widths)


def _grid(lo, hi, step):
    n = int(math.ceil((hi - lo) / step - 1e-9))
    pts = lo + step * np.arange(1, n + 1)
    pts[-1] = hi
    return pts


def _sign_brackets(ts, vals):
    signs = np.sign(vals)
    exact = [i for i in range(len(ts)) if signs[i] == 0]
    changes = [i for i in range(len(ts) - 1) if signs[i] * signs[i + 1] < 0]
    return exact, changes


def scan_zeros(L, t_max, step=DEFAULT_STEP, tolerance=1e-8, chunk=2000):
    """Catalog the zeros of ``L`` on its center line with 0 < gamma <= t_max."""
    if step > MAX_STEP:
        raise DomainError(f"scan step {step} exceeds {MAX_STEP}")
    t_max = io.sig(t_max)
    if t_max <= step:
        return ZeroCatalog(L.family, L.weight, (), (), t_max, tolerance, False)
    ts = _grid(0.0, t_max, step)
    vals = np.concatenate([np.asarray(L.line_function(ts[i:i + chunk]), dtype=float)
                           for i in range(0, len(ts), chunk)])
    exact, changes = _sign_brackets(ts, vals)
    for i, j in zip(changes, changes[1:]):
        if j == i + 1:
            raise ScanError(f"overlapping brackets near t={ts[j]:.6g}; reduce the step")
    f = lambda t: float(L.line_function(t))
    roots = [float(ts[i]) for i in exact]
    for i in changes:
        roots.append(refine_root(f, float(ts[i]), float(ts[i + 1]), vals[i], vals[i + 1]).root)
    gammas = sorted(io.sig(g) for g in roots)
    zeros = tuple(Zero(g, 1) for g in gammas)
    for z in zeros:
        resid = abs(L.value(L.center + 1j * z.gamma))
        if resid > tolerance:
            raise ScanError(f"zero at t={z.gamma} re-evaluates to |L| = {resid:.3g}")
    catalog = ZeroCatalog(L.family, L.weight, zeros, (), t_max, tolerance, False)
    if getattr(L, "certifiable", False):
        cert = completeness_check(catalog)
        catalog = ZeroCatalog(L.family, L.weight, zeros, (), t_max, tolerance, cert.passed)
    return catalog


def scan_count(L, count, step=DEFAULT_STEP, tolerance=1e-8):
    """Catalog of the first ``count`` zeros; t_max is placed between zero
    ``count`` and zero ``count + 1``."""
    if L.family == "riemann":
        t_max = _riemann_height_for(count + 2)
    else:
        t_max = 10.0
    while True:
        cat = scan_zeros(L, t_max, step, tolerance)
        if len(cat.zeros) > count:
            break
        t_max *= 1.25
    cut = cat.truncated(count)
    if getattr(L, "certifiable", False):
        cut = ZeroCatalog(cut.family, cut.weight, cut.zeros, cut.real_zeros, cut.t_max,
                          cut.tolerance, completeness_check(cut).passed)
    return cut


def _riemann_height_for(n):
    hi = 20.0
    while hardy_theta(hi) / math.pi + 1 < n:
        hi *= 1.5
    return hi


def gram_point(n):
    """Solve theta(g) = n pi for n >= -1 (theta is increasing past t = 6.29)."""
    lo, hi = 6.29, 20.0
    while hardy_theta(hi) < n * math.pi:
        hi *= 2
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if hardy_theta(mid) < n * math.pi:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass
class Certificate:
    passed: bool
    t_max: float
    found: int
    expected: float
    slack: float
    flagged: list = field(default_factory=list)


def completeness_check(catalog):
    """Compare the catalog against the smooth zero count theta(T)/pi + 1.

    Besides the global slack at T = t_max, the running count is compared at
    every Gram point g_n (theta(g_n) = n pi) below T; a deficit or surplus of
    at least one zero persisting over two consecutive Gram points flags the
    Gram interval where it started.
    """
    if catalog.family != "riemann":
        raise DomainError("completeness_check needs a riemann catalog")
    T = catalog.t_max
    gammas = catalog.gammas
    found = int(catalog.mults.sum())
    expected = hardy_theta(T) / math.pi + 1
    slack = abs(found - expected)
    flagged = []
    pts = []
    if T > 6.29:
        n = -1
        while True:
            g = gram_point(n)
            if g > T:
                break
            pts.append((n, g))
            n += 1
    devs = [int(catalog.mults[gammas < g].sum()) - (n + 1) for n, g in pts]
    for k in range(len(devs) - 1):
        started = k == 0 or devs[k - 1] == 0
        if devs[k] != 0 and started and np.sign(devs[k]) == np.sign(devs[k + 1]):
            lo = pts[k - 1][1] if k else 0.0
            flagged.append((lo, pts[k][1], "missing zero" if devs[k] < 0 else "extra zero"))
    passed = slack <= 1 and not flagged
    return Certificate(passed, T, found, expected, slack, flagged)


def detect_real_zeros(L, interval, step=DEFAULT_STEP):
    """Real zeros of ``L`` on [a, b] from sign changes of its real restriction.

    Parity-forced zeros (``L.forced_real_zeros``) inside the interval are
    always reported, with the note that only odd order is known.
    """
    a, b = interval
    ts = np.concatenate([[a], _grid(a, b, step)])
    vals = np.asarray(L.real_function(ts), dtype=float)
    exact, changes = _sign_brackets(ts, vals)
    f = lambda x: float(L.real_function(x))
    found = [float(ts[i]) for i in exact]
    for i in changes:
        found.append(refine_root(f, float(ts[i]), float(ts[i + 1]), vals[i], vals[i + 1]).root)
    out = []
    for sigma in getattr(L, "forced_real_zeros", ()):
        if a <= sigma <= b:
            found = [x for x in found if abs(x - sigma) > 2 * step]
            out.append(RealZero(float(sigma), 1, "order >= 1, parity odd"))
    out.extend(RealZero(io.sig(x), 1) for x in found)
    return sorted(out, key=lambda r: r.sigma)


def with_real_zeros(catalog, L, interval, step=DEFAULT_STEP):
    """Copy of ``catalog`` with the real zeros of L on ``interval`` attached."""
    real = tuple(detect_real_zeros(L, interval, step))
    return ZeroCatalog(catalog.family, catalog.weight, catalog.zeros, real, catalog.t_max,
                       catalog.tolerance, catalog.certified)
