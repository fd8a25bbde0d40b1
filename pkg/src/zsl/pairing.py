"""Spectral vectors and the pairings built from them.

A test function F is represented on a zero catalog by its Mellin values at
every cataloged zero rho = center + i gamma (gamma > 0) and at the
functional-equation partner w - rho. The weight-1 antisymmetric form, the
weight-2 symmetric form and the Hermitian form are finite sums over these
coefficients, accumulated sequentially in catalog order so results are
bit-reproducible.

This module also holds the suspension of a finite-field eigenvalue spectrum
into eigenvalue cosets s0 + (2 pi i / log q) Z.
"""

from dataclasses import dataclass, field
import cmath
import math
import re

import numpy as np

from . import io
from .errors import CatalogMismatch, ConvergenceError, DomainError
from .mellin import INF, Conj, mellin, scale_action
from .quadratic import Quad
from .specfun import hardy_theta
from .zerofind import ZeroCatalog

FORMS = ("antisym", "sym", "hermitian")
TWIST = {"antisym": 1, "sym": 2}


@dataclass(frozen=True)
class SpectralVector:
    catalog: ZeroCatalog
    plus: tuple
    minus: tuple
    zero: tuple = ()
    source: object = None

    def __post_init__(self):
        n = len(self.catalog.zeros)
        if len(self.plus) != n or len(self.minus) != n:
            raise DomainError("coefficient lists must match the catalog length")
        if len(self.zero) != len(self.catalog.real_zeros):
            raise DomainError("real-zero coefficients must match the catalog")

    @property
    def weight(self):
        return self.catalog.weight

    def norm(self):
        """Euclidean norm of all stored coefficients."""
        return math.sqrt(sum(abs(c) ** 2 for c in self.plus + self.minus + self.zero))

    def conjugate_defect(self):
        """max |minus[k] - conj(plus[k])|; zero for real F on line catalogs."""
        return max((abs(m - p.conjugate()) for p, m in zip(self.plus, self.minus)), default=0.0)


@dataclass(frozen=True)
class PairingValue:
    value: complex
    twist: int
    truncation_bound: float
    flags: tuple = ()

    def __post_init__(self):
        if not self.truncation_bound >= 0:
            raise DomainError("truncation bound must be non-negative")
        if self.twist not in (1, 2):
            raise DomainError("twist must be 1 or 2")


def spectralize(F, catalog):
    """Mellin coefficients of F at the catalog's zeros and their partners."""
    w = catalog.weight
    rhos = catalog.points()
    plus = tuple(mellin(F, r) for r in rhos)
    minus = tuple(mellin(F, w - r) for r in rhos)
    zero = tuple(mellin(F, complex(r.sigma)) for r in catalog.real_zeros)
    return SpectralVector(catalog, plus, minus, zero, F)


def _same_catalog(u, v):
    if u.catalog is not v.catalog and u.catalog != v.catalog:
        raise CatalogMismatch("spectral vectors come from different zero catalogs")
    return u.catalog


def _bound_or_inf(u, v, form):
    if u.source is None or v.source is None:
        return INF
    return truncation_estimate(u.source, v.source, u.catalog, form)


def pair_antisym(u, v, bound=True):
    """sum_k m_k (u+ v- - v+ u-), the weight-1 antisymmetric pairing."""
    cat = _same_catalog(u, v)
    if cat.weight != 1:
        raise DomainError("the antisymmetric pairing needs a weight-1 catalog")
    total = 0j
    for m, up, um, vp, vm in zip(cat.mults, u.plus, u.minus, v.plus, v.minus):
        total += int(m) * (up * vm - vp * um)
    tb = _bound_or_inf(u, v, "antisym") if bound else 0.0
    return PairingValue(total, 1, tb)


def pair_sym(u, v, bound=True):
    """sum_k m_k (u+ v- + v+ u-), the weight-2 symmetric pairing.

    Real zeros break the non-degeneracy hypothesis; the sum is then taken on
    the quotient (real-zero coefficients ignored) and a flag is attached.
    """
    cat = _same_catalog(u, v)
    if cat.weight != 2:
        raise DomainError("the symmetric pairing needs a weight-2 catalog")
    total = 0j
    for m, up, um, vp, vm in zip(cat.mults, u.plus, u.minus, v.plus, v.minus):
        total += int(m) * (up * vm + vp * um)
    flags = ("hypothesis-violated: real zeros present",) if cat.real_zeros else ()
    tb = _bound_or_inf(u, v, "sym") if bound else 0.0
    return PairingValue(total, 2, tb, flags)


def hermitian_form(u, v):
    """sum_k m_k (u+ conj(v+) + conj(v-) u-).

    This two-term sum is used for every catalog. On the line it covers the
    zeros with gamma > 0 through the first term and their mirror images
    through the second, so it equals sum over all zeros of
    M(F)(rho) conj(M(G)(rho)); for real F and G that is
    2 Re sum_k m_k M(F)(rho) conj(M(G)(rho)).
    """
    cat = _same_catalog(u, v)
    total = 0j
    for m, up, um, vp, vm in zip(cat.mults, u.plus, u.minus, v.plus, v.minus):
        total += int(m) * (up * vp.conjugate() + vm.conjugate() * um)
    return total


def pair(u, v, form):
    if form == "antisym":
        return pair_antisym(u, v)
    if form == "sym":
        return pair_sym(u, v)
    if form == "hermitian":
        return PairingValue(hermitian_form(u, v), u.weight, _bound_or_inf(u, v, "hermitian"))
    raise DomainError(f"unknown form {form!r}")


def coeff_scale(u, v):
    """Reference magnitude for pairing residuals: product of coefficient norms."""
    return u.norm() * v.norm()


# Gram matrices --------------------------------------------------------------

def gram_matrix(family, form, catalog, vectors=None):
    """Matrix of pairings between every pair of functions in ``family``."""
    if not family:
        raise DomainError("empty family")
    if form not in FORMS:
        raise DomainError(f"unknown form {form!r}")
    vecs = vectors or [spectralize(F, catalog) for F in family]
    n = len(vecs)
    G = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            if form == "hermitian":
                G[i, j] = hermitian_form(vecs[i], vecs[j])
            elif form == "antisym":
                G[i, j] = pair_antisym(vecs[i], vecs[j], bound=False).value
            else:
                G[i, j] = pair_sym(vecs[i], vecs[j], bound=False).value
    return G


def jacobi_eigenvalues(A, tol=1e-14, max_sweeps=100):
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if n == 1:
        return A.diagonal().copy()
    scale = max(np.abs(A).max(), 1e-300)
    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, (A * A).sum() - (A.diagonal() ** 2).sum()))
        if off <= tol * scale:
            return np.sort(A.diagonal())
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot_p = c * A[:, p] - s * A[:, q]
                rot_q = s * A[:, p] + c * A[:, q]
                A[:, p], A[:, q] = rot_p, rot_q
                rot_p = c * A[p, :] - s * A[q, :]
                rot_q = s * A[p, :] + c * A[q, :]
                A[p, :], A[q, :] = rot_p, rot_q
    raise ConvergenceError("Jacobi iteration did not converge")


def psd_check(H):
    """(min, max) eigenvalue of a Hermitian matrix.

    H = A + iB is embedded as the real symmetric [[A, -B], [B, A]], whose
    spectrum is that of H with every eigenvalue doubled.
    """
    H = np.asarray(H, dtype=complex)
    if not np.allclose(H, H.conj().T, rtol=0, atol=1e-12 * max(1.0, np.abs(H).max())):
        raise DomainError("psd_check needs a Hermitian matrix")
    A, B = H.real, H.imag
    emb = np.block([[A, -B], [B, A]])
    emb = 0.5 * (emb + emb.T)
    ev = jacobi_eigenvalues(emb)
    return float(ev[0]), float(ev[-1])


def numeric_rank(M, threshold=1e-9):
    """Number of singular values above threshold * largest singular value."""
    sv = np.linalg.svd(np.asarray(M, dtype=complex), compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int((sv > threshold * sv[0]).sum())


# identities and checks ------------------------------------------------------

def funceq_identity_residual(u, v):
    """Residual of Tr(u * J v | H-) = Tr(v * J u | H+).

    The two traces are accumulated by independent paths: the first term
    compares forward against reversed accumulation of sum u- v+, the second
    rebuilds u- from the source through the conjugation node, using
    M(F)(w - rho) = conj(M(conj F)(rho)) on line-located catalogs.
    """
    cat = _same_catalog(u, v)
    if cat.weight != 1:
        raise DomainError("the trace identity is stated at weight 1")
    if u is v or u == v:
        return 0.0
    mults = [int(m) for m in cat.mults]
    forward = 0j
    for m, um, vp in zip(mults, u.minus, v.plus):
        forward += m * um * vp
    backward = 0j
    for m, vp, um in reversed(list(zip(mults, v.plus, u.minus))):
        backward += m * vp * um
    resid = abs(forward - backward)
    if u.source is not None:
        partner = Conj(u.source)
        rebuilt = 0j
        for m, rho, vp in zip(mults, cat.points(), v.plus):
            rebuilt += m * vp * mellin(partner, rho).conjugate()
        resid += abs(forward - rebuilt)
    return resid


def equivariance_check(F, G, lam, w, catalog, floor=1e-300):
    """Relative deviation |psi(lam F, lam G) - lam^w psi(F, G)| / |lam^w psi(F, G)|."""
    if catalog.weight != w:
        raise DomainError("weight does not match the catalog")
    fn = pair_antisym if w == 1 else pair_sym
    base = fn(spectralize(F, catalog), spectralize(G, catalog), bound=False).value
    moved = fn(spectralize(scale_action(F, lam), catalog),
               spectralize(scale_action(G, lam), catalog), bound=False).value
    expected = lam ** w * base
    if moved == expected:
        return 0.0
    return abs(moved - expected) / max(abs(expected), floor)


def zero_count_bound(catalog, t):
    """Upper bound for the number of zeros with ordinate in [t, t + 1].

    Riemann: increment of theta / pi plus 2 (the S(T) fluctuation stays
    below 1 in absolute value at the heights used here). Degree-2 families
    carrying ``N=<conductor>`` in their family tag use the smooth density
    (1/pi) log(sqrt(N) t / 2 pi) with the same margin.
    """
    if catalog.family == "riemann":
        return (hardy_theta(t + 1.0) - hardy_theta(t)) / math.pi + 2.0
    m = re.search(r"N=(\d+)", catalog.family)
    if not m:
        return INF
    cond = int(m.group(1))
    return max(0.0, math.log(math.sqrt(cond) * (t + 1.0) / (2 * math.pi)) / math.pi) + 2.0


def truncation_estimate(F, G, catalog, form="antisym", max_steps=100000):
    """A priori bound on the contribution of zeros above the catalog's t_max.

    Each zero contributes at most the product of the Mellin envelopes of F
    and G at the two evaluation points, summed over both terms of the form;
    zeros are counted per unit interval by ``zero_count_bound``.
    """
    w = catalog.weight
    sig = catalog.center
    t = catalog.t_max
    total = 0.0
    for _ in range(max_steps):
        if form == "hermitian":
            per = (F.envelope(sig, t) * G.envelope(sig, t)
                   + F.envelope(w - sig, t) * G.envelope(w - sig, t))
        else:
            per = (F.envelope(sig, t) * G.envelope(w - sig, t)
                   + G.envelope(sig, t) * F.envelope(w - sig, t))
        if per == INF or math.isnan(per):
            return INF
        term = zero_count_bound(catalog, t) * per
        total += term
        if term == 0.0 or term <= 1e-17 * total:
            return total
        t += 1.0
    return INF


# reports -------------------------------------------------------------------

def catalog_ref(catalog, path=None):
    if path:
        return str(path)
    return f"{catalog.family}:w={catalog.weight}:n={len(catalog.zeros)}:t_max={io.sig(catalog.t_max)}"


def pairing_report(form, pv, catalog, ref=None, extra_flags=()):
    return {
        "form": form,
        "weight": catalog.weight,
        "catalog_ref": ref or catalog_ref(catalog),
        "value": io.cnum(pv.value),
        "twist": pv.twist,
        "truncation_bound": io.sig(pv.truncation_bound) if pv.truncation_bound != INF else "inf",
        "flags": list(pv.flags) + list(extra_flags),
    }


def gram_csv(family, G):
    """Gram matrix as CSV: one row per function, re/im column pairs."""
    names = [F.dsl() for F in family]
    header = ["fn"]
    for name in names:
        header += [f"{name} re", f"{name} im"]
    rows = []
    for name, row in zip(names, G):
        cells = [name]
        for z in row:
            cells += [repr(io.sig(z.real)), repr(io.sig(z.imag))]
        rows.append(cells)
    return io.csv_text(header, rows)


# suspension ----------------------------------------------------------------

@dataclass(frozen=True)
class SuspendedEntry:
    s0: complex
    mult: int
    alpha: object = None  # exact Quad or complex source eigenvalue


@dataclass(frozen=True)
class SuspendedSpectrum:
    base: str  # "archimedean" or "finite"
    q: int
    entries: tuple
    period: float

    def to_dict(self):
        return {
            "base": self.base,
            "q": self.q,
            "period": io.sig(self.period),
            "entries": [{"s0": io.cnum(e.s0), "mult": e.mult,
                         "real": _is_real_exponent(e.s0)} for e in self.entries],
        }


def _is_real_exponent(s0, tol=1e-12):
    return abs(s0.imag) <= tol


def _reduce(s, period):
    if period == 0:
        return s
    im = math.fmod(s.imag, period)
    if im < 0:
        im += period
    if period - im <= 1e-12 * period:
        im = 0.0
    return complex(s.real, im)


def suspend(q, eigenvalues):
    """Map Frobenius eigenvalues alpha over F_q to exponents s0 with q^s0 = alpha,
    reduced to the strip 0 <= Im s0 < 2 pi / log q."""
    if q < 2:
        raise DomainError("q must be a prime power >= 2")
    period = 2 * math.pi / math.log(q)
    entries = []
    for alpha, mult in eigenvalues:
        z = complex(alpha)
        if z == 0:
            raise DomainError("zero eigenvalue cannot be suspended")
        if mult < 1:
            raise DomainError("multiplicities must be positive")
        s0 = cmath.log(z) / math.log(q)
        entries.append(SuspendedEntry(_reduce(s0, period), int(mult), alpha))
    return SuspendedSpectrum("finite", int(q), tuple(entries), period)


def suspend_archimedean(points):
    """Archimedean spectra need no suspension: period 0, entries unchanged."""
    return SuspendedSpectrum("archimedean", 0,
                             tuple(SuspendedEntry(complex(s), int(m)) for s, m in points), 0.0)


def base_change_suspension(S, r):
    """Re-reduce every exponent against the period of q^r."""
    if S.base != "finite":
        return S
    period = S.period / r
    entries = tuple(SuspendedEntry(_reduce(e.s0, period), e.mult,
                                   None if e.alpha is None else e.alpha ** r) for e in S.entries)
    return SuspendedSpectrum("finite", S.q ** r, entries, period)


@dataclass
class TwistVerdict:
    passed: bool
    m: int
    exact: bool
    max_deviation: float
    pair_factors: list = field(default_factory=list)


def suspension_twist_check(S, m):
    """Check the action of t = q^m on the suspended spectrum.

    The eigencomponent at s0 is multiplied by q^(m s0), which must equal
    alpha^m; pairing the components of alpha and q/alpha must scale by
    exactly q^m. With quadratic-integer eigenvalues the second check is
    exact.
    """
    if S.base != "finite":
        raise DomainError("the twist check applies to finite-base spectra")
    q = S.q
    dev = 0.0
    for e in S.entries:
        z = complex(e.alpha) if e.alpha is not None else cmath.exp(e.s0 * math.log(q))
        lhs = cmath.exp(m * e.s0 * math.log(q))
        dev = max(dev, abs(lhs - z ** m) / max(abs(z ** m), 1e-300))
    exact = all(isinstance(e.alpha, Quad) for e in S.entries)
    factors = []
    ok = dev <= 1e-10
    for e in S.entries:
        if exact:
            partner = Quad(q) / e.alpha
            f = (e.alpha ** m) * (partner ** m)
            factors.append(f)
            ok = ok and f == q ** m
        else:
            z = complex(e.alpha) if e.alpha is not None else cmath.exp(e.s0 * math.log(q))
            f = z ** m * (q / z) ** m
            factors.append(f)
            ok = ok and abs(f - q ** m) <= 1e-10 * q ** m
    return TwistVerdict(ok, m, exact, dev, factors)
