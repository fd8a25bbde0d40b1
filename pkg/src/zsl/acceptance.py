"""End-to-end acceptance checks, numbered 1 to 10.

Each check returns a :class:`Criterion` and never raises on a numerical
miss: a failure is reported with the measured quantities so the verdict can
be read straight off the one-line summary. ``run_all`` is shared by the
``verify`` subcommand and the acceptance test module.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import cmath
import math
import time

import numpy as np

from . import ellcurve, ffield
from .ellcurve import PRESETS, SPLIT_ALT, elliptic_L, functional_equation_residual
from .errors import ZSLError
from .mellin import apply_J, default_family, log_gaussian, mellin_quadrature, smoothed_image
from .pairing import (coeff_scale, equivariance_check, funceq_identity_residual, gram_matrix,
                      hermitian_form, numeric_rank, pair_antisym, pair_sym, psd_check,
                      spectralize, suspend, suspension_twist_check, truncation_estimate)
from .quadratic import Quad
from .zerofind import RiemannL, completeness_check, scan_count, scan_zeros

# Lower bound for the smallest eigenvalue of the Hermitian Gram matrix of the
# default family on the first 100 zeros. Direct summation in 30-digit
# arithmetic over independently computed zeros gives 2.6753813e-3; the
# threshold sits at half of that.
HERMITIAN_MIN_EIG_FLOOR = 1.3e-3
SEED = 20240611


@dataclass
class Criterion:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        info = ", ".join(f"{k}={_fmt(v)}" for k, v in self.details.items())
        return f"{mark} criterion {self.number}: {self.title} [{info}] ({self.seconds:.1f}s)"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.3g}"
    return str(v)


# shared fixtures -------------------------------------------------------------

@lru_cache(maxsize=None)
def riemann_catalog(count=100):
    return scan_count(RiemannL(), count)


@lru_cache(maxsize=None)
def elliptic_setup(label):
    return elliptic_L(PRESETS[label])


@lru_cache(maxsize=None)
def elliptic_catalog(label="11a1", t_max=20.0):
    return ellcurve.elliptic_zero_catalog(elliptic_setup(label), t_max=t_max)


# independent zeta oracle: Borwein's accelerated alternating series ------------

def _borwein_zeta(s, n=60):
    """zeta(s) from the eta function with Borwein's weights d_k."""
    d = []
    acc = 0.0
    for i in range(n + 1):
        acc += n * math.factorial(n + i - 1) * 4 ** i / (math.factorial(n - i) * math.factorial(2 * i))
        d.append(acc)
    total = 0j
    for k in range(n):
        total += (-1) ** k * (d[k] - d[n]) * cmath.exp(-s * math.log(k + 1))
    return -total / (d[n] * (1 - cmath.exp((1 - s) * math.log(2))))


def _oracle_Z(t):
    # any smooth approximation of theta leaves the zeros of Re(e^{i theta} zeta) in place
    theta = t / 2 * math.log(t / (2 * math.pi)) - t / 2 - math.pi / 8 + 1 / (48 * t)
    return (cmath.exp(1j * theta) * _borwein_zeta(0.5 + 1j * t)).real


def oracle_first_zero(lo=10.0, hi=20.0, step=0.05):
    t, f = lo, _oracle_Z(lo)
    while t < hi:
        t2 = t + step
        f2 = _oracle_Z(t2)
        if f * f2 < 0:
            a, b, fa = t, t2, f
            while b - a > 1e-11:
                m = 0.5 * (a + b)
                fm = _oracle_Z(m)
                if fa * fm <= 0:
                    b = m
                else:
                    a, fa = m, fm
            return 0.5 * (a + b)
        t, f = t2, f2
    return None


# criteria ----------------------------------------------------------------------

def criterion_1():
    cat = scan_zeros(RiemannL(), 100.0)
    cert = completeness_check(cat)
    ref = oracle_first_zero()
    first = cat.zeros[0].gamma if cat.zeros else float("nan")
    dev = abs(first - ref)
    ok = len(cat.zeros) == 29 and dev <= 1e-6 and cert.slack <= 1 and cert.passed
    return ok, {"count": len(cat.zeros), "first": f"{first:.10f}", "oracle_dev": dev, "slack": cert.slack}


def mellin_grid(n=100, seed=SEED):
    """(F, s) pairs: a in [1, 200], mu in [-1, 1], Re s in [-1, 2] and
    |Im s| up to min(250, 40 sqrt a), beyond which |M(F)(s)| < e^-400."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        a = float(rng.uniform(1, 200))
        mu = float(rng.uniform(-1, 1))
        tmax = min(250.0, 40 * math.sqrt(a))
        s = complex(rng.uniform(-1, 2), rng.uniform(-tmax, tmax))
        out.append((log_gaussian(a, mu), s))
    return out


def criterion_2():
    worst_quad = 0.0
    for F, s in mellin_grid():
        exact = F.mellin(s)
        worst_quad = max(worst_quad, abs(mellin_quadrature(F, s) - exact) / abs(exact))
    rng = np.random.default_rng(SEED + 1)
    worst_j = 0.0
    for k in range(50):
        F = log_gaussian(rng.uniform(1, 200), rng.uniform(-1, 1), complex(rng.normal(), rng.normal()))
        w = 1 + k % 2
        tmax = min(50.0, 20 * math.sqrt(F.a))
        s = complex(rng.uniform(-1, 3), rng.uniform(-tmax, tmax))
        target = F.mellin(w - s)
        got = mellin_quadrature(apply_J(F, w), s)
        worst_j = max(worst_j, abs(got - target) / max(1.0, abs(target)))
    ok = worst_quad <= 1e-10 and worst_j <= 1e-10
    return ok, {"quad_vs_closed": worst_quad, "J_identity": worst_j}


def criterion_3():
    cat = riemann_catalog()
    fam = default_family()
    vecs = [spectralize(F, cat) for F in fam]
    antisym_exact = all(
        pair_antisym(u, v, bound=False).value == -pair_antisym(v, u, bound=False).value
        and pair_antisym(u, u, bound=False).value == 0
        for u in vecs for v in vecs)
    worst_eq = max(equivariance_check(F, G, lam, 1, cat)
                   for lam in (1 / 3, 2.0, math.e) for F in fam for G in fam if F != G)
    cplx = [log_gaussian(100, 0.25, 1 + 2j), log_gaussian(100, -0.4, 0.5 - 1j)]
    cvecs = [spectralize(F, cat) for F in cplx]
    pairs = [(u, v) for u in vecs for v in vecs if u is not v] + [(cvecs[0], cvecs[1]), (cvecs[1], vecs[2])]
    worst_fe = max(funceq_identity_residual(u, v) / coeff_scale(u, v) for u, v in pairs)
    ok = antisym_exact and worst_eq <= 1e-9 and worst_fe <= 1e-10
    return ok, {"antisym_exact": antisym_exact, "equivariance": worst_eq, "trace_identity": worst_fe}


def criterion_4():
    cat = riemann_catalog()
    fam = default_family()
    vecs = [spectralize(F, cat) for F in fam]
    worst = 0.0
    for h, hv in zip(fam, vecs):
        sv = spectralize(smoothed_image(h), cat)
        for v in vecs:
            worst = max(worst, abs(pair_antisym(sv, v, bound=False).value) / coeff_scale(hv, v))
    return worst <= 1e-8, {"pairs": 25, "kernel_residual": worst}


def _direct_gram(fam, cat):
    """Hermitian Gram by explicit summation over zeros and their mirrors."""
    G = np.zeros((len(fam), len(fam)), dtype=complex)
    rhos = [cat.center + 1j * g for g in cat.gammas] + [cat.center - 1j * g for g in cat.gammas]
    for i, F in enumerate(fam):
        for j, H in enumerate(fam):
            G[i, j] = sum(F.mellin(r) * H.mellin(r).conjugate() for r in rhos)
    return G


def criterion_5():
    cat = riemann_catalog()
    fam = default_family()
    H = gram_matrix(fam, "hermitian", cat)
    lo, hi = psd_check(H)
    oracle = float(np.linalg.eigvalsh(_direct_gram(fam, cat))[0])
    fam10 = fam + [apply_J(F, 1) for F in fam]
    A = gram_matrix(fam10, "antisym", cat)
    rank = numeric_rank(A, 1e-9)
    ok = lo > HERMITIAN_MIN_EIG_FLOOR and abs(lo - oracle) <= 1e-12 * hi and rank == 10
    return ok, {"min_eig": lo, "floor": HERMITIAN_MIN_EIG_FLOOR, "oracle_min_eig": oracle, "rank": rank}


def criterion_6():
    cat100 = riemann_catalog()
    cat50 = cat100.truncated(50)
    fam = default_family()
    v100 = [spectralize(F, cat100) for F in fam]
    v50 = [spectralize(F, cat50) for F in fam]
    worst_change = worst_bound = 0.0
    bound_covers = True
    for i in range(len(fam)):
        for j in range(len(fam)):
            checks = [("hermitian", hermitian_form(v100[i], v100[j]), hermitian_form(v50[i], v50[j]))]
            if i != j:
                checks.append(("antisym", pair_antisym(v100[i], v100[j], bound=False).value,
                               pair_antisym(v50[i], v50[j], bound=False).value))
            for form, full, short in checks:
                bound = truncation_estimate(fam[i], fam[j], cat50, form)
                change = abs(full - short)
                worst_change = max(worst_change, change / abs(full))
                worst_bound = max(worst_bound, bound / abs(short))
                bound_covers &= change <= bound
    ok = worst_change <= 1e-12 and worst_bound <= 1e-12 and bound_covers
    return ok, {"max_change": worst_change, "max_bound": worst_bound, "bound_covers": bound_covers}


def criterion_7():
    base = ffield.CurveOverFq(2, (0, 0, 1, 0, 0))
    P, S, pp = ffield.analyze(base)
    twist = ffield.find_twist(4, 1)
    Pt, St, ppt = ffield.analyze(twist)
    direct4 = ffield.CurveOverFq(4, (0, 0, 1, 0, 0))
    P4 = ffield.zeta_numerator([ffield.count_points(direct4)], 1, 4)
    bc = ffield.base_change(P, 2)
    checks = {
        "P_base": P.coeffs == (1, 0, 2),
        "P_twist": Pt.coeffs == (1, -4, 4),
        "real_sqrt_q_mult": St.real_sqrt_q_mult == 2,
        "antisym": pp.is_antisymmetric() and ppt.is_antisymmetric(),
        "det": pp.determinant() != 0 and ppt.determinant() != 0,
        "equivariance": pp.exact and pp.equivariance_ok() and pp.equivariance_factor == 2
                        and ppt.exact and ppt.equivariance_ok() and ppt.equivariance_factor == 4,
        "base_change": bc.coeffs == P4.coeffs == (1, 4, 4),
        "exact_weil": all(e.alpha * e.alpha.conjugate() == 2 for e in S.eigenvalues),
    }
    return all(checks.values()), {k: v for k, v in checks.items()}


def criterion_8():
    q = 4
    neg = suspend(q, [(Quad(-2), 1)]).entries[0]
    pos = suspend(q, [(Quad(2), 1)]).entries[0]
    target = complex(0.5, math.pi / math.log(4))
    neg_ok = abs(neg.s0 - target) <= 1e-14 and abs(neg.s0.imag) > 0.1
    pos_ok = abs(pos.s0 - 0.5) <= 1e-14
    spectra = [suspend(2, [(Quad(0, 1, -2), 1), (Quad(0, -1, -2), 1)]),
               suspend(4, [(Quad(2), 2)]), suspend(4, [(Quad(-2), 2)])]
    twist_ok = all(v.passed and v.exact and all(f == S.q ** m for f in v.pair_factors)
                   for S in spectra for m in (1, 2, 3)
                   for v in [suspension_twist_check(S, m)])
    ok = neg_ok and pos_ok and twist_ok
    return ok, {"s0(-2)": f"{neg.s0:.12g}", "s0(2)": f"{pos.s0:.12g}", "twist_exact": twist_ok}


def fe_grid():
    return [complex(x, y) for x in (0.2, 0.6, 1.4, 1.8) for y in (-10.0, -4.0, 0.5, 5.0, 10.0)]


def criterion_9():
    L11 = elliptic_setup("11a1")
    L37 = elliptic_setup("37a1")
    fe11 = max(functional_equation_residual(L11, s) for s in fe_grid())
    fe37 = max(functional_equation_residual(L37, s) for s in fe_grid())
    center37 = abs(L37.value(1.0, SPLIT_ALT))
    hyp37 = ellcurve.theorem3_hypothesis(L37)
    cat = elliptic_catalog("11a1")
    resid = max((abs(L11.value(1 + 1j * z.gamma, SPLIT_ALT)) for z in cat.zeros), default=math.inf)
    fam = default_family()
    vecs = [spectralize(F, cat) for F in fam]
    sym_exact = all(pair_sym(u, v, bound=False).value == pair_sym(v, u, bound=False).value
                    for u in vecs for v in vecs)
    eq = max(equivariance_check(F, G, math.e, 2, cat) for F in fam for G in fam)
    herm_lo, _ = psd_check(gram_matrix(fam, "hermitian", cat, vecs))
    self_pos = all(hermitian_form(v, v).real > 0 for v in vecs)
    checks = (L11.epsilon == 1 and fe11 <= 1e-8 and L37.epsilon == -1 and fe37 <= 1e-8
              and center37 <= 1e-9 and not hyp37.satisfied
              and any(abs(z.sigma - 1) < 1e-9 for z in hyp37.real_zeros)
              and len(cat.zeros) >= 3 and resid <= 1e-8
              and sym_exact and eq <= 1e-9 and herm_lo > 0 and self_pos)
    return checks, {"eps11": L11.epsilon, "fe11": fe11, "eps37": L37.epsilon, "fe37": fe37,
                    "Lambda37(1)": center37, "hyp37_violated": not hyp37.satisfied,
                    "zeros11": len(cat.zeros), "zero_resid": resid, "sym_exact": sym_exact,
                    "equivariance": eq, "herm_min_eig": herm_lo}


DISPLAY = ("2pi/s", "L_Z(s)", "2pi/(1-s)", "1/Lambda(E,s)", "2pi/(s-1)", "L_Z(s-1)", "2pi/(2-s)")


def lambda_total_points():
    return [complex(0.7, 1.5), complex(0.3, 0.4), complex(1.6, -2.0), complex(0.5, 3.0),
            complex(1.25, 0.75), complex(0.85, -4.0), complex(1.9, 2.5), complex(0.15, -1.0),
            complex(1.45, 5.0), complex(0.6, -6.0)]


def criterion_10():
    L = elliptic_setup("11a1")
    worst = max(ellcurve.lambda_total_residual(L, s) for s in lambda_total_points())
    tot = ellcurve.lambda_total(L, complex(0.7, 1.5))
    labels = tuple(f.expression for f, _ in tot.factors)
    product = 1 + 0j
    for _, v in tot.factors:
        product *= v
    ok = worst <= 1e-8 and labels == DISPLAY and len(labels) == 7 and product == tot.value
    return ok, {"symmetry_residual": worst, "factors": len(labels)}


CRITERIA = (
    (1, "zero catalog", criterion_1),
    (2, "Mellin engine", criterion_2),
    (3, "antisymmetric pairing structure", criterion_3),
    (4, "kernel contains the smoothed images", criterion_4),
    (5, "positivity and rank", criterion_5),
    (6, "truncation soundness", criterion_6),
    (7, "function field, exact", criterion_7),
    (8, "suspension", criterion_8),
    (9, "elliptic curves", criterion_9),
    (10, "seven-factor product", criterion_10),
)


def run_criterion(number):
    num, title, fn = CRITERIA[number - 1]
    t0 = time.perf_counter()
    try:
        ok, details = fn()
    except (ZSLError, ArithmeticError, ValueError) as exc:
        ok, details = False, {"error": f"{type(exc).__name__}: {exc}"}
    return Criterion(num, title, bool(ok), details, time.perf_counter() - t0)


def run_all(numbers=None, echo=None):
    results = []
    for num, _, _ in CRITERIA:
        if numbers and num not in numbers:
            continue
        res = run_criterion(num)
        if echo:
            echo(res.line())
        results.append(res)
    return results
