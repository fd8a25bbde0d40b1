"""Command-line front end: ``zsl <command> [flags]``.

Commands
    zeros    build a zero catalog and write it as JSON
    pair     pair two test functions on a catalog
    gram     Gram matrix of a family, with eigenvalue and rank report
    ff       zeta numerator, eigenvalues and pairing of a curve over F_q
    ec       elliptic curve checks, zeros and the seven-factor product
    suspend  suspend Frobenius eigenvalues to the fundamental strip
    verify   run the ten acceptance criteria

Exit status is 2 for malformed input and 1 when ``verify`` sees a failure.
"""

import argparse
import os
import re
import sys
from fractions import Fraction

from . import io
from .errors import ParseError, ZSLError

DEFAULT_TOL = 1e-10


def default_tol():
    raw = os.environ.get("ZSL_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise ParseError(f"ZSL_TOL is not a number: {raw!r}", raw) from None
    if not tol > 0:
        raise ParseError(f"ZSL_TOL must be positive: {raw!r}", raw)
    return tol


def _emit(text, out):
    if out:
        io.write_text(out, text)
    else:
        sys.stdout.write(text)


def _load_catalog(path):
    from .zerofind import ZeroCatalog
    try:
        return ZeroCatalog.load(path)
    except (OSError, ValueError, KeyError) as exc:
        raise ParseError(f"cannot read catalog {path}: {exc}", str(path)) from None


# zeros ---------------------------------------------------------------------

def cmd_zeros(args):
    from .zerofind import RiemannL, scan_count, scan_zeros
    if args.family == "riemann":
        L = RiemannL()
        cat = scan_count(L, args.count, args.step) if args.count else scan_zeros(L, args.t_max, args.step)
    else:
        from .ellcurve import elliptic_L, elliptic_zero_catalog, parse_ec
        L = elliptic_L(parse_ec(args.family))
        cat = elliptic_zero_catalog(L, t_max=None if args.count else args.t_max,
                                    count=args.count, step=args.step)
    _emit(cat.to_json(), args.out)
    return 0


# pair / gram ------------------------------------------------------------------

def _parse_functions(exprs):
    from .dsl import parse_function
    return [parse_function(e) for e in exprs]


def cmd_pair(args):
    from .pairing import catalog_ref, hermitian_form, pair, pairing_report, spectralize
    F, G = _parse_functions(args.fn)
    cat = _load_catalog(args.catalog)
    tol = args.tol if args.tol is not None else default_tol()
    u, v = spectralize(F, cat), spectralize(G, cat)
    pv = pair(u, v, args.form)
    back = pair(v, u, args.form).value
    if args.form == "antisym":
        name, ok = "antisymmetry", pv.value == -back
    elif args.form == "sym":
        name, ok = "symmetry", pv.value == back
    else:
        name, ok = "hermitian symmetry", abs(hermitian_form(u, v) - back.conjugate()) <= tol * max(1.0, abs(back))
    flags = [f"{name} self-check: {'pass' if ok else 'fail'}"]
    report = pairing_report(args.form, pv, cat, catalog_ref(cat), flags)
    _emit(io.dumps(report), args.out)
    return 0


def cmd_gram(args):
    from .mellin import default_family
    from .pairing import catalog_ref, gram_csv, gram_matrix, numeric_rank, psd_check
    family = _parse_functions(args.fn) if args.fn else default_family()
    cat = _load_catalog(args.catalog)
    tol = args.tol if args.tol is not None else default_tol()
    G = gram_matrix(family, args.form, cat)
    if args.format == "csv":
        _emit(gram_csv(family, G), args.out)
        return 0
    report = {
        "form": args.form,
        "weight": cat.weight,
        "catalog_ref": catalog_ref(cat),
        "functions": [F.dsl() for F in family],
        "matrix": [[io.cnum(z) for z in row] for row in G],
        "rank": numeric_rank(G, args.rank_threshold),
        "rank_threshold": args.rank_threshold,
    }
    if args.form == "hermitian":
        lo, hi = psd_check(G)
        report["eigenvalues"] = {"min": io.sig(lo), "max": io.sig(hi)}
        report["positive_definite"] = lo > tol * max(abs(hi), 1.0)
    _emit(io.dumps(report), args.out)
    return 0


# ff / ec / suspend -----------------------------------------------------------------

def cmd_ff(args):
    from .ffield import ff_report, parse_curve
    _emit(io.dumps(ff_report(parse_curve(args.curve))), args.out)
    return 0


def cmd_ec(args):
    from .ellcurve import ec_report, elliptic_L, elliptic_zero_catalog, parse_ec
    E = parse_ec(args.curve)
    L = elliptic_L(E)
    cat = elliptic_zero_catalog(L, t_max=args.t_max, step=args.step) if args.zeros else None
    _emit(io.dumps(ec_report(E, L, cat)), args.out)
    return 0


_SURD = re.compile(r"^([+-]?\d+(?:/\d+)?)?(?:([+-]?\d*(?:/\d+)?)\*?sqrt\((-?\d+)\))?$")


def parse_alpha(text):
    """Eigenvalue as ``x``, ``x+y*sqrt(d)`` (exact) or a complex literal."""
    from .quadratic import Quad, squarefree_split
    src = "".join(text.split())
    m = _SURD.match(src)
    if src and m and (m.group(1) or m.group(3)):
        x = Fraction(m.group(1) or 0)
        if m.group(3) is None:
            return Quad(x)
        ytxt = m.group(2)
        y = Fraction(1 if ytxt in ("", "+", None) else -1 if ytxt == "-" else ytxt)
        f, d = squarefree_split(int(m.group(3)))
        return Quad(x, y * f, d) if d != 1 else Quad(x + y * f)
    try:
        return complex(src.replace("i", "j"))
    except ValueError:
        raise ParseError(f"bad eigenvalue {text!r}", text) from None


def cmd_suspend(args):
    from .gf import prime_power
    from .pairing import suspend, suspension_twist_check
    from .errors import DomainError
    try:
        prime_power(args.q)
    except DomainError:
        raise ParseError(f"q = {args.q} is not a prime power", str(args.q)) from None
    eig = []
    for item in args.alpha:
        value, _, mult = item.partition(":")
        try:
            m = int(mult) if mult else 1
        except ValueError:
            raise ParseError(f"bad multiplicity in {item!r}", mult) from None
        eig.append((parse_alpha(value), m))
    S = suspend(args.q, eig)
    out = S.to_dict()
    verdict = suspension_twist_check(S, args.m)
    out["twist_check"] = {"m": args.m, "passed": verdict.passed, "exact": verdict.exact,
                          "expected_factor": args.q ** args.m}
    _emit(io.dumps(out), args.out)
    return 0


def cmd_verify(args):
    from .acceptance import run_all
    results = run_all(set(args.only) if args.only else None, echo=print)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 1 if failed else 0


# parser ---------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="zsl", description="Spectral pairings on L-function zeros.")
    sub = ap.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zeros", help="build a zero catalog")
    z.add_argument("--family", default="riemann", help="riemann, 11a1, 37a1 or an ec:... curve")
    grp = z.add_mutually_exclusive_group(required=True)
    grp.add_argument("--count", type=int, help="number of zeros")
    grp.add_argument("--t-max", type=float, help="scan height")
    z.add_argument("--step", type=float, default=0.01)
    z.add_argument("--out")
    z.set_defaults(func=cmd_zeros)

    p = sub.add_parser("pair", help="pair two test functions")
    p.add_argument("--form", choices=("antisym", "sym", "hermitian"), required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--fn", action="append", required=True, help="DSL expression (give twice)")
    p.add_argument("--tol", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pair)

    g = sub.add_parser("gram", help="Gram matrix of a family")
    g.add_argument("--form", choices=("antisym", "sym", "hermitian"), required=True)
    g.add_argument("--catalog", required=True)
    g.add_argument("--fn", action="append", help="DSL expression (repeatable; default family if absent)")
    g.add_argument("--rank-threshold", type=float, default=1e-9)
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--tol", type=float)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gram)

    f = sub.add_parser("ff", help="curve over a finite field")
    f.add_argument("--curve", required=True)
    f.add_argument("--out")
    f.set_defaults(func=cmd_ff)

    e = sub.add_parser("ec", help="elliptic curve over Q")
    e.add_argument("--curve", required=True, help="11a1, 37a1 or ec:a1,a2,a3,a4,a6@N=..;ap:p=v")
    e.add_argument("--zeros", action="store_true", help="also scan critical-line zeros")
    e.add_argument("--t-max", type=float, default=20.0)
    e.add_argument("--step", type=float, default=0.01)
    e.add_argument("--out")
    e.set_defaults(func=cmd_ec)

    s = sub.add_parser("suspend", help="suspend Frobenius eigenvalues")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--alpha", action="append", required=True, help="value[:mult], e.g. -2:2 or 1+sqrt(-7)")
    s.add_argument("--m", type=int, default=1, help="power of q for the twist check")
    s.add_argument("--out")
    s.set_defaults(func=cmd_suspend)

    v = sub.add_parser("verify", help="run the acceptance criteria")
    v.add_argument("--only", type=int, action="append", help="criterion number (repeatable)")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "pair" and len(args.fn) != 2:
        parser.error("pair needs exactly two --fn expressions")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"zsl: parse error: {exc} (token: {exc.token})", file=sys.stderr)
        return 2
    except ZSLError as exc:
        print(f"zsl: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
