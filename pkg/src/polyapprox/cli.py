"""Command line front end.

Exit codes: 0 success, 2 invalid configuration, 3 verification failure,
4 precision rejection (doubled-precision recheck disagreed).
"""

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

import mpmath
from mpmath import mp

from . import bounds as bounds_mod
from .numcore import (DEFAULT_PREC, PrecisionError, SplitMix64, UniPoly,
                      poly_from_json, to_mpf)
from .oracle import minimax_lp
from .symmetric import (SymSpec, and_or_approx, exact_weight_approx,
                        sampling_approx, symmetric_approx)
from .extension import small_support_approx
from .composed import surjectivity_approx, BlockSymApprox, surj_value, _weight_vectors


def _parse_fraction(s):
    if "/" in s:
        a, b = s.split("/")
        return Fraction(int(a), int(b))
    return Fraction(s)


def _emit(obj, path):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_construct(args):
    eps = _parse_fraction(args.eps)
    if args.target in ("and", "or"):
        d = 1
        while True:
            a = and_or_approx(args.n, d, args.target, args.prec)
            if float(a.certified_eps) <= float(eps):
                break
            d += 1
        _emit(a.to_json(), args.out)
    elif args.target == "exact":
        a = exact_weight_approx(args.n, args.k, args.m if args.m is not None
                                else args.k, eps, args.prec)
        _emit(a.to_json(), args.out)
    elif args.target == "sampling":
        spec = _random_low_support(args.n, args.k, args.seed)
        a = sampling_approx(spec, eps)
        _emit(a.to_json(), args.out)
    elif args.target == "small-support":
        spec = _random_low_support(args.n, args.k, args.seed)
        res = small_support_approx(spec, eps, args.prec)
        _emit(res.approx.to_json(), args.out)
    elif args.target == "surjectivity":
        a = surjectivity_approx(args.n, args.r, eps, args.prec)
        _emit(a.to_json(), args.out)
    else:
        raise SystemExit(2)
    return 0


def _random_low_support(n, k, seed):
    rng = SplitMix64(seed)
    values = [rng.fraction() for _ in range(k + 1)] + [0] * (n - k)
    return SymSpec(n, values)


def cmd_verify(args):
    with open(args.artifact) as fh:
        doc = json.load(fh)
    prec = args.prec
    slack = mpmath.mpf(2) ** (-(prec // 2))
    with mp.workprec(prec):
        if "terms" in doc:
            ok = _verify_blocksym(doc, prec, slack)
        elif doc.get("target") == "spectrum":
            ok = _verify_spectrum(doc, prec, slack)
        else:
            print("unrecognized artifact", file=sys.stderr)
            return 2
    if not ok:
        print("FAIL: certified error claim does not hold")
        return 3
    print("OK")
    return 0


def _parse_scalar(s):
    if isinstance(s, (int, float)):
        return mpmath.mpf(s)
    if "/" in s:
        return _parse_fraction(s)
    from .numcore import mpf_from_hex
    return mpf_from_hex(s)


def _claimed_eps(doc):
    if "certified_eps_exact" in doc:
        v = _parse_scalar(doc["certified_eps_exact"])
        return to_mpf(v, mp.prec) if isinstance(v, Fraction) else v
    return mpmath.mpf(doc["certified_eps"])


def _verify_spectrum(doc, prec, slack):
    poly = poly_from_json({k: doc[k] for k in doc
                           if k in ("kind", "backend", "coeffs",
                                    "precision_bits", "poly", "parts", "base",
                                    "outer", "inner", "d", "lo", "k", "c")})
    values = [_parse_fraction(v) for v in doc["values"]]
    claimed = _claimed_eps(doc)
    worst = mpmath.mpf(0)
    for w in range(doc["n"] + 1):
        v = poly.eval(w) if isinstance(poly, UniPoly) and \
            poly.backend == "rational" else poly.eval(w, prec)
        worst = max(worst, abs(to_mpf(v, prec) - to_mpf(values[w], prec)))
    return worst <= claimed + slack


def _verify_blocksym(doc, prec, slack):
    terms = []
    for t in doc["terms"]:
        q = poly_from_json(t["q"]) if t["q"] is not None else None
        terms.append((t["ell"], _parse_scalar(t["mu"]), q))
    b = BlockSymApprox(doc["n"], doc["r"], terms, doc["certified_eps"], 0)
    worst = mpmath.mpf(0)
    for wv in _weight_vectors(doc["r"], doc["n"]):
        v = b.eval(wv, prec)
        worst = max(worst, abs(to_mpf(v, prec) - surj_value(wv)))
    return worst <= _claimed_eps(doc) + slack


def cmd_oracle(args):
    nodes = [_parse_fraction(s) for s in args.nodes.split(",")]
    values = [_parse_fraction(s) for s in args.values.split(",")]
    res = minimax_lp(nodes, values, args.degree)
    _emit(res.to_json(), args.out)
    return 0


def cmd_bounds(args):
    consts = bounds_mod.BoundConstants(args.c_sel)
    if args.sweep:
        v = bounds_mod.consistency_sweep(consts)
        print("violations: %d" % len(v))
        for row in v:
            print(row)
        return 0 if not v else 3
    fam = args.family
    if fam == "symmetric":
        val = bounds_mod.symmetric_closed(args.n, args.k, args.delta, consts)
    elif fam == "kdnf":
        val = bounds_mod.kdnf_closed(args.n, args.k, args.delta, consts)
    elif fam == "ed":
        val = bounds_mod.ed_closed(args.n, args.k, args.delta, consts)
    elif fam == "ed-range":
        val = bounds_mod.ed_range_closed(args.n, args.r, args.k, args.delta,
                                         consts)
    else:
        return 2
    print("%.6f" % val)
    return 0


def cmd_table(args):
    rows = [["family", "n", "k", "delta", "bound"]]
    for n in (64, 256, 1024, 4096):
        for k in (1, 2, 3):
            for delta in (1, 8, 64):
                rows.append(["kdnf", n, k, delta,
                             "%.3f" % bounds_mod.kdnf_closed(n, k, delta)])
                rows.append(["ed", n, k, delta,
                             "%.3f" % bounds_mod.ed_closed(n, k, delta)])
    out = sys.stdout if not args.out else open(args.out, "w", newline="")
    w = csv.writer(out, lineterminator="\r\n")
    w.writerows(rows)
    if args.out:
        out.close()
    return 0


def cmd_selftest(args):
    checks = []

    def check(name, fn):
        try:
            ok = fn()
        except PrecisionError:
            raise
        except Exception as exc:      # present the failure, keep going
            checks.append((name, False, repr(exc)))
            return
        checks.append((name, bool(ok), ""))

    from .chebyshev import cheb_eval, cheb_poly
    def cheb_identity():
        with mp.workprec(256):
            return abs(cheb_eval(16, mpmath.cos(mpmath.mpf(1) / 3), 256)
                       - mpmath.cos(mpmath.mpf(16) / 3)) < mpmath.mpf(2) ** -200

    check("chebyshev-identity", cheb_identity)
    check("oracle-or2", lambda: minimax_lp([0, 1, 2], [0, 1, 1], 1).eps_star
          == Fraction(1, 4))
    check("and-approx", lambda: float(and_or_approx(8, 5).certified_eps) <= 1/3)
    check("exact-weight", lambda: float(
        exact_weight_approx(16, 2, 2, Fraction(1, 8)).certified_eps) <= 1/8)
    check("surjectivity", lambda: float(
        surjectivity_approx(8, 2).certified_eps) <= 1/3)
    check("bounds-sweep", lambda: not bounds_mod.consistency_sweep())
    ok = True
    for name, passed, note in checks:
        print("%s %s %s" % ("PASS" if passed else "FAIL", name, note))
        ok = ok and passed
    return 0 if ok else 3


def make_parser():
    ap = argparse.ArgumentParser(prog="polyapprox")
    ap.add_argument("--prec", type=int, default=DEFAULT_PREC)
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("construct")
    c.add_argument("--target", required=True,
                   choices=["and", "or", "exact", "sampling", "small-support",
                            "surjectivity"])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, default=0)
    c.add_argument("--m", type=int, default=None)
    c.add_argument("--r", type=int, default=0)
    c.add_argument("--eps", default="1/3")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", default=None)
    c.set_defaults(fn=cmd_construct)

    v = sub.add_parser("verify")
    v.add_argument("artifact")
    v.set_defaults(fn=cmd_verify)

    o = sub.add_parser("oracle")
    o.add_argument("--nodes", required=True)
    o.add_argument("--values", required=True)
    o.add_argument("--degree", type=int, required=True)
    o.add_argument("--out", default=None)
    o.set_defaults(fn=cmd_oracle)

    b = sub.add_parser("bounds")
    b.add_argument("--family",
                   choices=["symmetric", "kdnf", "ed", "ed-range"])
    b.add_argument("--n", type=int, default=0)
    b.add_argument("--k", type=int, default=0)
    b.add_argument("--r", type=int, default=0)
    b.add_argument("--delta", type=float, default=1.0)
    b.add_argument("--c-sel", type=float, default=4.0)
    b.add_argument("--sweep", action="store_true")
    b.set_defaults(fn=cmd_bounds)

    t = sub.add_parser("table")
    t.add_argument("--out", default=None)
    t.set_defaults(fn=cmd_table)

    s = sub.add_parser("selftest")
    s.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None):
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except PrecisionError as exc:
        print("precision rejection: %s" % exc, file=sys.stderr)
        return 4
    except (ValueError, OSError, KeyError) as exc:
        print("invalid configuration: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
