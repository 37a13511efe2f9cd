"""Composed approximants: surjectivity over a column grid, disjunction
selectors over function families, slack-variable homogenization, and the
conjunction-norm bookkeeping that justifies symmetrization of composed
constructions."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
import math

import mpmath
from mpmath import mp

from .numcore import (DEFAULT_PREC, FLOAT, RATIONAL, UniPoly, as_fraction,
                      poly_to_json, recheck, to_mpf)
from .chebyshev import cheb_eval, cheb_poly
from .symmetric import (SymSpec, and_or_approx, restricted_disjunction_approx)
from .oracle import MultiPoly, multilinear_interpolant


# ---------------------------------------------------------------------------
# Conjunction-norm ledger.  Expression trees over n boolean variables; the
# bound follows the calculus rules, the expansion witnesses them.


class PiExpr:
    pass


@dataclass
class PConst(PiExpr):
    c: Fraction


@dataclass
class PConj(PiExpr):
    plain: frozenset
    negated: frozenset


@dataclass
class PDisj(PiExpr):
    plain: frozenset
    negated: frozenset


@dataclass
class PSum(PiExpr):
    parts: list


@dataclass
class PScale(PiExpr):
    c: Fraction
    base: PiExpr


@dataclass
class PProd(PiExpr):
    parts: list


@dataclass
class PComp(PiExpr):
    poly: UniPoly
    base: PiExpr


def pi_norm_bound(e):
    """Upper bound on the conjunction norm, by the calculus rules."""
    if isinstance(e, PConst):
        return abs(as_fraction(e.c))
    if isinstance(e, PConj):
        return Fraction(1)
    if isinstance(e, PDisj):
        return Fraction(2) if (e.plain or e.negated) else Fraction(0)
    if isinstance(e, PSum):
        return sum(map(pi_norm_bound, e.parts), Fraction(0))
    if isinstance(e, PScale):
        return abs(as_fraction(e.c)) * pi_norm_bound(e.base)
    if isinstance(e, PProd):
        out = Fraction(1)
        for p in e.parts:
            out *= pi_norm_bound(p)
        return out
    if isinstance(e, PComp):
        inner = max(Fraction(1), pi_norm_bound(e.base))
        return inner ** max(e.poly.degree, 0) * e.poly.norm()
    raise TypeError("not a PiExpr")


def _expand_mul(a, b):
    out = {}
    for (pa, na), ca in a.items():
        for (pb, nb), cb in b.items():
            p, q = pa | pb, na | nb
            if p & q:
                continue     # contradictory literal pair: the zero function
            key = (p, q)
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def pi_expand(e):
    """Explicit decomposition into conjunctions {(plain, negated): coeff},
    mirroring the rule that produced each bound."""
    E = frozenset()
    if isinstance(e, PConst):
        return {(E, E): as_fraction(e.c)} if e.c != 0 else {}
    if isinstance(e, PConj):
        return {(e.plain, e.negated): Fraction(1)}
    if isinstance(e, PDisj):
        if not (e.plain or e.negated):
            return {}
        return {(E, E): Fraction(1), (e.negated, e.plain): Fraction(-1)}
    if isinstance(e, PSum):
        out = {}
        for p in e.parts:
            for k, v in pi_expand(p).items():
                out[k] = out.get(k, Fraction(0)) + v
        return {k: v for k, v in out.items() if v != 0}
    if isinstance(e, PScale):
        return {k: as_fraction(e.c) * v for k, v in pi_expand(e.base).items()
                if e.c != 0}
    if isinstance(e, PProd):
        out = {(E, E): Fraction(1)}
        for p in e.parts:
            out = _expand_mul(out, pi_expand(p))
        return out
    if isinstance(e, PComp):
        base = pi_expand(e.base)
        acc = {}
        for c in reversed(e.poly.coeffs):
            acc = _expand_mul(acc, base)
            if c != 0:
                acc[(E, E)] = acc.get((E, E), Fraction(0)) + as_fraction(c)
        return {k: v for k, v in acc.items() if v != 0}
    raise TypeError("not a PiExpr")


def pi_eval(e, x):
    if isinstance(e, PConst):
        return as_fraction(e.c)
    if isinstance(e, PConj):
        return Fraction(int(all(x[i] for i in e.plain)
                            and not any(x[i] for i in e.negated)))
    if isinstance(e, PDisj):
        return Fraction(int(any(x[i] for i in e.plain)
                            or any(not x[i] for i in e.negated)))
    if isinstance(e, PSum):
        return sum(pi_eval(p, x) for p in e.parts)
    if isinstance(e, PScale):
        return as_fraction(e.c) * pi_eval(e.base, x)
    if isinstance(e, PProd):
        out = Fraction(1)
        for p in e.parts:
            out *= pi_eval(p, x)
        return out
    if isinstance(e, PComp):
        return e.poly.eval(pi_eval(e.base, x))
    raise TypeError("not a PiExpr")


def expansion_eval(expansion, x):
    tot = Fraction(0)
    for (p, q), c in expansion.items():
        if all(x[i] for i in p) and not any(x[i] for i in q):
            tot += c
    return tot


def expansion_norm(expansion):
    return sum(map(abs, expansion.values()), Fraction(0))


# ---------------------------------------------------------------------------
# Surjectivity over an n x r grid of cell indicators, weight <= n.


@dataclass
class BlockSymApprox:
    """sum_ell mu_ell sum_{|S|=ell} q_ell(w_S) over column weight vectors."""
    n: int
    r: int
    terms: list                  # (ell, mu, q poly or None for the constant)
    certified_eps: object
    degree: int
    outer_err: object = None

    def eval(self, weights, prec=DEFAULT_PREC):
        assert len(weights) == self.r
        tables = self.tables(prec)
        with mp.workprec(prec):
            tot = 0
            for (ell, mu, _), table in zip(self.terms, tables):
                if ell == 0:
                    tot += mu
                    continue
                s = sum(mu * table[sum(weights[j] for j in S)]
                        for S in combinations(range(self.r), ell))
                tot += s
            return tot

    def tables(self, prec=DEFAULT_PREC):
        cache = getattr(self, "_tables", None)
        if cache is None or cache[0] != prec:
            tabs = []
            for ell, mu, q in self.terms:
                if ell == 0 or q is None:
                    tabs.append(None)
                elif q.backend == RATIONAL:
                    tabs.append([q.eval(w) for w in range(self.n + 1)])
                else:
                    tabs.append([q.eval(w, prec) for w in range(self.n + 1)])
            self._tables = (prec, tabs)
        return self._tables[1]

    def to_json(self):
        from .numcore import scalar_to_json
        return {"n": self.n, "r": self.r,
                "terms": [{"ell": ell, "mu": scalar_to_json(mu),
                           "q": poly_to_json(q) if q is not None else None}
                          for ell, mu, q in self.terms],
                "certified_eps": float(self.certified_eps),
                "certified_eps_exact": scalar_to_json(self.certified_eps)}


def _weight_vectors(r, n):
    if r == 0:
        yield ()
        return
    for w in range(n + 1):
        for rest in _weight_vectors(r - 1, n - w):
            yield (w,) + rest


def surj_value(weights):
    return 1 if all(w >= 1 for w in weights) else 0


def _outer_third(r):
    """Chebyshev outer polynomial for error target 1/3: exact rational,
    P(v) = T_m((1+v)/r)/T_m(1+1/r), m = ceil(sqrt(3r))."""
    m = math.isqrt(3 * r)
    if m * m < 3 * r:
        m += 1
    peak = cheb_eval(m, 1 + Fraction(1, r))
    p = cheb_poly(m).compose_affine(Fraction(1, r), Fraction(1, r))
    return p.scale(Fraction(1) / peak)


def _outer_general(r, eps, prec):
    """Damped AND-style outer polynomial with error <= eps/2 on {0..r-1}."""
    d = 1
    while True:
        a = and_or_approx(r, d, "and", prec)
        if float(a.certified_eps) <= float(eps) / 2:
            return a.poly
        d += 1


def surjectivity_approx(n, r, eps=Fraction(1, 3), prec=DEFAULT_PREC):
    """Approximant for SURJ on an n x r grid restricted to weight <= n,
    expanded into per-column-subset emptiness terms."""
    eps = as_fraction(eps)
    if r > n:
        out = BlockSymApprox(n, r, [(0, Fraction(0), None)], Fraction(0), 0)
        return out
    if eps == Fraction(1, 3):
        outer = _outer_third(r)
    else:
        outer = _outer_general(r, eps, prec)
    exact = outer.backend == RATIONAL
    with mp.workprec(prec):
        if exact:
            h = [outer.eval(r - j) for j in range(r + 1)]
        else:
            h = [outer.eval(r - j, prec) for j in range(r + 1)]
        outer_err = max(abs(h[j] - surj_value([1] * (r - j) + [0] * j))
                        for j in range(r + 1))
        mu = []
        for ell in range(r + 1):
            v = sum((-1) ** (ell - i) * math.comb(ell, i) * h[i]
                    for i in range(ell + 1))
            mu.append(v)
        if not exact:
            tiny = mpmath.mpf(2) ** (-(prec // 2))
            mu = [m if abs(m) > tiny else (m * 0) for m in mu]
        weight = sum(abs(mu[ell]) * math.comb(r, ell) for ell in range(1, r + 1))
    slack = as_fraction(eps) - (outer_err if exact else as_fraction(float(outer_err)))
    if slack <= 0:
        raise ArithmeticError("outer stage already exhausts the error budget")
    budget = slack / (weight if exact else as_fraction(float(weight)))
    terms = [(0, mu[0], None)]
    deg = 0
    for ell in range(1, r + 1):
        if mu[ell] == 0:
            continue
        q = _conjunction_poly(n, r, ell, budget, prec)
        terms.append((ell, mu[ell], q))
        deg = max(deg, q.degree)
    out = BlockSymApprox(n, r, terms, None, deg, outer_err)
    out.certified_eps = _certify_surj(out, prec)
    return out


def _conjunction_poly(n, r, ell, budget, prec):
    """Smallest-degree emptiness indicator for ell columns: q(w) with
    q(0) ~ 1, q(w >= 1) ~ 0, max error <= budget, w = ones in the columns."""
    entries = frozenset(range(ell * n))
    lo, hi = 1, 2 * n
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        d = restricted_disjunction_approx(ell * n, n, entries, frozenset(),
                                          mid, prec)
        if float(d.certified_eps) <= float(budget):
            best = d
            hi = mid - 1
        else:
            lo = mid + 1
    if best is None:
        raise ArithmeticError("no degree met the replacement budget")
    one = UniPoly([1]) if best.poly.backend == RATIONAL else \
        UniPoly([1], FLOAT, prec)
    return one - best.poly


def _certify_surj(out, prec):
    def build(pr):
        out._tables = None
        vals = []
        with mp.workprec(pr):
            for wv in _weight_vectors(out.r, out.n):
                v = out.eval(wv, pr)
                vals.append(abs(to_mpf(v, pr) - surj_value(wv)))
        out._tables = None
        return [max(vals)]

    return recheck(build, prec)[0]


def surj_outer_eval(n, r, eps, weights, prec=DEFAULT_PREC):
    """Unexpanded composition: outer polynomial applied to the number of
    nonempty columns.  Cross-validation target for the expanded form."""
    v = sum(1 for w in weights if w >= 1)
    if eps == Fraction(1, 3):
        return _outer_third(r).eval(v)
    with mp.workprec(prec):
        return _outer_general(r, eps, prec).eval(v)


# ---------------------------------------------------------------------------
# Slack-variable homogenization.


def homogenize_eval(mpoly, zvars, nz, x, t):
    """Average mpoly over completions of the z-block at weight t: a monomial
    using s slack variables picks up C(t,s)/C(nz,s).  Exact."""
    zset = frozenset(zvars)
    tot = Fraction(0)
    for s, c in mpoly.terms.items():
        zpart = s & zset
        rest = s - zset
        if not all(x[i] for i in rest):
            continue
        k = len(zpart)
        tot += c * Fraction(math.comb(t, k), math.comb(nz, k))
    return tot


# ---------------------------------------------------------------------------
# Selector composition: F(x, y) = OR_i (y_i AND f_i(x)) on |y| = n.


@dataclass
class SelectorApprox:
    N: int
    n: int
    b: int
    a: list
    certified_eps: object
    degree: int
    inner_eps: object

    def to_json(self):
        return {"N": self.N, "n": self.n, "b": self.b,
                "a": [str(v) for v in self.a],
                "certified_eps": float(self.certified_eps),
                "degree": self.degree}


def _or_symmetric_coeffs(k, eps, prec):
    """Subset-basis coefficients a_0..a_d of an OR_k approximant with error
    <= eps/2: a_ell is the ell-th finite difference of the weight poly."""
    d = 1
    while True:
        a = and_or_approx(k, d, "or", prec)
        if float(a.certified_eps) <= float(eps) / 2:
            break
        d += 1
    g = a.poly
    if g.backend == RATIONAL:
        gv = [g.eval(w) for w in range(min(a.degree, k) + 1)]
    else:
        with mp.workprec(prec):
            gv = [g.eval(w) for w in range(min(a.degree, k) + 1)]
    coeffs = []
    for ell in range(len(gv)):
        coeffs.append(sum((-1) ** (ell - i) * math.comb(ell, i) * gv[i]
                          for i in range(ell + 1)))
    return coeffs, a.degree


def selector_compose(fs, M, N, n, b, eps, inner_policy="exact-interpolant",
                     prec=DEFAULT_PREC):
    """Composed approximant for OR_i (y_i and f_i(x)); fs are N boolean
    functions of M variables given as callables on 0/1 tuples.  Toy scale:
    everything is enumerated exactly."""
    eps = as_fraction(eps)
    if n % b or N < n:
        raise ValueError("need b | n and N >= n")
    k = n // b
    a, d_out = _or_symmetric_coeffs(k, eps, prec)
    heavy = sum(math.comb(k, ell) * 2 ** ell * abs(a[ell])
                for ell in range(1, len(a)))
    inner_eps = (eps / 2) / heavy if heavy else eps
    if inner_policy not in ("exact-interpolant",):
        raise ValueError("unsupported inner policy %r" % inner_policy)

    def f_union(S, x):
        return 1 if any(fs[i](x) for i in S) else 0

    inner_deg = 0
    for i in range(N):
        mi = multilinear_interpolant(M, lambda x, i=i: fs[i](x))
        inner_deg = max(inner_deg, mi.degree)

    blocks = list(combinations(range(N), b))

    def evaluate(x, y):
        tot = a[0] if a else Fraction(0)
        for ell in range(1, len(a)):
            if a[ell] == 0:
                continue
            tuples = [c for c in permutations(blocks, ell)
                      if all(not (set(c[i]) & set(c[j]))
                             for i in range(ell) for j in range(i + 1, ell))]
            acc = Fraction(0)
            for tup in tuples:
                union = set().union(*tup)
                if not all(y[i] for i in union):
                    continue
                s = Fraction(0)
                for rS in range(1, ell + 1):
                    for S in combinations(range(ell), rS):
                        u = frozenset().union(*(tup[i] for i in S))
                        s += (-1) ** (rS + 1) * f_union(u, x)
                acc += s
            mean = acc / len(tuples)
            scale = (a[ell] * math.comb(k, ell) * math.comb(N, b * ell)
                     / Fraction(math.comb(n, b * ell)))
            tot += scale * mean
        return tot

    worst = 0
    with mp.workprec(prec):
        for x in _cube(M):
            for y in _fixed_weight(N, n):
                truth = 1 if any(y[i] and fs[i](x) for i in range(N)) else 0
                err = abs(evaluate(x, y) - truth)
                if err > worst:
                    worst = err
    out = SelectorApprox(N, n, b, a, worst, inner_deg + d_out * b, inner_eps)
    out.evaluate = evaluate
    return out


def _cube(m):
    for i in range(2 ** m):
        yield tuple((i >> j) & 1 for j in range(m))


def _fixed_weight(N, n):
    for S in combinations(range(N), n):
        y = [0] * N
        for i in S:
            y[i] = 1
        yield tuple(y)
