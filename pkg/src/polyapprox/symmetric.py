"""Approximants for symmetric boolean functions: AND/OR, single-weight
indicators, general symmetric spectra, the sampled low-support construction,
and weight-restricted disjunctions of literals.

Everything is certified by measurement: the reported error is the exact (or
doubled-precision-rechecked) maximum deviation over the integer weights,
never an asymptotic estimate.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math

import mpmath
from mpmath import mp

from .numcore import (DEFAULT_PREC, FLOAT, RATIONAL, SComp, SDense, UniPoly,
                      as_fraction, lagrange_interpolate, poly_to_json, recheck,
                      to_mpf)
from .chebyshev import cheb_eval, cheb_poly


@dataclass
class SymSpec:
    """Target symmetric function: values[w] on Hamming weight w, in [-1, 1]."""
    n: int
    values: list

    def __post_init__(self):
        if len(self.values) != self.n + 1:
            raise ValueError("need n+1 weight values")
        self.values = [as_fraction(v) for v in self.values]
        if any(abs(v) > 1 for v in self.values):
            raise ValueError("spectrum values must lie in [-1, 1]")

    @classmethod
    def and_spec(cls, n):
        return cls(n, [0] * n + [1])

    @classmethod
    def or_spec(cls, n):
        return cls(n, [0] + [1] * n)

    @classmethod
    def exact_spec(cls, n, w):
        v = [0] * (n + 1)
        v[w] = 1
        return cls(n, v)

    def to_json(self):
        return {"target": "spectrum", "n": self.n,
                "values": ["%d/%d" % (v.numerator, v.denominator) for v in self.values]}


@dataclass
class SymApprox:
    spec: SymSpec
    poly: object                 # UniPoly or StructPoly in the weight
    degree: int
    certified_eps: object
    construction: str
    exact_on: set = field(default_factory=set)
    pi_norm_bound: object = None

    def to_json(self):
        from .numcore import scalar_to_json
        d = poly_to_json(self.poly)
        d.update(self.spec.to_json())
        d["degree"] = self.degree
        d["certified_eps"] = float(self.certified_eps)
        d["certified_eps_exact"] = scalar_to_json(self.certified_eps)
        d["construction"] = self.construction
        d["exact_on"] = sorted(self.exact_on)
        return d


def _measure(poly, spec, prec=DEFAULT_PREC, points=None):
    """Max |poly(w) - values[w]|; exact for rational, rechecked for float."""
    pts = points if points is not None else range(spec.n + 1)
    if getattr(poly, "backend", FLOAT) == RATIONAL:
        errs = [abs(poly.eval(w) - spec.values[w]) for w in pts]
        return max(errs, default=Fraction(0))

    def build(p):
        out = []
        with mp.workprec(p):
            for w in pts:
                v = poly.eval(w, p) if not isinstance(poly, UniPoly) else poly.eval(w)
                out.append(abs(v - to_mpf(spec.values[w], p)))
        return out

    if isinstance(poly, UniPoly):
        # dense float polynomials carry their own precision; the recheck
        # happens at construction time by rebuilding, so measure directly
        with mp.workprec(poly.prec):
            return max((abs(poly.eval(w) - to_mpf(spec.values[w], poly.prec))
                        for w in pts), default=mpmath.mpf(0))
    vals = recheck(build, prec)
    return max(vals, default=mpmath.mpf(0))


def single_zero_factor(n, m, prec=DEFAULT_PREC):
    """T restricted to one zero: value 1 at n, 0 at m, |.| <= 1 on [0, n].
    Degree ceil((pi/4) sqrt(n/(n-m)))."""
    if not 0 <= m < n:
        raise ValueError("need 0 <= m < n")
    with mp.workprec(prec):
        d = int(mpmath.ceil(mpmath.pi / 4 * mpmath.sqrt(mpmath.mpf(n) / (n - m))))
        d = max(d, 1)
        cm = mpmath.cos(mpmath.pi / (2 * d))
        a = (1 - cm) / (n - m)
        b = cm - a * m
        return cheb_poly(d, FLOAT, prec).compose_affine(a, b)


def _falling_interpolant(n, w):
    """Degree-n interpolant of the weight-w indicator on {0..n}.  Exact."""
    nodes = [i for i in range(n + 1)]
    vals = [1 if i == w else 0 for i in range(n + 1)]
    return lagrange_interpolate(nodes, vals)


def _and_base(n, d, ell, prec):
    """Unnormalized AND-style polynomial on {0..n}: value 1 at n, zeros at
    n-ell+1 .. n-1, Chebyshev damping below.  Caller measures the rest."""
    r = max(1, -(-d // 2))
    with mp.workprec(prec):
        peak = cheb_eval(r, Fraction(n, n - ell), prec)
        p = cheb_poly(r, FLOAT, prec).compose_affine(Fraction(1, n - ell), 0)
        p = p.scale(1 / peak)
        for i in range(n - ell + 1, n):
            p = p * single_zero_factor(n, i, prec)
    return p


def and_or_approx(n, d, which="and", prec=DEFAULT_PREC):
    """Approximant for AND_n (or OR_n by reflection) built at damping
    parameter d; certified error is the measured maximum over weights."""
    if which not in ("and", "or"):
        raise ValueError("which must be 'and' or 'or'")
    spec = SymSpec.and_spec(n) if which == "and" else SymSpec.or_spec(n)
    if d >= n:
        p = _falling_interpolant(n, n)
        if which == "or":
            p = UniPoly([1]) - p.compose_affine(-1, n)
        return SymApprox(spec, p, p.degree, Fraction(0), "interpolant",
                         set(range(n + 1)))
    ell = d * d // (36 * n) + 1
    ell = min(ell, n - 1)

    def build(pr):
        base = _and_base(n, d, ell, pr)
        with mp.workprec(pr):
            m = max(abs(base.eval(w)) for w in range(n))
        return [m]

    M = recheck(build, prec)[0]
    base = _and_base(n, d, ell, prec)
    with mp.workprec(prec):
        p = base.scale(1 / (1 + M))
        eps = M / (1 + M)
        if which == "or":
            p = UniPoly([1], FLOAT, prec) - p.compose_affine(-1, n)
    return SymApprox(spec, p, p.degree, eps, "chebyshev-damped", set())


def exact_weight_approx(n, k, m, eps, prec=DEFAULT_PREC):
    """Approximate indicator of Hamming weight n-k: value 1 there, zero on
    weights <= ell and in [n-ell, n] \\ {n-k}, <= eps elsewhere."""
    eps = as_fraction(eps)
    if not (0 <= k <= m <= n) or eps <= 0:
        raise ValueError("need 0 <= k <= m <= n and eps > 0")
    spec = SymSpec.exact_spec(n, n - k)
    lg = math.log2(float(2 / eps))
    ell = math.ceil(m + lg)
    if 2 * ell >= n:
        p = _falling_interpolant(n, n - k)
        return SymApprox(spec, p, p.degree, Fraction(0), "interpolant",
                         set(range(n + 1)))
    r = math.ceil(math.sqrt(n * lg))

    def assemble(pr):
        with mp.workprec(pr):
            peak = cheb_eval(r, Fraction(n - k, n - ell), pr)
            p = cheb_poly(r, FLOAT, pr).compose_affine(Fraction(1, n - ell), 0)
            p = p.scale(1 / peak)
            for i in range(ell + 1):
                p = p * single_zero_factor(n - k, i, pr)
            for i in range(n - ell, n - k):
                p = p * single_zero_factor(n - k, i, pr)
            one = UniPoly([1], FLOAT, pr)
            for i in range(n - k + 1, n + 1):
                f = single_zero_factor(i, n - k, pr)
                p = p * (one - f * f)
        return p

    def build(pr):
        p = assemble(pr)
        with mp.workprec(pr):
            return [max(abs(p.eval(w) - to_mpf(spec.values[w], pr))
                        for w in range(n + 1))]

    err = recheck(build, prec)[0]
    p = assemble(prec)
    structural = set(range(ell + 1)) | set(range(n - ell, n + 1))
    return SymApprox(spec, p, p.degree, err, "zeroed-chebyshev", structural)


def symmetric_approx(spec, eps, prec=DEFAULT_PREC):
    """Any symmetric function: constant plus boundary-weight indicators,
    each approximated to eps/(2 ell + 2)."""
    eps = as_fraction(eps)
    n = spec.n
    ell = 0
    while True:
        middle = spec.values[ell + 1:n - ell]
        if len(set(middle)) <= 1:
            break
        ell += 1
    if 2 * ell + 2 > n:
        p = lagrange_interpolate(list(range(n + 1)), spec.values)
        return SymApprox(spec, p, p.degree, Fraction(0), "interpolant",
                         set(range(n + 1)))
    lam = spec.values[ell + 1]
    slice_eps = eps / (2 * ell + 2)
    total = UniPoly([lam], FLOAT, prec)
    deg = 0
    for i in range(ell + 1):
        hi = spec.values[n - i] - lam
        lo = spec.values[i] - lam
        if hi != 0:
            a = exact_weight_approx(n, i, ell, slice_eps, prec)
            q = a.poly if a.poly.backend == FLOAT else a.poly.to_float(prec)
            total = total + q.scale(hi)
            deg = max(deg, a.degree)
        if lo != 0:
            a = exact_weight_approx(n, i, ell, slice_eps, prec)
            q = a.poly if a.poly.backend == FLOAT else a.poly.to_float(prec)
            total = total + q.compose_affine(-1, n).scale(lo)
            deg = max(deg, a.degree)
    err = _measure(total, spec, prec)
    return SymApprox(spec, total, total.degree, err, "boundary-decomposition", set())


def sampling_approx(spec, eps):
    """Low-support symmetric functions (zero above weight k) through the
    sampled-node reparametrization; exact rational, with a conjunction-norm
    ledger entry.  Exact at weights <= 2k and >= n-k."""
    eps = as_fraction(eps)
    n = spec.n
    k = max((w for w in range(n + 1) if spec.values[w] != 0), default=-1)
    if k <= 0 or 4 * k >= n:
        p = lagrange_interpolate(list(range(n + 1)), spec.values)
        pi = sum(abs(spec.values[w]) * math.comb(n, w) for w in range(k + 1))
        return SymApprox(spec, p, p.degree, Fraction(0), "interpolant",
                         set(range(n + 1)), pi_norm_bound=pi)
    E = n // (2 * k)
    t = [1 - (1 - Fraction(i, n)) ** E for i in range(n + 1)]
    d = 5 * math.ceil(8 * k + math.log(1 / float(eps)))
    p = UniPoly([1, -1]) ** d
    for i in range(n - k, n + 1):
        p = p * UniPoly([-t[i], 1])
    nodes = t[:2 * k + 1]
    vals = [spec.values[i] / p.eval(t[i]) for i in range(k + 1)] + [0] * k
    q = lagrange_interpolate(nodes, vals)
    pq = p * q
    values_at = [pq.eval(t[i]) for i in range(n + 1)]
    err = max((abs(values_at[i] - spec.values[i]) for i in range(n + 1)),
              default=Fraction(0))
    exact = {i for i in range(n + 1) if values_at[i] == spec.values[i]}
    norm = pq.norm()
    pi_bound = norm * Fraction(2) ** pq.degree
    # poly in the weight w is pq composed with w -> 1 - (1 - w/n)^E; kept
    # factored, the dense composition has astronomically large coefficients
    inner = UniPoly([1]) - (UniPoly([1, Fraction(-1, n)]) ** E)
    poly = SComp(SDense(pq), SDense(inner))
    poly.backend = RATIONAL
    ap = SymApprox(spec, poly, pq.degree * E, err, "sampled-nodes", exact,
                   pi_norm_bound=pi_bound)
    ap.pq_norm = norm
    ap.pq_degree = pq.degree
    return ap


@dataclass
class LinearFormApprox:
    """Approximant expressed as a univariate polynomial in the literal count
    s = sum_A x_i + sum_B (1 - x_i), valid on inputs of weight <= n."""
    nvars: int
    n: int
    A: frozenset
    B: frozenset
    poly: object
    degree: int
    certified_eps: object
    achievable: list

    def count(self, x):
        return sum(x[i] for i in self.A) + sum(1 - x[i] for i in self.B)

    def to_json(self):
        d = poly_to_json(self.poly)
        d.update({"nvars": self.nvars, "n": self.n, "A": sorted(self.A),
                  "B": sorted(self.B), "degree": self.degree,
                  "certified_eps": float(self.certified_eps)})
        return d


def achievable_counts(nvars, n, A, B):
    """Values of sum_A x + sum_B (1-x) over inputs of weight <= n."""
    A, B = frozenset(A), frozenset(B)
    if A & B:
        raise ValueError("a variable cannot appear plain and negated")
    out = set()
    for a in range(min(len(A), n) + 1):
        for zb in range(len(B) + 1):
            if a + (len(B) - zb) <= n:
                out.add(a + zb)
    return sorted(out)


def restricted_disjunction_approx(nvars, n, A, B, d, prec=DEFAULT_PREC):
    """OR of the literals {x_i : i in A} and {not x_i : i in B} on the
    weight-<= n slice, as a polynomial in the literal count over {0..2n}."""
    A, B = frozenset(A), frozenset(B)
    counts = achievable_counts(nvars, n, A, B)
    if len(B) > n:
        # some negated literal is always satisfied
        return LinearFormApprox(nvars, n, A, B, UniPoly([1]), 0, Fraction(0),
                                counts)
    m2 = 2 * n
    if d >= m2:
        pol = UniPoly([1]) - _falling_interpolant(m2, m2).compose_affine(-1, m2)
        err = Fraction(0)
        return LinearFormApprox(nvars, n, A, B, pol, pol.degree, err, counts)
    ell = d * d // (36 * m2) + 1
    ell = min(ell, m2 - 1)

    def build(pr):
        base = _and_base(m2, d, ell, pr)
        with mp.workprec(pr):
            M = max(abs(base.eval(w)) for w in range(m2))
            pol = UniPoly([1], FLOAT, pr) - base.scale(1 / (1 + M)).compose_affine(-1, m2)
            errs = [abs(pol.eval(s) - (0 if s == 0 else 1)) for s in counts]
        return [max(errs)] if errs else [mpmath.mpf(0)]

    err = recheck(build, prec)[0]
    base = _and_base(m2, d, ell, prec)
    with mp.workprec(prec):
        M = max(abs(base.eval(w)) for w in range(m2))
        pol = UniPoly([1], FLOAT, prec) - base.scale(1 / (1 + M)).compose_affine(-1, m2)
    return LinearFormApprox(nvars, n, A, B, pol, pol.degree, err, counts)


def restricted_conjunction_approx(nvars, n, A, B, d, prec=DEFAULT_PREC):
    """AND of the same literal set, via 1 - OR of the negated literals."""
    disj = restricted_disjunction_approx(nvars, n, B, A, d, prec)
    one = UniPoly([1]) if disj.poly.backend == RATIONAL else UniPoly([1], FLOAT, prec)
    pol = one - disj.poly
    return LinearFormApprox(nvars, n, frozenset(B), frozenset(A), pol,
                            disj.degree, disj.certified_eps, disj.achievable)
