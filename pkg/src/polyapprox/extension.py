"""Extending approximants certified on a short weight range to the full
hypercube, together with the coefficient-norm and extrapolation lemmas that
make leaving the certified range safe."""

from dataclasses import dataclass
from fractions import Fraction
import math

import mpmath
from mpmath import mp

from .numcore import (DEFAULT_PREC, FLOAT, RATIONAL, SComp, SDense, SPow,
                      SProd, UniPoly, as_fraction, lagrange_interpolate,
                      recheck, to_mpf)
from .chebyshev import cheb_poly
from .blocks import interval_indicator
from .symmetric import SymApprox, SymSpec


def coeff_norm_bound(p):
    """8^d * max_i |p(i/d)| over i = 0..d, an upper bound on the coefficient
    1-norm of any degree-d polynomial.  Exact for rational p."""
    d = p.degree
    if d <= 0:
        return abs(p.eval(0)) if p.coeffs else (p.eval(0) * 0)
    m = max(abs(p.eval(Fraction(i, d))) for i in range(d + 1))
    return Fraction(8) ** d * m if p.backend == RATIONAL else 8 ** d * m


def sym_multilinear_norms(n, a):
    """Symmetric multilinear phi = sum_s a_s e_s(x) over n variables:
    returns (coefficient 1-norm, 8^deg * max over the cube)."""
    a = [as_fraction(v) for v in a]
    deg = max((s for s, v in enumerate(a) if v != 0), default=0)
    norm = sum(abs(v) * math.comb(n, s) for s, v in enumerate(a))
    peak = max(abs(sum(v * math.comb(w, s) for s, v in enumerate(a)))
               for w in range(n + 1))
    return norm, Fraction(8) ** deg * peak


def extrapolation_bound(d, m, weight):
    """|phi(x*)| <= 2^d C(ceil(|x*|/floor(m/d)), d) max_{|x|<=m} |phi| for
    multilinear phi of degree <= d, m >= d."""
    if d == 0:
        return Fraction(1)
    if m < d:
        raise ValueError("need m >= d")
    block = m // d
    return Fraction(2) ** d * math.comb(-(-weight // block), d)


@dataclass
class ExtensionResult:
    approx: SymApprox
    n_in: int
    m: int
    delta: Fraction
    indicator_degree: int

    def degree_ratio(self, eps_delta_bits):
        """degree / (sqrt(n/(m+1)) * (input degree + log2(1/delta)))."""
        n = self.approx.spec.n
        denom = math.sqrt(n / (self.m + 1)) * eps_delta_bits
        return self.approx.degree / denom


def _zero_certified(approx, m):
    n_in = approx.spec.n
    for w in range(m + 1, n_in + 1):
        if approx.spec.values[w] != 0:
            raise ValueError("input spectrum must vanish on weights %d..%d"
                             % (m + 1, n_in))


def extend_approx(approx, n, delta, prec=DEFAULT_PREC):
    """Extend an approximant certified for F_{2m} (and vanishing above
    weight m) to all of {0,1}^n, adding at most delta certified error."""
    delta = as_fraction(delta)
    n_in = approx.spec.n
    if n_in % 2:
        raise ValueError("input range must be even (a 2m-weight slice)")
    m = n_in // 2
    _zero_certified(approx, m)
    target = SymSpec(n, [approx.spec.values[w] if w <= m else 0
                         for w in range(n + 1)])
    if n <= n_in:
        out = SymApprox(target, approx.poly, approx.degree,
                        approx.certified_eps, "extension-passthrough",
                        set(approx.exact_on))
        return ExtensionResult(out, n_in, m, delta, 0)
    if m == 0:
        return _extend_from_point(approx, target, n, delta)
    d = max(approx.degree, 1)
    alpha = delta / int(math.ceil((4 * math.e) ** (d + 1)))
    ind = interval_indicator(Fraction(n, m), d, alpha, prec)
    inner = UniPoly([0, Fraction(1, m)])
    phi = approx.poly
    scaled_ind = SComp(ind, SDense(inner))
    full = SProd([SDense(phi) if isinstance(phi, UniPoly) else phi, scaled_ind])

    def build(pr):
        with mp.workprec(pr):
            return [abs(full.eval(w, pr) - to_mpf(target.values[w], pr))
                    for w in range(n + 1)]

    err = max(recheck(build, prec))
    out = SymApprox(target, full, full.degree, err, "extension", set())
    return ExtensionResult(out, n_in, m, delta, ind.degree)


def _extend_from_point(approx, target, n, delta):
    # one certified weight only: damp with a normalized Chebyshev power
    reps = max(1, math.ceil(math.log2(1 / float(delta))))
    c = math.isqrt(n)
    if c * c < n:
        c += 1
    T = cheb_poly(c).compose_affine(Fraction(-1, n), 1 + Fraction(1, n))
    T = T ** reps
    poly = T.scale(approx.spec.values[0] / T.eval(0))
    err = max((abs(poly.eval(w) - target.values[w]) for w in range(n + 1)),
              default=Fraction(0))
    out = SymApprox(target, poly, poly.degree, err, "extension-point", {0})
    return ExtensionResult(out, approx.spec.n, 0, delta, T.degree)


def small_support_approx(spec, eps, prec=DEFAULT_PREC):
    """Symmetric f vanishing above a low weight k: interpolate exactly on the
    2k-slice and extend, total certified error <= eps."""
    eps = as_fraction(eps)
    n = spec.n
    k = max((w for w in range(n + 1) if spec.values[w] != 0), default=-1)
    if k < 0:
        out = SymApprox(spec, UniPoly.zero(), -1, Fraction(0), "zero",
                        set(range(n + 1)))
        return ExtensionResult(out, 0, 0, eps, 0)
    if 2 * k >= n:
        p = lagrange_interpolate(list(range(n + 1)), spec.values)
        out = SymApprox(spec, p, p.degree, Fraction(0), "interpolant",
                        set(range(n + 1)))
        return ExtensionResult(out, n, k, eps, 0)
    m = k
    phi = lagrange_interpolate(list(range(2 * m + 1)), spec.values[:2 * m + 1])
    base = SymApprox(SymSpec(2 * m, spec.values[:2 * m + 1]), phi, phi.degree,
                     Fraction(0), "interpolant", set(range(2 * m + 1)))
    return extend_approx(base, n, eps, prec)
