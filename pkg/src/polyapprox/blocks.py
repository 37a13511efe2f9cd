"""Univariate building blocks: dyadic decay products, multiplicative
reciprocal approximants, reciprocal powers, threshold amplifiers, and the
interval indicator assembled from them.

The interval indicator is returned in factored form (StructPoly); its dense
monomial expansion is astronomically large at the degrees the error targets
force, while evaluation of the factored form is cheap.
"""

from fractions import Fraction
import math

import mpmath
from mpmath import mp

from .numcore import (DEFAULT_PREC, FLOAT, RATIONAL, PrecisionError, SBinomTail,
                      SComp, SDense, SPow, SProd, UniPoly, as_fraction, recheck,
                      to_mpf)
from .chebyshev import cheb_eval, cheb_poly


def _cheb_affine(c, a, b, backend=RATIONAL, prec=DEFAULT_PREC):
    """T_c(a*t + b) as a dense polynomial."""
    return cheb_poly(c, backend, prec).compose_affine(a, b)


def dyadic_decay_poly(n, d):
    """p with p(0) = 1 and |p(t)| <= 1/t^d on [1, n]; degree <= 7 d sqrt(n).

    Product over dyadic scales 2^i of T_ceil(sqrt(n/2^i))(1 + (2^i - t)/n),
    all raised to the d-th power and normalized at 0.  Exact rational."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1, d >= 0")
    levels = int(math.ceil(math.log2(n))) if n > 1 else 0
    prod = UniPoly([1])
    for i in range(levels + 1):
        c = int(math.ceil(math.sqrt(n / 2 ** i)))
        prod = prod * _cheb_affine(c, Fraction(-1, n), 1 + Fraction(2 ** i, n))
    prod = prod ** d
    return prod.scale(1 / prod.eval(0))


def reciprocal_approx(n, d):
    """(p, eps) with (1-eps)/t <= p(t) <= (1+eps)/t on [1, n], deg p = d,
    eps = 1/T_{d+1}((n+1)/(n-1)).  Exact rational for rational n > 1."""
    n = as_fraction(n)
    if n <= 1 or d < 0:
        raise ValueError("need n > 1, d >= 0")
    peak = cheb_eval(d + 1, (n + 1) / (n - 1))
    q = _cheb_affine(d + 1, Fraction(-2, 1) / (n - 1), 1 + Fraction(2, 1) / (n - 1))
    q = q.scale(Fraction(1) / peak)
    # q(0) = 1 exactly (the Chebyshev argument at t = 0 is the normalization
    # point), so 1 - q is divisible by t
    one_minus_q = UniPoly([1]) - q
    if one_minus_q.coeffs and one_minus_q.eval(0) != 0:
        raise ArithmeticError("reciprocal construction lost its root at 0")
    p = UniPoly(one_minus_q.coeffs[1:]) if one_minus_q.coeffs else UniPoly.zero()
    return p, Fraction(1) / peak


def reciprocal_corollary(n):
    """(p, d) with 1/(2t) <= p(t) <= 1/t on [1, n], d = floor(sqrt(2(n-1)))."""
    n = as_fraction(n)
    d = int(math.isqrt(int(2 * (n - 1)))) if n > 1 else 0
    # guard the float-free isqrt against non-integer 2(n-1)
    while (d + 1) ** 2 <= 2 * (n - 1):
        d += 1
    while d ** 2 > 2 * (n - 1):
        d -= 1
    if d < 0:
        d = 0
    p, eps = reciprocal_approx(n, d)
    if eps > Fraction(1, 3):
        # tiny ranges: raise the degree until the sandwich 1/(2t)..1/t holds
        while eps > Fraction(1, 3):
            d += 1
            p, eps = reciprocal_approx(n, d)
    # (1-eps)/t >= 1/(2t) iff eps <= 1/2; scale down so p <= 1/t exactly
    p = p.scale(Fraction(1) / (1 + eps))
    return p, d


def reciprocal_power_approx(d, D):
    """p(t) = sum_{i<=D} C(i+d-1, i) (1-t)^i, the degree-D Taylor section of
    1/t^d at t = 1.  Integer coefficients."""
    if d < 1 or D < 0:
        raise ValueError("need d >= 1, D >= 0")
    base = UniPoly([1, -1])
    p = UniPoly.zero()
    pw = UniPoly([1])
    for i in range(D + 1):
        p = p + pw.scale(math.comb(i + d - 1, i))
        pw = pw * base
    return p


def reciprocal_power_error_bound(d, D, u):
    """|1/t^d - p(t)| <= |1-t|^(D+1) C(D+d, d) d on [d/(d+D), 2-d/(d+D)]."""
    u = as_fraction(u)
    return abs(1 - u) ** (D + 1) * math.comb(D + d, d) * d


def amplifier_poly(d):
    """B_d(t) = sum_{i >= ceil(2.5 e^-7 d)} C(d,i) t^i (1-t)^(d-i), dense."""
    lo = int(math.ceil(2.5 * math.exp(-7) * d))
    t = UniPoly([0, 1])
    omt = UniPoly([1, -1])
    p = UniPoly.zero()
    for i in range(lo, d + 1):
        p = p + (t ** i) * (omt ** (d - i)).scale(math.comb(d, i))
    return p


def binom_tail(d, lo, u, prec=DEFAULT_PREC):
    """sum_{i=lo}^d C(d,i) u^i (1-u)^(d-i) at scalar u."""
    return SBinomTail(d, lo, prec).eval(u)


def _amplifier_degree(u_bad, u_good, eps, prec=DEFAULT_PREC):
    """Smallest (up to a 5% search ladder) degree whose exact-threshold
    binomial tail maps [0, u_bad] below eps and [u_good, 1] above 1 - eps."""
    mid = (u_bad + u_good) / 2

    def kl(a, b):
        with mp.workprec(prec):
            a, b = to_mpf(a, prec), to_mpf(b, prec)
            return a * mpmath.log(a / b) + (1 - a) * mpmath.log((1 - a) / (1 - b))

    with mp.workprec(prec):
        rate = min(kl(mid, u_bad), kl(mid, u_good))
        est = int(mpmath.log(1 / to_mpf(eps, prec)) / rate) + 1
    d = max(8, est)

    def ok(d):
        lo = int(math.ceil(mid * d))

        def build(p):
            bad = binom_tail(d, lo, u_bad, p)
            good = binom_tail(d, lo, u_good, p)
            return [bad, good]

        bad, good = recheck(build, prec)
        return bad <= to_mpf(eps, prec) and 1 - good <= to_mpf(eps, prec)

    while not ok(d):
        d = int(d * 1.05) + 1
    return d, int(math.ceil(mid * d))


def or_continuous_approx(n, eps, prec=DEFAULT_PREC):
    """p with p([0,1]) in [1-eps, 1], |p| <= 1 on (1,2], 0 <= p <= eps on
    (2,n].  Chebyshev bump normalized by its exact maximum, then pushed
    through a binomial threshold amplifier.  Factored form."""
    n = as_fraction(n)
    if n <= 2:
        raise ValueError("need n > 2")
    c = int(math.ceil(math.sqrt(n)))
    while (c - 1) ** 2 >= n:
        c -= 1
    q = _cheb_affine(c, Fraction(-1, 1) / n, 1 + Fraction(2, 1) / n)
    peak = q.eval(0)          # exact maximum of q on [0, n]
    qstar = (q + UniPoly([1])).scale(Fraction(1) / (peak + 1))
    u_bad = Fraction(2) / (peak + 1)
    u_good = Fraction(3) / (peak + 1)
    d_amp, lo = _amplifier_degree(u_bad, u_good, eps, prec)
    return SComp(SBinomTail(d_amp, lo, prec), SDense(qstar))


_INDICATOR_CACHE = {}


def interval_indicator(n, d, eps, prec=DEFAULT_PREC):
    """p with |p - 1| <= eps on [0,1], |p| <= 1 + eps on (1,2], and
    |p(t)| <= eps/t^d on (2,n].  Factored form p1^d * p2(p1) * p3."""
    n = as_fraction(n)
    eps = as_fraction(eps)
    key = (n, d, eps, prec)
    if key in _INDICATOR_CACHE:
        return _INDICATOR_CACHE[key]
    _INDICATOR_CACHE[key] = _build_indicator(n, d, eps, prec)
    return _INDICATOR_CACHE[key]


def _build_indicator(n, d, eps, prec):
    if n <= 2 or eps <= 0:
        raise ValueError("need n > 2, eps > 0")
    if d == 0:
        # no decay requirement; the amplified bump alone is the indicator
        return or_continuous_approx(n, eps, prec)
    p1, _ = reciprocal_corollary(n + 1)
    p1 = p1.compose_affine(1, 1)       # sandwich 1/(2(t+1)) .. 1/(t+1) on [0,n]
    D = 5 * d + 1
    while Fraction(5, 6) ** (D + 1) * math.comb(D + d, d) * d > eps / 2:
        D += 1
    p2 = reciprocal_power_approx(d, D)
    eps3 = min(eps / (2 * math.comb(D + d, d)), eps / 4)
    p3 = or_continuous_approx(n, eps3, prec)
    return SProd([SPow(SDense(p1), d), SComp(SDense(p2), SDense(p1)), p3])
