"""Chebyshev polynomials of the first kind: exact coefficients, stable
evaluation, node sets, and the growth facts the constructions lean on."""

from fractions import Fraction

import mpmath
from mpmath import mp

from .numcore import (DEFAULT_PREC, FLOAT, RATIONAL, UniPoly, to_mpf)


def cheb_poly(d, backend=RATIONAL, prec=DEFAULT_PREC):
    """T_d as a dense polynomial via the three-term recurrence (exact)."""
    if d < 0:
        raise ValueError("negative degree")
    t0 = UniPoly([1], backend, prec)
    if d == 0:
        return t0
    t1 = UniPoly([0, 1], backend, prec)
    for _ in range(d - 1):
        t0, t1 = t1, t1.scale(2) * UniPoly([0, 1], backend, prec) - t0
    return t1


def cheb_eval(d, t, prec=None):
    """T_d(t) by the recurrence; exact when t is rational and prec is None."""
    if prec is None:
        t = t if isinstance(t, Fraction) else Fraction(t)
        a, b = Fraction(1), t
        for _ in range(d):
            a, b = b, 2 * t * b - a
        return a
    with mp.workprec(prec):
        tt = to_mpf(t, prec)
        a, b = mpmath.mpf(1), tt
        for _ in range(d):
            a, b = b, 2 * tt * b - a
        return a


def cheb_eval_closed(d, t, prec=DEFAULT_PREC):
    """((t - sqrt(t^2-1))^d + (t + sqrt(t^2-1))^d) / 2, valid for |t| >= 1."""
    with mp.workprec(prec):
        tt = to_mpf(t, prec)
        s = mpmath.sqrt(tt * tt - 1)
        return ((tt - s) ** d + (tt + s) ** d) / 2


def cheb_roots(d, prec=DEFAULT_PREC):
    """cos((2i-1)pi/2d) for i = 1..d, decreasing."""
    with mp.workprec(prec):
        return [mpmath.cos((2 * i - 1) * mpmath.pi / (2 * d)) for i in range(1, d + 1)]


def cheb_extrema(d, prec=DEFAULT_PREC):
    """cos(i pi/d) for i = 0..d; T_d alternates +-1 there."""
    with mp.workprec(prec):
        return [mpmath.cos(i * mpmath.pi / d) for i in range(d + 1)]


def cheb_factored(d, prec=DEFAULT_PREC):
    """2^(d-1) * prod (t - r_i) over the d roots, as a dense float polynomial."""
    if d == 0:
        return UniPoly([1], FLOAT, prec)
    p = UniPoly.from_roots(cheb_roots(d, prec), FLOAT, prec)
    return p.scale(Fraction(2) ** (d - 1))


def growth_lower_bounds(d, delta, prec=DEFAULT_PREC):
    """Lower bounds on T_d(1 + delta) for delta in [0, 1]:
    returns (1 + d^2 delta, 2^(d sqrt(delta) - 1))."""
    with mp.workprec(prec):
        dd = to_mpf(delta, prec)
        return (1 + d * d * dd, mpmath.mpf(2) ** (d * mpmath.sqrt(dd) - 1))


def derivative_lower_bound(d):
    """T_d'(t) >= d^2 for every t >= 1."""
    return d * d
