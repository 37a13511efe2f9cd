import math
from fractions import Fraction

import mpmath
from mpmath import mp
import pytest

from polyapprox.blocks import (amplifier_poly, binom_tail, dyadic_decay_poly,
                               interval_indicator, or_continuous_approx,
                               reciprocal_approx, reciprocal_corollary,
                               reciprocal_power_approx,
                               reciprocal_power_error_bound)
from polyapprox.numcore import to_mpf

GRID_DENOM = 4


def _grid(lo, hi):
    return [Fraction(i, GRID_DENOM) for i in range(lo * GRID_DENOM,
                                                   hi * GRID_DENOM + 1)]


def test_dyadic_decay_properties():
    for n, d in ((16, 1), (16, 3), (32, 2)):
        p = dyadic_decay_poly(n, d)
        assert p.eval(0) == 1
        assert p.degree <= 7 * d * math.sqrt(n) + 1
        for t in _grid(1, n):
            assert abs(p.eval(t)) * t ** d <= 1, (n, d, t)


def test_reciprocal_sandwich():
    for n, d in ((8, 3), (20, 5)):
        p, eps = reciprocal_approx(n, d)
        assert p.degree == d
        assert 0 < eps < 1
        for t in _grid(1, n):
            v = p.eval(t)
            assert (1 - eps) <= v * t <= (1 + eps), (n, d, t)


def test_reciprocal_corollary_sandwich():
    for n in (5, 17, 64):
        p, d = reciprocal_corollary(n)
        assert p.degree <= d + 1
        for t in _grid(1, n):
            v = p.eval(t)
            assert Fraction(1, 2) <= v * t <= 1, (n, t)


def test_reciprocal_power_taylor_section():
    d, D = 3, 20
    p = reciprocal_power_approx(d, D)
    assert p.degree == D
    assert p.eval(1) == 1
    for num in range(60, 141, 10):
        u = Fraction(num, 100)
        err = abs(p.eval(u) - Fraction(1) / u ** d)
        assert err <= reciprocal_power_error_bound(d, D, u)


def test_amplifier_is_monotone_tail():
    d = 40
    p = amplifier_poly(d)
    assert p.degree <= d
    lo = int(math.ceil(2.5 * math.exp(-7) * d))
    for u in (Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)):
        direct = sum(Fraction(math.comb(d, i)) * u ** i * (1 - u) ** (d - i)
                     for i in range(lo, d + 1))
        assert p.eval(u) == direct
        with mp.workprec(128):
            bt = binom_tail(d, lo, u, 128)
            assert abs(bt - to_mpf(direct, 128)) < mpmath.mpf(2) ** -100


def test_or_continuous_contract():
    n, eps = 64, Fraction(1, 8)
    p = or_continuous_approx(n, eps, 128)
    with mp.workprec(128):
        e = to_mpf(eps, 128)
        for t in _grid(0, 1):
            v = p.eval(t, 128)
            assert 1 - e <= v <= 1 + e, t
        for t in _grid(1, 2):
            assert abs(p.eval(t, 128)) <= 1 + e, t
        for t in _grid(3, n):
            v = p.eval(t, 128)
            assert -e <= v <= e, t


@pytest.mark.parametrize("d", [0, 2])
def test_interval_indicator_contract(d):
    n, eps = 64, Fraction(1, 8)
    p = interval_indicator(n, d, eps, 128)
    with mp.workprec(128):
        e = to_mpf(eps, 128)
        for t in _grid(0, 1):
            assert abs(p.eval(t, 128) - 1) <= e, (d, t)
        for t in _grid(1, 2):
            assert abs(p.eval(t, 128)) <= 1 + e, (d, t)
        for t in _grid(3, n):
            v = p.eval(t, 128)
            assert abs(v) * to_mpf(Fraction(t), 128) ** d <= e, (d, t)


def test_interval_indicator_cached():
    a = interval_indicator(Fraction(32, 3), 2, Fraction(1, 8), 128)
    b = interval_indicator(Fraction(32, 3), 2, Fraction(1, 8), 128)
    assert a is b


def test_input_validation():
    with pytest.raises(ValueError):
        dyadic_decay_poly(0, 1)
    with pytest.raises(ValueError):
        reciprocal_approx(1, 2)
    with pytest.raises(ValueError):
        or_continuous_approx(2, Fraction(1, 8))
    with pytest.raises(ValueError):
        interval_indicator(10, 1, 0)
