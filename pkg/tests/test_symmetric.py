import itertools
import math
from fractions import Fraction

import mpmath
from mpmath import mp
import pytest

from polyapprox.numcore import RATIONAL, SplitMix64, to_mpf
from polyapprox.symmetric import (SymSpec, achievable_counts, and_or_approx,
                                  exact_weight_approx,
                                  restricted_conjunction_approx,
                                  restricted_disjunction_approx,
                                  sampling_approx, single_zero_factor,
                                  symmetric_approx)


def _spec_and(n):
    return SymSpec(n, [0] * n + [1])


def _spec_or(n):
    return SymSpec(n, [0] + [1] * n)


def _check(approx, tol=0):
    spec = approx.spec
    n = spec.n
    with mp.workprec(256):
        worst = mpmath.mpf(0)
        for w in range(n + 1):
            if approx.poly.backend == RATIONAL:
                v = to_mpf(approx.poly.eval(w), 256)
            else:
                v = approx.poly.eval(w, 256)
            worst = max(worst, abs(v - to_mpf(spec.values[w], 256)))
        assert worst <= to_mpf(approx.certified_eps, 256) + mpmath.mpf(2) ** -100
    return worst


def test_spec_validation():
    with pytest.raises(ValueError):
        SymSpec(3, [0, 1])
    with pytest.raises(ValueError):
        SymSpec(2, [0, 2, 0])


def test_single_zero_factor_contract():
    n, m = 20, 15
    with mp.workprec(128):
        f = single_zero_factor(n, m, 128)
        assert abs(f.eval(n) - 1) < mpmath.mpf(2) ** -100
        assert abs(f.eval(m)) < mpmath.mpf(2) ** -100
        for w in range(n + 1):
            assert abs(f.eval(w)) <= 1 + mpmath.mpf(2) ** -100


def test_and_approx_certified_error_is_honest():
    for n in (8, 16):
        d = 1
        while True:
            a = and_or_approx(n, d, "and")
            if float(a.certified_eps) <= 1 / 3:
                break
            d += 1
        assert a.spec.values == _spec_and(n).values
        _check(a)
        assert d <= 3 * math.isqrt(n) + 3


def test_or_is_reflected_and():
    n = 8
    a = and_or_approx(n, 5, "and")
    o = and_or_approx(n, 5, "or")
    assert o.spec.values == _spec_or(n).values
    _check(o)
    with mp.workprec(128):
        for w in range(n + 1):
            assert abs(o.poly.eval(w) - (1 - a.poly.eval(n - w))) < \
                mpmath.mpf(2) ** -60


def test_and_error_decreases_with_degree():
    n = 16
    errs = [float(and_or_approx(n, d, "and").certified_eps)
            for d in (2, 4, 8, 12)]
    assert errs[-1] < errs[0]
    assert errs[-1] <= 1 / 3


def test_exact_weight_construction():
    n, eps = 20, Fraction(1, 8)
    for k in (0, 2):
        a = exact_weight_approx(n, k, k, eps)
        _check(a)
        assert float(a.certified_eps) <= 1 / 8
        # structurally exact near the boundary
        with mp.workprec(256):
            for w in sorted(a.exact_on):
                v = a.poly.eval(w) if a.poly.backend == RATIONAL \
                    else a.poly.eval(w, 256)
                assert abs(to_mpf(v, 256) - to_mpf(a.spec.values[w], 256)) < \
                    mpmath.mpf(2) ** -100


def test_exact_weight_small_n_is_interpolant():
    a = exact_weight_approx(6, 1, 1, Fraction(1, 8))
    assert a.construction == "interpolant"
    assert a.certified_eps == 0
    for w in range(7):
        assert a.poly.eval(w) == a.spec.values[w]


def test_symmetric_approx_general_spectrum():
    n = 16
    rng = SplitMix64(5)
    vals = [rng.fraction() for _ in range(2)] + [Fraction(1, 2)] * (n - 3) + \
        [rng.fraction() for _ in range(2)]
    spec = SymSpec(n, vals)
    a = symmetric_approx(spec, Fraction(1, 4))
    _check(a)
    assert float(a.certified_eps) <= 1 / 4


def test_symmetric_approx_constant():
    spec = SymSpec(8, [Fraction(1, 3)] * 9)
    a = symmetric_approx(spec, Fraction(1, 8))
    assert float(a.certified_eps) <= 1 / 8


def test_sampling_exact_at_ends_and_close_between():
    n, k = 32, 2
    rng = SplitMix64(9)
    vals = [rng.fraction() for _ in range(k + 1)] + [0] * (n - k)
    spec = SymSpec(n, vals)
    a = sampling_approx(spec, Fraction(1, 8))
    assert a.poly.backend == RATIONAL
    for w in range(n + 1):
        err = abs(a.poly.eval(w) - spec.values[w])
        if w <= k or w >= n - k:
            assert err == 0, w
        else:
            assert err <= Fraction(1, 8), w
    assert a.pi_norm_bound >= a.pq_norm


def test_sampling_passthrough_for_wide_support():
    spec = SymSpec(8, [Fraction(1, 2)] * 4 + [0] * 5)
    a = sampling_approx(spec, Fraction(1, 8))
    assert a.construction == "interpolant"
    assert a.certified_eps == 0


def test_achievable_counts():
    assert achievable_counts(6, 2, {0, 1}, {2}) == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        achievable_counts(4, 2, {0}, {0})


@pytest.mark.parametrize("which", ["disjunction", "conjunction"])
def test_restricted_linear_form_approx(which):
    nvars, n = 5, 2
    A, B = frozenset({0, 1}), frozenset({2})
    d = 4
    if which == "disjunction":
        res = restricted_disjunction_approx(nvars, n, A, B, d)
    else:
        res = restricted_conjunction_approx(nvars, n, A, B, d)
    eps = float(res.certified_eps)
    assert eps <= 1 / 2
    for x in itertools.product((0, 1), repeat=nvars):
        if sum(x) > n:
            continue
        sat = [x[i] for i in A] + [1 - x[i] for i in B]
        truth = (1 if any(sat) else 0) if which == "disjunction" else \
            (1 if all(sat) else 0)
        s = res.count(x)
        v = float(res.poly.eval(s)) if res.poly.backend == RATIONAL else \
            float(res.poly.eval(s, 256))
        assert abs(v - truth) <= eps + 1e-12, (x, which)


def test_restricted_disjunction_exact_at_high_degree():
    nvars, n = 5, 2
    res = restricted_disjunction_approx(nvars, n, {0, 1, 2}, set(), 2 * n)
    assert res.certified_eps == 0
