import itertools
import math
from fractions import Fraction

import pytest

from polyapprox.numcore import SplitMix64, UniPoly
from polyapprox.oracle import (Infeasible, MultiPoly, eps_profile,
                               incl_excl_expand, lp_min, minimax_lp,
                               minimax_reference, multilinear_interpolant,
                               sym_eval, sym_to_unipoly, symmetrize)


def test_lp_min_known_solution():
    # minimize x + y subject to x + 2y >= 2, 3x + y >= 3, x,y >= 0
    val, x = lp_min([Fraction(1), Fraction(1)],
                    [[Fraction(-1), Fraction(-2)], [Fraction(-3), Fraction(-1)]],
                    [Fraction(-2), Fraction(-3)])
    assert val == Fraction(7, 5)
    assert x == [Fraction(4, 5), Fraction(3, 5)]


def test_lp_min_infeasible():
    with pytest.raises(Infeasible):
        lp_min([Fraction(1)], [[Fraction(1)], [Fraction(-1)]],
               [Fraction(-1), Fraction(-2)])


def test_or2_degree1_error_is_one_quarter():
    res = minimax_lp([0, 1, 2], [0, 1, 1], 1)
    assert res.eps_star == Fraction(1, 4)
    errs = [abs(res.poly.eval(t) - v) for t, v in zip([0, 1, 2], [0, 1, 1])]
    assert max(errs) == Fraction(1, 4)
    assert len(res.active_points) >= 3


def test_and1_degree0_error_is_one_half():
    res = minimax_lp([0, 1], [0, 1], 0)
    assert res.eps_star == Fraction(1, 2)


def test_lp_matches_alternation_reference_on_random_spectra():
    rng = SplitMix64(11)
    for trial in range(20):
        n = 2 + rng.randint(0, 4)
        d = rng.randint(0, min(3, n - 1))
        vals = [rng.fraction() for _ in range(n + 1)]
        nodes = list(range(n + 1))
        lp = minimax_lp(nodes, vals, d).eps_star
        ref = minimax_reference(nodes, vals, d)
        assert lp == ref, (n, d, vals)


def test_eps_profile_monotone():
    vals = [Fraction(0)] + [Fraction(1)] * 6
    prof = eps_profile(list(range(7)), vals, 6)
    assert all(prof[i + 1] <= prof[i] for i in range(len(prof) - 1))
    assert prof[-1] == 0


def test_interpolation_degree_gives_zero_error():
    nodes = [0, 1, 2]
    vals = [Fraction(1), Fraction(-1), Fraction(2)]
    assert minimax_lp(nodes, vals, 2).eps_star == 0


def test_multilinear_interpolant_exact_on_cube():
    n = 4

    def f(x):
        return Fraction(sum(x) * x[0] - x[1] * x[2], 3)

    p = multilinear_interpolant(n, f)
    for x in itertools.product((0, 1), repeat=n):
        assert p.eval(x) == f(x)


def test_multilinear_low_weight_support():
    n = 5

    def f(x):
        return Fraction(1) if sum(x) == 0 else Fraction(0)

    p = multilinear_interpolant(n, f)
    assert all(len(s) <= n for s in p.terms)
    for x in itertools.product((0, 1), repeat=n):
        assert p.eval(x) == f(x)


def test_symmetrize_matches_permutation_average():
    n = 4
    p = MultiPoly({frozenset(): Fraction(1, 2),
                   frozenset({0}): Fraction(2),
                   frozenset({0, 1}): Fraction(-1),
                   frozenset({2, 3}): Fraction(1, 3)})
    sym = symmetrize(p, [list(range(n))])
    for w in range(n + 1):
        xs = [x for x in itertools.product((0, 1), repeat=n) if sum(x) == w]
        avg = sum(p.eval(x) for x in xs) / len(xs)
        assert sym_eval(sym, (w,)) == avg


def test_sym_to_unipoly_consistency():
    n = 3
    p = MultiPoly({frozenset({0}): Fraction(1), frozenset({1, 2}): Fraction(1)})
    sym = symmetrize(p, [list(range(n))])
    u = sym_to_unipoly(sym)
    for w in range(n + 1):
        assert u.eval(w) == sym_eval(sym, (w,))


def test_incl_excl_expands_conjunction_into_disjunctions():
    for k in (1, 2, 3):
        terms = incl_excl_expand(k)
        for x in itertools.product((0, 1), repeat=k):
            got = sum(sign * (1 if any(x[i] for i in sub) else 0)
                      for sign, sub in terms)
            assert got == (1 if all(x) else 0)
