"""Independent ground-truth machinery: exact-rational minimax over finite
node sets (simplex LP and an alternation-based cross-check), multilinear
interpolation, symmetrization, and inclusion-exclusion expansion."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import math

from .numcore import UniPoly, as_fraction


# ---------------------------------------------------------------------------
# Exact two-phase simplex, Bland's rule.  Small dense tableaus only.


class Infeasible(Exception):
    pass


def _pivot(tab, basis, row, col):
    m = len(tab)
    piv = tab[row][col]
    tab[row] = [v / piv for v in tab[row]]
    for r in range(m):
        if r != row and tab[r][col] != 0:
            f = tab[r][col]
            tab[r] = [a - f * b for a, b in zip(tab[r], tab[row])]
    basis[row] = col


def _run_simplex(tab, basis, ncols):
    # objective row is tab[-1]; minimize, reduced costs in tab[-1][:-1]
    while True:
        col = None
        for j in range(ncols):
            if tab[-1][j] < 0:
                col = j
                break
        if col is None:
            return
        row = None
        best = None
        for r in range(len(tab) - 1):
            if tab[r][col] > 0:
                ratio = tab[r][-1] / tab[r][col]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[row]):
                    best, row = ratio, r
        if row is None:
            raise Infeasible("unbounded")
        _pivot(tab, basis, row, col)


def lp_min(c, A, b):
    """Minimize c.x subject to A x <= b, x >= 0, all exact rationals.
    Returns (optimal value, x)."""
    m, n = len(A), len(c)
    c = [as_fraction(v) for v in c]
    A = [[as_fraction(v) for v in row] for row in A]
    b = [as_fraction(v) for v in b]
    # columns: x (n) | slack (m) | artificial (k) | rhs
    art_rows = [i for i in range(m) if b[i] < 0]
    k = len(art_rows)
    ncols = n + m + k
    tab = []
    art_col = {}
    for idx, i in enumerate(art_rows):
        art_col[i] = n + m + idx
    for i in range(m):
        neg = i in art_col
        sgn = -1 if neg else 1
        row = [sgn * v for v in A[i]]
        row += [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        if neg:
            row[n + i] = Fraction(-1)
        row += [Fraction(0)] * k
        if neg:
            row[art_col[i]] = Fraction(1)
        row.append(sgn * b[i])
        tab.append(row)
    basis = [art_col.get(i, n + i) for i in range(m)]
    # phase 1
    if k:
        obj = [Fraction(0)] * (ncols + 1)
        for r, bi in enumerate(basis):
            if bi >= n + m:
                obj = [o - v for o, v in zip(obj, tab[r])]
        for j in range(n + m, ncols):
            obj[j] += 1
        tab.append(obj)
        _run_simplex(tab, basis, n + m)  # artificials never re-enter
        if tab[-1][-1] != 0:
            raise Infeasible("phase 1 ended with positive infeasibility")
        tab.pop()
        # drive leftover artificials out of the basis
        for r in range(m):
            if basis[r] >= n + m:
                for j in range(n + m):
                    if tab[r][j] != 0:
                        _pivot(tab, basis, r, j)
                        break
    # phase 2
    obj = [Fraction(v) for v in c] + [Fraction(0)] * (m + k) + [Fraction(0)]
    for r, bi in enumerate(basis):
        if obj[bi] != 0:
            f = obj[bi]
            obj = [o - f * v for o, v in zip(obj, tab[r])]
    tab.append(obj)
    _run_simplex(tab, basis, n + m)
    x = [Fraction(0)] * n
    for r, bi in enumerate(basis):
        if bi < n:
            x[bi] = tab[r][-1]
    val = sum(ci * xi for ci, xi in zip(c, x))
    return val, x


# ---------------------------------------------------------------------------
# Minimax over finite node sets.


@dataclass
class MinimaxResult:
    eps_star: Fraction
    poly: UniPoly
    active_points: list

    def to_json(self):
        d = self.poly.to_json()
        d["eps_star"] = "%d/%d" % (self.eps_star.numerator, self.eps_star.denominator)
        d["active_points"] = [str(t) for t in self.active_points]
        return d


def minimax_lp(nodes, values, degree):
    """Best uniform approximation by a degree <= degree polynomial over the
    given nodes, solved exactly.  Returns a MinimaxResult."""
    nodes = [as_fraction(t) for t in nodes]
    values = [as_fraction(v) for v in values]
    if len(set(nodes)) != len(nodes):
        raise ValueError("repeated node")
    if degree >= len(nodes) - 1:
        p = _interp(nodes, values)
        return MinimaxResult(Fraction(0), p, list(nodes))
    # variables: u_0..u_d, v_0..v_d (coeffs = u - v), e
    d = degree
    nv = 2 * (d + 1) + 1
    c = [Fraction(0)] * (2 * (d + 1)) + [Fraction(1)]
    A, b = [], []
    for t, f in zip(nodes, values):
        pows = [t ** j for j in range(d + 1)]
        A.append(pows + [-p for p in pows] + [Fraction(-1)])
        b.append(f)
        A.append([-p for p in pows] + pows + [Fraction(-1)])
        b.append(-f)
    val, x = lp_min(c, A, b)
    coeffs = [x[j] - x[d + 1 + j] for j in range(d + 1)]
    p = UniPoly(coeffs)
    eps = val
    active = [t for t, f in zip(nodes, values) if abs(p.eval(t) - f) == eps]
    return MinimaxResult(eps, p, active)


def _interp(nodes, values):
    from .numcore import lagrange_interpolate
    return lagrange_interpolate(nodes, values)


def minimax_reference(nodes, values, degree):
    """Alternation-based cross-check: the minimax error over a finite set
    equals the largest equioscillation error over its (degree+2)-point
    subsets.  Exponential in the node count; small instances only."""
    nodes = [as_fraction(t) for t in nodes]
    values = [as_fraction(v) for v in values]
    if degree >= len(nodes) - 1:
        return Fraction(0)
    order = sorted(range(len(nodes)), key=lambda i: nodes[i])
    best = Fraction(0)
    for sub in combinations(order, degree + 2):
        h = _alternation_error([nodes[i] for i in sub], [values[i] for i in sub], degree)
        if h > best:
            best = h
    return best


def _alternation_error(ts, fs, d):
    # solve p(t_j) + (-1)^j h = f_j for a_0..a_d, h
    n = d + 2
    M = []
    for j, t in enumerate(ts):
        M.append([t ** i for i in range(d + 1)] + [Fraction((-1) ** j)] + [fs[j]])
    sol = _gauss(M)
    return abs(sol[-1]) if sol is not None else Fraction(0)


def _gauss(M):
    n = len(M)
    M = [row[:] for row in M]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [v / pv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def eps_profile(nodes, values, max_degree):
    """eps_star for every degree 0..max_degree (monotone nonincreasing)."""
    return [minimax_lp(nodes, values, d).eps_star for d in range(max_degree + 1)]


# ---------------------------------------------------------------------------
# Multilinear polynomials over {0,1}^n, as {frozenset: coeff} maps.


class MultiPoly:
    def __init__(self, terms=None):
        self.terms = {frozenset(k): as_fraction(v)
                      for k, v in (terms or {}).items() if v != 0}

    @property
    def degree(self):
        return max((len(s) for s in self.terms), default=-1)

    def eval(self, x):
        """x is an indexable 0/1 assignment."""
        tot = Fraction(0)
        for s, c in self.terms.items():
            if all(x[i] for i in s):
                tot += c
        return tot

    def norm(self):
        return sum(map(abs, self.terms.values()), Fraction(0))

    def add_term(self, s, c):
        s = frozenset(s)
        c = self.terms.get(s, Fraction(0)) + c
        if c == 0:
            self.terms.pop(s, None)
        else:
            self.terms[s] = c


def multilinear_interpolant(nvars, f, max_weight=None):
    """The unique multilinear polynomial agreeing with f on all 0/1 inputs of
    weight <= max_weight (all inputs when max_weight is None).  Built by the
    weight-ascending correction recursion."""
    if max_weight is None:
        max_weight = nvars
    p = MultiPoly()
    for w in range(max_weight + 1):
        for sup in combinations(range(nvars), w):
            x = [0] * nvars
            for i in sup:
                x[i] = 1
            delta = as_fraction(f(tuple(x))) - p.eval(x)
            if delta != 0:
                p.add_term(sup, delta)
    return p


def symmetrize(mpoly, blocks):
    """Average of mpoly over permutations acting within each block.

    Returns a dict mapping per-block monomial degree tuples (s_1..s_k) to
    coefficients; the symmetrized value at block weights (t_1..t_k) is
    sum coeff * prod C(t_b, s_b).  A monomial with s_b variables in block b
    contributes coeff / prod C(n_b, s_b)."""
    idx = {}
    for bi, blk in enumerate(blocks):
        for v in blk:
            idx[v] = bi
    out = {}
    for s, c in mpoly.terms.items():
        sig = [0] * len(blocks)
        for v in s:
            sig[idx[v]] += 1
        sig = tuple(sig)
        w = c
        for bi, sb in enumerate(sig):
            w /= math.comb(len(blocks[bi]), sb)
        out[sig] = out.get(sig, Fraction(0)) + w
    return {k: v for k, v in out.items() if v != 0}


def sym_eval(sym, weights):
    tot = Fraction(0)
    for sig, c in sym.items():
        prod = c
        for sb, t in zip(sig, weights):
            prod *= math.comb(t, sb)
        tot += prod
    return tot


def sym_to_unipoly(sym, backend="rational"):
    """Single-block symmetrization as a dense polynomial in the weight,
    using C(t, s) = t(t-1)...(t-s+1)/s!."""
    p = UniPoly.zero()
    for (s,), c in sym.items():
        binom = UniPoly([1])
        for i in range(s):
            binom = binom * UniPoly([-i, 1])
        p = p + binom.scale(Fraction(c, math.factorial(s)))
    return p


def incl_excl_expand(k):
    """prod_{i<k} f_i as a signed combination of disjunctions:
    returns [(sign, subset)] with sign = (-1)^(|S|+1) over nonempty S."""
    out = []
    for r in range(1, k + 1):
        for sub in combinations(range(k), r):
            out.append(((-1) ** (r + 1), frozenset(sub)))
    return out
