"""Exact small-size ground truth for trace moments of elliptic matrices.

Entries of ``A`` are jointly Gaussian and centered with

    E[a_uv a_xy]             = t * [(x, y) == (v, u)]
    E[a_uv conj(a_xy)]       =     [(x, y) == (u, v)]
    E[conj(a_uv) conj(a_xy)] = t * [(x, y) == (v, u)]

so every moment is a sum over perfect matchings (Wick). Trace moments are
obtained by brute force over index tuples. A tuple's contribution only
depends on which positions share an index, so tuples are grouped by their
equality pattern (a restricted growth string) and weighted by the number
of injective labellings; nothing asymptotic is used.

A second route expands each moment as a polynomial in ``n`` by summing,
over matchings, ``t^(#same-kind pairs) * n^(#index classes forced equal)``.
It reaches sizes where enumeration is out of budget and is checked against
enumeration in the tests.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .chebmod import alpha
from .errors import BudgetExceeded, Unsupported

__all__ = ['ENUM_BUDGET', 'H_COEFF_MAX_K', 'DirectedMultigraph', 'GraphClass',
           'DOUBLE_TREE', 'DOUBLE_UNICYCLIC', 'TWO_FOUR_TREE', 'OTHER',
           'tuple_graph', 'classify_tuple', 'count_class', 'matchings',
           'wick_pair_expectation', 'wick_t_polynomial', 'exact_trace_expectation',
           'exact_product_covariance', 'moment_polynomial', 'covariance_polynomial',
           'eval_polynomial', 'expected_U', 'h_coeff', 'falling']

#: Largest ``n**k`` an enumeration may cover.
ENUM_BUDGET = 10 ** 8
#: Largest ``k`` accepted by :func:`h_coeff`.
H_COEFF_MAX_K = 6

DOUBLE_TREE = "DoubleTree"
DOUBLE_UNICYCLIC = "DoubleUnicyclic"
TWO_FOUR_TREE = "TwoFourTree"
OTHER = "Other"

_KINDS = {(Fraction(0), 1): DOUBLE_TREE, (Fraction(0), 0): DOUBLE_UNICYCLIC,
          (Fraction(-1), 1): TWO_FOUR_TREE}


def falling(n, m):
    """Falling factorial ``n (n-1) ... (n-m+1)``; zero when ``m > n``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    out = 1
    for j in range(m):
        out *= n - j
    return out


@dataclass(frozen=True)
class DirectedMultigraph:
    vertices: frozenset
    edges: tuple

    def __post_init__(self):
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise ValueError("edge endpoint outside the vertex set")

    def multiplicities(self):
        return Counter(self.edges)

    def undirected(self):
        """Underlying simple undirected edge set; loops are kept."""
        return {frozenset(e) for e in self.edges}


@dataclass(frozen=True)
class GraphClass:
    kind: str
    q1: Fraction
    q2: int


def tuple_graph(i):
    """Cyclic multigraph with edges ``(i_1,i_2), ..., (i_k,i_1)``."""
    i = tuple(i)
    if not i:
        raise ValueError("tuple must be non-empty")
    edges = tuple((i[p], i[(p + 1) % len(i)]) for p in range(len(i)))
    return DirectedMultigraph(frozenset(i), edges)


def classify_tuple(i):
    """Graph type of a tuple from ``q1 = |Ebar| - |E|/2`` and ``q2 = |V| - |Ebar|``."""
    g = tuple_graph(i)
    ebar = len(g.undirected())
    q1 = Fraction(ebar) - Fraction(len(g.edges), 2)
    q2 = len(g.vertices) - ebar
    return GraphClass(_KINDS.get((q1, q2), OTHER), q1, q2)


def _check_budget(n, k):
    if n ** k > ENUM_BUDGET:
        raise BudgetExceeded(f"enumeration over n^k = {n}^{k} exceeds {ENUM_BUDGET}")


@lru_cache(maxsize=None)
def _patterns(k, max_blocks):
    # restricted growth strings of length k using at most max_blocks labels
    out = []

    def rec(prefix, nblocks):
        if len(prefix) == k:
            out.append((tuple(prefix), nblocks))
            return
        for b in range(min(nblocks + 1, max_blocks)):
            prefix.append(b)
            rec(prefix, max(nblocks, b + 1))
            prefix.pop()

    rec([], 0)
    return tuple(out)


def _weighted_patterns(n, k):
    _check_budget(n, k)
    for pat, nb in _patterns(k, n):
        yield pat, falling(n, nb)


def count_class(n, k, kind):
    """Number of tuples ``[k] -> [n]`` whose graph has the given kind."""
    if k < 1:
        raise ValueError("k must be at least 1")
    total = 0
    for pat, w in _weighted_patterns(n, k):
        if classify_tuple(pat).kind == kind:
            total += w
    return total


def matchings(m):
    """All perfect matchings of ``range(m)`` as tuples of pairs."""
    return _matchings(tuple(range(m)))


@lru_cache(maxsize=None)
def _matchings(items):
    if not items:
        return ((),)
    if len(items) % 2:
        return ()
    first, rest = items[0], items[1:]
    out = []
    for j, other in enumerate(rest):
        remaining = rest[:j] + rest[j + 1:]
        for sub in _matchings(remaining):
            out.append(((first, other),) + sub)
    return tuple(out)


def _pair_t_power(e1, e2):
    """Power of ``t`` in the pair covariance, or None when it vanishes."""
    (p, cp), (q, cq) = e1, e2
    if cp == cq:
        return 1 if q == (p[1], p[0]) else None
    return 0 if q == p else None


def wick_t_polynomial(edges):
    """Wick expectation as ``Counter{power of t: number of matchings}``.

    ``edges`` is a sequence of ``((u, v), conjugated)`` pairs.
    """
    edges = [(tuple(e), bool(c)) for e, c in edges]
    poly = Counter()
    if len(edges) % 2:
        return poly

    def rec(remaining, power):
        if not remaining:
            poly[power] += 1
            return
        first, rest = remaining[0], remaining[1:]
        for j, other in enumerate(rest):
            tp = _pair_t_power(edges[first], edges[other])
            if tp is not None:
                rec(rest[:j] + rest[j + 1:], power + tp)

    rec(tuple(range(len(edges))), 0)
    return poly


def _eval_t_poly(poly, t):
    return sum(c * t ** p for p, c in poly.items()) if poly else 0 * t


def wick_pair_expectation(edges, t):
    """``E prod a^{(*)}_{uv}`` over the listed edges by Wick's formula.

    Exact when ``t`` is a :class:`fractions.Fraction` or integer.
    """
    return _eval_t_poly(wick_t_polynomial(edges), t)


def _trace_edges(pat, conj=False, offset=0):
    k = len(pat)
    return [((pat[p], pat[(p + 1) % k]), conj) for p in range(k)]


def exact_trace_expectation(n, k, t):
    """``E Tr A^k`` at order ``n`` by enumeration of index tuples."""
    if k < 1:
        raise ValueError("k must be at least 1")
    total = 0 * t
    for pat, w in _weighted_patterns(n, k):
        total += w * wick_pair_expectation(_trace_edges(pat), t)
    return total


def exact_product_covariance(n, k1, k2, conj2, t):
    """``E[(Tr A^k1 - E)(Tr A^k2 - E)^{(*)}]`` by enumeration.

    With ``conj2`` the second factor is conjugated.
    """
    if k1 < 1 or k2 < 1:
        raise ValueError("k1 and k2 must be at least 1")
    total = 0 * t
    for pat, w in _weighted_patterns(n, k1 + k2):
        edges = _trace_edges(pat[:k1]) + _trace_edges(pat[k1:], conj2)
        total += w * wick_pair_expectation(edges, t)
    m1 = exact_trace_expectation(n, k1, t)
    m2 = exact_trace_expectation(n, k2, t)
    if conj2 and not isinstance(t, (Fraction, int)):
        m2 = complex(m2).conjugate()
    return total - m1 * m2


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _word_polynomial(lengths, conjs, cross_only):
    # positions of all edges with (source var, target var, conjugated, trace id)
    edges = []
    start = 0
    for tid, (k, c) in enumerate(zip(lengths, conjs)):
        for p in range(k):
            edges.append((start + p, start + (p + 1) % k, c, tid))
        start += k
    nvars = start
    poly = Counter()
    for m in matchings(len(edges)):
        if cross_only and all(edges[a][3] == edges[b][3] for a, b in m):
            continue
        uf = _UnionFind(nvars)
        tpow = 0
        for a, b in m:
            sa, da, ca, _ = edges[a]
            sb, db, cb, _ = edges[b]
            if ca == cb:
                uf.union(sb, da)
                uf.union(db, sa)
                tpow += 1
            else:
                uf.union(sb, sa)
                uf.union(db, da)
        comps = len({uf.find(v) for v in range(nvars)})
        poly[(tpow, comps)] += 1
    return poly


@lru_cache(maxsize=None)
def moment_polynomial(k):
    """``E Tr A^k`` as ``Counter{(t power, n power): count}``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return _word_polynomial((k,), (False,), False)


@lru_cache(maxsize=None)
def covariance_polynomial(k1, k2, conj2):
    """Covariance of ``Tr A^k1`` and ``Tr A^k2`` (optionally conjugated) as
    ``Counter{(t power, n power): count}``; only matchings linking the two
    traces survive the centering."""
    return _word_polynomial((k1, k2), (False, bool(conj2)), True)


def eval_polynomial(poly, n, t):
    """Evaluate a ``{(t power, n power): count}`` polynomial."""
    return sum(c * t ** a * n ** b for (a, b), c in poly.items()) if poly else 0 * t


def expected_U(n, k, t):
    """Exact ``E U_k`` with ``U_k = Tr P_k(A/sqrt(n)) + n t [k == 2]``.

    Pass Fractions for ``n`` and ``t`` to get an exact rational.
    """
    if isinstance(n, int):
        n = Fraction(n)
    total = 0 * t
    for j in range(k // 2 + 1):
        deg = k - 2 * j
        a = alpha(k, j, t)
        if deg == 0:
            total += a * n
        else:
            m = eval_polynomial(moment_polynomial(deg), n, t)
            total += a * m / n ** Fraction(deg, 2) if deg % 2 == 0 else a * m / n ** (deg / 2)
    if k == 2:
        total += n * t
    return total


def _solve_exact(rows, rhs):
    # Gauss-Jordan elimination over the rationals
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    size = len(m)
    for col in range(size):
        piv = next(r for r in range(col, size) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(size):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[-1] for row in m]


@lru_cache(maxsize=None)
def _e_constant_term(k, t):
    # e_{2k}(n) * n^(k-1) is a polynomial of degree k in n; fit it at
    # n = 1..k+1 and confirm at two further points
    t = Fraction(t)
    ns = list(range(1, k + 4))
    vals = [expected_U(n, 2 * k, t) * Fraction(n) ** (k - 1) for n in ns]
    fit_ns = ns[:k + 1]
    rows = [[Fraction(n) ** d for d in range(k + 1)] for n in fit_ns]
    coef = _solve_exact(rows, vals[:k + 1])
    for n, v in zip(ns[k + 1:], vals[k + 1:]):
        if sum(c * Fraction(n) ** d for d, c in enumerate(coef)) != v:
            raise ArithmeticError("expectation is not a Laurent polynomial of the expected degree")
    return coef[k - 1]


def h_coeff(k, t):
    """The constant ``h_{k,t}`` defined by ``e_{2k}(n) -> -k t^k + h_{k,t}``.

    Computed exactly: ``E U_{2k}`` is a Laurent polynomial in ``n``; its
    constant term comes from exact interpolation at ``k+3`` orders.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > H_COEFF_MAX_K:
        raise Unsupported(f"h_coeff supports k <= {H_COEFF_MAX_K}")
    exact = isinstance(t, (Fraction, int))
    tf = Fraction(t)
    h = _e_constant_term(k, tf) + k * tf ** k
    return h if exact else float(h)
