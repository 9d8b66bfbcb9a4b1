import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from egelab import wickoracle as w
from egelab.errors import BudgetExceeded, Unsupported
from egelab.momentcomb import catalan
from egelab.sampling import EgeParams, derive_stream, sample_ege

HALF = Fraction(1, 2)


def test_classify_examples():
    c = w.classify_tuple((1, 2, 1, 2))
    assert (c.kind, c.q1, c.q2) == (w.TWO_FOUR_TREE, -1, 1)
    c = w.classify_tuple((1, 2, 3))
    assert (c.kind, c.q1, c.q2) == (w.OTHER, Fraction(3, 2), 0)
    c = w.classify_tuple((1, 2))
    assert (c.kind, c.q1, c.q2) == (w.DOUBLE_TREE, 0, 1)
    assert w.classify_tuple((4, 4)).kind == w.DOUBLE_UNICYCLIC


def test_count_examples():
    assert w.count_class(3, 2, w.DOUBLE_TREE) == 6
    assert w.count_class(4, 4, w.DOUBLE_TREE) == 48
    assert w.count_class(2, 3, w.DOUBLE_TREE) == 0


def test_count_matches_brute_force_tuples():
    for n, k in ((3, 4), (2, 5), (4, 3)):
        for kind in (w.DOUBLE_TREE, w.DOUBLE_UNICYCLIC, w.TWO_FOUR_TREE, w.OTHER):
            brute = sum(1 for i in itertools.product(range(n), repeat=k)
                        if w.classify_tuple(i).kind == kind)
            assert w.count_class(n, k, kind) == brute


def test_count_law():
    for m in range(1, 4):
        for n in range(1, 6):
            assert w.count_class(n, 2 * m, w.DOUBLE_TREE) == w.falling(n, m + 1) * catalan(m)


def test_double_tree_edges_are_opposite_pairs():
    for k in range(1, 7):
        for i in itertools.product(range(4), repeat=k):
            if w.classify_tuple(i).kind != w.DOUBLE_TREE:
                continue
            mult = w.tuple_graph(i).multiplicities()
            for (u, v), c in mult.items():
                assert u != v and c == 1 and mult[(v, u)] == 1


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        w.count_class(11, 8, w.DOUBLE_TREE)
    with pytest.raises(BudgetExceeded):
        w.exact_trace_expectation(20, 7, 0.5)


def test_wick_examples():
    assert w.wick_pair_expectation([((1, 2), False), ((2, 1), False)], HALF) == HALF
    assert w.wick_pair_expectation([((1, 2), False), ((1, 2), True)], 0.3) == 1
    four = [((1, 2), False), ((1, 2), False), ((2, 1), False), ((2, 1), False)]
    assert w.wick_pair_expectation(four, HALF) == 2 * HALF ** 2
    assert w.wick_pair_expectation([((1, 2), False)] * 3, HALF) == 0
    mixed = [((1, 2), False), ((2, 1), False), ((1, 2), True), ((2, 1), True)]
    assert w.wick_pair_expectation(mixed, HALF) == 1 + HALF ** 2


def test_matchings_count():
    for m in (2, 4, 6, 8):
        assert len(w.matchings(m)) == math.prod(range(m - 1, 0, -2))


def test_trace_expectations():
    for n in range(1, 5):
        for t in (Fraction(0), HALF, Fraction(1)):
            assert w.exact_trace_expectation(n, 2, t) == n * n * t
            assert w.exact_trace_expectation(n, 1, t) == 0
            assert w.exact_trace_expectation(n, 3, t) == 0
    assert w.exact_trace_expectation(5, 3, HALF) == 0


def test_gue_moments_scale():
    # E Tr A^4 = t^2 (2 n^3 + n) matches the GUE genus expansion
    for n in range(1, 5):
        assert w.exact_trace_expectation(n, 4, HALF) == HALF ** 2 * (2 * n ** 3 + n)


def test_covariance_examples():
    for n in range(1, 5):
        assert w.exact_product_covariance(n, 1, 1, True, HALF) == n
        for t in (Fraction(0), HALF):
            for conj in (False, True):
                assert w.exact_product_covariance(n, 1, 2, conj, t) == 0


def test_covariance_22_at_n40():
    t = HALF
    val = w.eval_polynomial(w.covariance_polynomial(2, 2, False), 40, t) / Fraction(40) ** 2
    assert abs(val - 2 * t * t) <= Fraction(5, 1000)


def test_simple_edges_have_zero_weight():
    for k in range(1, 6):
        for i in itertools.product(range(k), repeat=k):
            counts = {}
            for u, v in w.tuple_graph(i).edges:
                counts[frozenset((u, v))] = counts.get(frozenset((u, v)), 0) + 1
            if 1 in counts.values():
                edges = [((i[p], i[(p + 1) % k]), False) for p in range(k)]
                assert not w.wick_t_polynomial(edges)


def test_polynomial_route_matches_enumeration():
    for n in (1, 2, 3, 4):
        for k in range(1, 7):
            if n ** k > 5000:
                continue
            assert w.exact_trace_expectation(n, k, HALF) == w.eval_polynomial(w.moment_polynomial(k), n, HALF)
        for k1, k2 in ((1, 1), (2, 2), (1, 3), (2, 3), (3, 3)):
            if n ** (k1 + k2) > 5000:
                continue
            for conj in (False, True):
                a = w.exact_product_covariance(n, k1, k2, conj, HALF)
                b = w.eval_polynomial(w.covariance_polynomial(k1, k2, conj), n, HALF)
                assert a == b


def test_expected_U2_vanishes():
    for n in range(1, 8):
        for t in (Fraction(0), Fraction(1, 3), Fraction(1)):
            assert w.expected_U(n, 2, t) == 0


def test_h_coeff():
    for t in (Fraction(0), Fraction(1, 4), HALF, Fraction(1)):
        assert w.h_coeff(1, t) == t
    assert w.h_coeff(1, 0) == 0
    # regression value from the first exact interpolation
    assert w.h_coeff(2, HALF) == HALF
    assert w.h_coeff(2, 0.5) == 0.5
    with pytest.raises(Unsupported):
        w.h_coeff(7, HALF)


def test_h_coeff_closed_pattern():
    for k in range(1, 7):
        for t in (Fraction(1, 3), Fraction(3, 4)):
            assert w.h_coeff(k, t) == k * t ** k


def test_trace_expectation_agrees_with_sampler():
    p = EgeParams(3, 0.5)
    s = derive_stream(11, 0)
    vals = np.empty(10 ** 5, dtype=complex)
    for i in range(len(vals)):
        a = sample_ege(s, p)
        a2 = a @ a
        vals[i] = np.trace(a2 @ a2)
    exact = float(w.exact_trace_expectation(3, 4, HALF))
    se = math.sqrt(vals.real.var() + vals.imag.var()) / math.sqrt(len(vals))
    assert abs(vals.mean() - exact) <= 4 * se
