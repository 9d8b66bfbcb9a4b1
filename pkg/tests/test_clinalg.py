import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from egelab.clinalg import (RESCALE_BASE, ScaledComplex, eigenvalues, hessenberg,
                            log_det, lu_factor, mat_mul, trace_powers)
from egelab.errors import DimensionError


def rand_c(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def naive_product(a, b):
    n = len(a)
    out = [[0j] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = 0j
            for k in range(n):
                s += a[i][k] * b[k][j]
            out[i][j] = s
    return np.array(out)


def cofactor_det(m):
    m = [list(r) for r in m]
    if len(m) == 1:
        return m[0][0]
    total = 0j
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def greedy_match(a, b):
    b = list(b)
    worst = 0.0
    for x in a:
        j = min(range(len(b)), key=lambda i: abs(b[i] - x))
        worst = max(worst, abs(b.pop(j) - x))
    return worst


# mat_mul

def test_identity_and_annihilator():
    x = rand_c(np.random.default_rng(0), 3)
    assert np.array_equal(mat_mul(np.eye(3), x), x)
    assert np.array_equal(mat_mul(x, np.zeros((3, 3))), np.zeros((3, 3)))


def test_mat_mul_matches_triple_loop():
    rng = np.random.default_rng(1)
    a, b = rand_c(rng, 5), rand_c(rng, 5)
    ref = naive_product(a, b)
    assert np.max(np.abs(mat_mul(a, b) - ref)) <= 1e-12 * np.max(np.abs(ref))


def test_mat_mul_order_mismatch():
    with pytest.raises(DimensionError):
        mat_mul(np.eye(3), np.eye(4))


# LU

@pytest.mark.parametrize("method", ["native", "lapack"])
def test_lu_identity(method):
    lu = lu_factor(np.eye(4), method=method)
    assert np.array_equal(lu.lower, np.eye(4))
    assert np.array_equal(lu.upper, np.eye(4))
    assert lu.swaps == 0 and not lu.singular


@pytest.mark.parametrize("method", ["native", "lapack"])
def test_lu_diagonal(method):
    lu = lu_factor(np.diag([2, 3j]), method=method)
    assert list(lu.pivots) == [0, 1]
    assert np.array_equal(np.diag(lu.upper), [2, 3j])


@pytest.mark.parametrize("method", ["native", "lapack"])
def test_lu_reconstruction_random_6(method):
    a = rand_c(np.random.default_rng(2), 6)
    lu = lu_factor(a, method=method)
    assert np.max(np.abs(lu.permutation_matrix() @ a - lu.lower @ lu.upper)) < 1e-11


@pytest.mark.parametrize("method", ["native", "lapack"])
def test_lu_reconstruction_invariant(method):
    rng = np.random.default_rng(3)
    for trial in range(100):
        n = 1 + trial % 8
        a = rand_c(rng, n)
        lu = lu_factor(a, method=method)
        assert sorted(lu.pivots) == list(range(n))
        err = np.max(np.abs(lu.permutation_matrix() @ a - lu.lower @ lu.upper))
        assert err <= 1e-10 * np.max(np.abs(a)) * n


def test_lu_methods_agree():
    a = rand_c(np.random.default_rng(4), 7)
    x, y = lu_factor(a, method="native"), lu_factor(a, method="lapack")
    assert np.allclose(x.combined, y.combined, atol=1e-12)
    assert list(x.pivots) == list(y.pivots) and x.swaps == y.swaps


def test_singular_flag_not_error():
    lu = lu_factor(np.zeros((3, 3)))
    assert lu.singular
    assert log_det(lu).is_zero


def test_lu_rejects_nonfinite():
    with pytest.raises(ValueError):
        lu_factor(np.array([[np.nan, 0], [0, 1]]))


# determinants

def test_log_det_identity():
    d = log_det(lu_factor(np.eye(5)))
    assert d.value() == 1 and d.logscale == 0


def test_log_det_huge_diagonal():
    d = log_det(lu_factor(np.diag([1e10] * 50)))
    assert d.logscale == pytest.approx(50 * math.log(1e10), rel=1e-14)
    assert abs(d.mantissa - 1) < 1e-12


def test_log_det_matches_cofactor():
    rng = np.random.default_rng(5)
    for n in range(1, 7):
        a = rand_c(rng, n)
        ref = cofactor_det(a.tolist())
        got = log_det(lu_factor(a)).value()
        assert abs(got - ref) <= 1e-10 * abs(ref)


def test_log_det_multiplicative():
    rng = np.random.default_rng(6)
    for n in range(1, 7):
        a, b = rand_c(rng, n), rand_c(rng, n)
        da, db, dab = (log_det(lu_factor(m)) for m in (a, b, a @ b))
        assert dab.log_abs == pytest.approx(da.log_abs + db.log_abs, abs=1e-9)
        phase = cmath.phase(dab.mantissa / (da.mantissa * db.mantissa))
        assert abs(phase) < 1e-9


def test_scaled_complex_normalisation():
    s = ScaledComplex.from_parts(3e300 * (1 + 1j), 5.0)
    assert 1 <= abs(s.mantissa) < RESCALE_BASE
    assert s.log_abs == pytest.approx(math.log(3e300 * math.sqrt(2)) + 5.0)
    small = ScaledComplex.from_parts(1e-200)
    assert 1 <= abs(small.mantissa) < RESCALE_BASE
    assert ScaledComplex.from_parts(0, 7).logscale == 0
    w = ScaledComplex.from_parts(2.0).times_exp(1 + 0.5j)
    assert w.value() == pytest.approx(2 * cmath.exp(1 + 0.5j))
    assert (ScaledComplex.from_parts(2.0) * 3j).value() == pytest.approx(6j)


# traces

def test_trace_powers_identity_and_nilpotent():
    assert trace_powers(np.eye(3), 4) == [3, 3, 3, 3]
    assert trace_powers(np.array([[0, 1], [0, 0]]), 3) == [0, 0, 0]


def test_trace_first_power_is_diagonal_sum():
    a = rand_c(np.random.default_rng(7), 6)
    assert trace_powers(a, 1)[0] == np.diag(a).sum()


def test_trace_powers_spectral_oracle():
    a = rand_c(np.random.default_rng(8), 4)
    lam = np.linalg.eigvals(a)
    for k, tr in enumerate(trace_powers(a, 5), start=1):
        assert abs(tr - np.sum(lam ** k)) < 1e-8


def test_trace_powers_explicit_powers():
    a = rand_c(np.random.default_rng(9), 5)
    for k, tr in enumerate(trace_powers(a, 6), start=1):
        ref = np.trace(np.linalg.matrix_power(a, k))
        assert abs(tr - ref) <= 1e-10 * abs(ref)


# eigenvalues

def test_eigen_diagonal():
    s = eigenvalues(np.diag([1, 2j, -3]))
    assert s.converged
    assert greedy_match([1, 2j, -3], s.eigenvalues) < 1e-12


def test_eigen_rotation():
    s = eigenvalues(np.array([[0, 1], [-1, 0]]))
    assert greedy_match([1j, -1j], s.eigenvalues) < 1e-12


def test_eigen_trace_identities():
    a = rand_c(np.random.default_rng(10), 8)
    lam = eigenvalues(a).eigenvalues
    assert abs(lam.sum() - np.trace(a)) < 1e-8
    assert abs((lam ** 2).sum() - np.trace(a @ a)) < 1e-8


def test_spectrum_trace_invariant_scaled():
    rng = np.random.default_rng(11)
    for n in (3, 16, 40):
        a = rand_c(rng, n)
        s = eigenvalues(a)
        assert s.converged
        tol = 1e-8 * n * np.max(np.abs(a)) ** 2
        assert abs(s.eigenvalues.sum() - np.trace(a)) < tol
        assert abs((s.eigenvalues ** 2).sum() - np.trace(a @ a)) < tol


def test_eigen_similarity_invariance():
    rng = np.random.default_rng(12)
    a = rand_c(rng, 10)
    q, _ = np.linalg.qr(rand_c(rng, 10))
    s1 = eigenvalues(a).eigenvalues
    s2 = eigenvalues(q @ a @ q.conj().T).eigenvalues
    assert greedy_match(s1, s2) < 1e-7


def test_eigen_matches_lapack():
    a = rand_c(np.random.default_rng(13), 30)
    assert greedy_match(eigenvalues(a).eigenvalues,
                        eigenvalues(a, method="lapack").eigenvalues) < 1e-9


def test_eigen_budget_exhausted_reports_partial():
    a = rand_c(np.random.default_rng(14), 6)
    s = eigenvalues(a, max_sweeps=0)
    assert not s.converged and len(s) == 6


def test_eigen_rejects_bad_tol():
    with pytest.raises(ValueError):
        eigenvalues(np.eye(2), tol=0)


def test_hessenberg_is_similar():
    a = rand_c(np.random.default_rng(15), 7)
    h = hessenberg(a)
    assert np.max(np.abs(np.tril(h, -2))) == 0
    assert abs(np.trace(h) - np.trace(a)) < 1e-12
    assert greedy_match(np.linalg.eigvals(h), np.linalg.eigvals(a)) < 1e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2 ** 32 - 1))
def test_eigen_property_traces(n, seed):
    a = rand_c(np.random.default_rng(seed), n)
    s = eigenvalues(a)
    assert s.converged
    assert abs(s.eigenvalues.sum() - np.trace(a)) < 1e-8 * n * np.max(np.abs(a)) ** 2
