import math

import numpy as np
import pytest

from egelab.errors import DomainError, Unsupported
from egelab.gaflimit import limit_second_moment
from egelab.hermite import (asymptotic_second_moment, exact_second_moment, g_inverse,
                            hermite_log_abs, hermite_scaled, log_factorial,
                            orthogonality_gram)


def exact_hermite_coeffs(k):
    prev, cur = [1], [0, 1]
    if k == 0:
        return prev
    for m in range(1, k):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= m * c
        prev, cur = cur, nxt
    return cur


def test_small_values():
    assert hermite_scaled(2, 2)[2].value() == pytest.approx(3)
    assert hermite_scaled(3, 1)[3].value() == pytest.approx(-2)
    seq = hermite_scaled(4, 0.7j)
    assert seq[0].value() == 1 and seq[1].value() == 0.7j


def test_he10_exact_integer_oracle():
    ref = sum(c * 50 ** i for i, c in enumerate(exact_hermite_coeffs(10)))
    got = hermite_scaled(10, 50)[10].value()
    assert abs(got - ref) <= 1e-10 * abs(ref)


def test_recurrence_holds_in_scaled_values():
    w = 37.0 + 12.0j
    seq = hermite_scaled(400, w)
    for m in range(1, 399):
        lhs = seq[m + 1]
        a = seq[m].mantissa * w
        b = -m * seq[m - 1].mantissa * math.exp(seq[m - 1].logscale - seq[m].logscale)
        rhs = (a + b) * math.exp(seq[m].logscale - lhs.logscale)
        assert abs(rhs - lhs.mantissa) <= 1e-12 * abs(lhs.mantissa) + 1e-300


def test_no_overflow_at_large_degree():
    la = hermite_log_abs(5000, np.array([200.0 + 50j]))
    assert np.all(np.isfinite(la[1:]))


def test_log_factorial():
    assert log_factorial(0) == 0
    assert log_factorial(10) == pytest.approx(math.log(math.factorial(10)))


def n1_reference(t, z):
    return math.log(abs(1 + t * z * z) ** 2 + abs(z) ** 2) - t * (z * z).real


def test_n1_closed_form_example():
    for t in (0.2, 0.5, 1.0):
        z = 0.4j
        a = exact_second_moment(1, t, z)
        b = math.log(abs(z) ** 2 * abs(math.e ** (-t * (z * z).real)) * (1 + abs(1 / z + t * z) ** 2))
        assert a == pytest.approx(n1_reference(t, z), abs=1e-12)
        assert a == pytest.approx(b, abs=1e-12)


def test_t0_degenerate_series():
    assert exact_second_moment(2, 0.0, 0.5) == pytest.approx(math.log(0.5 * (0.0625 + 0.5 + 2)), abs=1e-14)


def test_t0_continuity():
    z = 0.35 + 0.2j
    assert exact_second_moment(30, 1e-9, z) == pytest.approx(exact_second_moment(30, 0.0, z), abs=1e-6)


def test_vectorized_matches_scalar():
    zs = np.array([0.3, 0.2j, -0.5 + 0.1j])
    vec = exact_second_moment(40, 0.6, zs)
    assert np.allclose(vec, [exact_second_moment(40, 0.6, z) for z in zs], rtol=0, atol=1e-13)


@pytest.mark.parametrize("z", [0.4, 0.4j])
def test_asymptotic_vs_large_n(z):
    rel = abs(math.exp(exact_second_moment(4000, 0.5, z) - asymptotic_second_moment(0.5, z)) - 1)
    assert rel < 0.005


def test_asymptotic_vs_large_n_gue_endpoint():
    rel = abs(math.exp(exact_second_moment(4000, 1.0, 0.3) - asymptotic_second_moment(1.0, 0.3)) - 1)
    assert rel < 0.005


def test_asymptotic_matches_closed_limit():
    for t in (0.2, 0.5, 0.9):
        for z in (0.3, 0.5j, 0.4 - 0.3j):
            got = asymptotic_second_moment(t, z)
            closed = -math.log(abs(1 - t * z * z) * (1 - abs(z) ** 2))
            assert got == pytest.approx(closed, abs=1e-8)
            # the kappa factor is truncated after six h terms
            trunc = (t * abs(z) ** 2) ** 7 / (1 - t * abs(z) ** 2)
            assert got == pytest.approx(math.log(limit_second_moment(t, z)), abs=trunc + 1e-8)


def test_monotone_stabilisation():
    for z in (0.2, 0.5j, 0.3 + 0.3j, -0.6, 0.1 - 0.4j):
        gap = abs(math.exp(exact_second_moment(2000, 0.5, z) - exact_second_moment(1000, 0.5, z)) - 1)
        assert gap < 0.01


def test_positivity():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.integers(1, 300))
        t = float(rng.choice([0.0, rng.uniform(), 1.0]))
        z = 0.98 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform()) + 1e-6
        v = exact_second_moment(n, t, z)
        assert math.isfinite(v)


def disk_grid(radius=0.8, side=20):
    xs = np.linspace(-radius, radius, side)
    zz = (xs[None, :] + 1j * xs[:, None]).ravel()
    return zz[(np.abs(zz) <= radius) & (np.abs(zz) > 0)]


@pytest.mark.parametrize("t", [0.0, 0.5, 1.0])
def test_uniform_boundedness_on_compact(t):
    zz = disk_grid()
    bound = 1.01 * max(limit_second_moment(t, z) for z in zz)
    sups = [float(np.exp(exact_second_moment(n, t, zz)).max()) for n in (10, 20, 40, 80, 160, 320, 640, 1280)]
    assert max(sups) <= bound


def test_orthogonality_spot_check():
    gram = orthogonality_gram(0.5, 4)
    assert np.max(np.abs(gram - np.eye(5))) < 1e-3


def test_g_inverse_round_trip():
    for t in (0.0, 0.3, 1.0):
        for z in (0.5, 0.3j, -0.2 + 0.7j):
            u = 1 / z + t * z
            assert abs(g_inverse(t, u) - z) < 1e-12


def test_errors():
    with pytest.raises(DomainError):
        exact_second_moment(5, 0.5, 0)
    with pytest.raises(DomainError):
        exact_second_moment(5, 1.5, 0.3)
    with pytest.raises(DomainError):
        exact_second_moment(5, 0.5, 1.2)
    with pytest.raises(Unsupported):
        asymptotic_second_moment(0.0, 0.3)
