import math

import numpy as np
import pytest

from egelab.errors import DomainError
from egelab.sampling import (EgeParams, derive_stream, sample_ege, sample_gaf_coeff,
                             sample_gue, sample_standard_complex)


def within(est, se, target, k=4.0):
    return abs(est - target) <= k * se


def test_stream_determinism_and_distinctness():
    assert derive_stream(7, 0).bytes(1024) == derive_stream(7, 0).bytes(1024)
    assert derive_stream(7, 0).bytes(1024) != derive_stream(7, 1).bytes(1024)


def test_stream_map_injective_on_range():
    heads = {derive_stream(s, i).bytes(16) for s in range(20) for i in range(20)}
    assert len(heads) == 400


def test_normals_law_of_large_numbers():
    x = derive_stream(3, 0).standard_normal(10 ** 6)
    assert abs(x.mean()) < 4 / math.sqrt(10 ** 6)
    assert abs(x.var() - 1) < 0.01


def test_standard_complex_moments():
    z = sample_standard_complex(derive_stream(4, 0), 10 ** 5)
    assert abs(z.mean()) < 0.02
    assert abs((z * z).mean()) < 0.02
    assert 0.98 <= (np.abs(z) ** 2).mean() <= 1.02
    assert isinstance(sample_standard_complex(derive_stream(4, 1)), complex)


def test_gue_exactly_hermitian():
    x = sample_gue(derive_stream(5, 0), 9)
    assert np.array_equal(x, x.conj().T)
    assert np.all(np.diag(x).imag == 0)


def test_gue_entry_moments():
    s = derive_stream(6, 0)
    draws = np.array([sample_gue(s, 2) for _ in range(10 ** 4)])
    assert 0.97 <= (np.abs(draws[:, 0, 1]) ** 2).mean() <= 1.03
    assert 0.95 <= (draws[:, 0, 0].real ** 2).mean() <= 1.05


def test_ege_t1_is_gue_draw():
    p = EgeParams(6, 1.0, 3)
    a = sample_ege(derive_stream(3, 0), p)
    assert np.array_equal(a, a.conj().T)
    assert np.array_equal(a, sample_gue(derive_stream(3, 0), 6))


def test_ege_reproducible():
    p = EgeParams(12, 0.3, 99)
    a = sample_ege(derive_stream(99, 5), p)
    b = sample_ege(derive_stream(99, 5), p)
    assert np.array_equal(a, b)


@pytest.fixture(scope="module")
def ege_pairs():
    s = derive_stream(8, 0)
    p = EgeParams(2, 0.5)
    return np.array([sample_ege(s, p) for _ in range(10 ** 5)])


def test_ege_examples(ege_pairs):
    a12, a21 = ege_pairs[:, 0, 1], ege_pairs[:, 1, 0]
    assert abs((a12 * a21)[:10 ** 4].mean() - 0.5) < 0.03
    assert abs((np.abs(a12) ** 2 * np.abs(a21) ** 2)[:10 ** 4].mean() - 1.25) < 0.1


def test_ege_eight_entry_moments(ege_pairs):
    t = 0.5
    a11, a12, a21 = ege_pairs[:, 0, 0], ege_pairs[:, 0, 1], ege_pairs[:, 1, 0]
    cases = [
        (a12, 0), (np.abs(a12) ** 2, 1), (a12 * a21, t), (a11 ** 2, t),
        (a12 ** 2, 0), (a12 * a21.conj(), 0),
        (a12 ** 2 * a21 ** 2, 2 * t * t), (np.abs(a12) ** 2 * np.abs(a21) ** 2, 1 + t * t),
    ]
    for x, target in cases:
        se = math.sqrt(x.real.var() + x.imag.var()) / math.sqrt(len(x))
        assert within(x.mean(), se, target), (x.mean(), target)


def test_gaf_coeff_endpoints():
    s = derive_stream(9, 0)
    assert all(sample_gaf_coeff(s, 1.0, k).imag == 0 for k in range(1, 20))
    x = sample_gaf_coeff(s, 0.0, 1, size=10 ** 5)
    assert abs((x * x).mean()) < 0.02
    assert abs((np.abs(x) ** 2).mean() - 1) < 0.02


def test_gaf_coeff_second_moment():
    x = sample_gaf_coeff(derive_stream(10, 0), 0.5, 2, size=10 ** 5)
    assert abs((x * x).mean() - 0.25) < 0.02


def test_parameter_validation():
    with pytest.raises(DomainError):
        EgeParams(0, 0.5)
    with pytest.raises(DomainError):
        EgeParams(3, 1.5)
    with pytest.raises(DomainError):
        sample_gaf_coeff(derive_stream(1), 0.5, 0)
    EgeParams(3, 0.0)
    EgeParams(3, 1.0)
