"""Seedable samplers for GUE and elliptic Ginibre matrices and for the
Gaussian coefficients of the limiting random series.

Every Monte Carlo draw ``i`` uses its own stream ``derive_stream(seed, i)``,
so results do not depend on evaluation order.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ['EgeParams', 'derive_stream', 'sample_standard_complex',
           'sample_gue', 'sample_ege', 'sample_gaf_coeff', 'check_t']

_U64 = 2 ** 64


def check_t(t):
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    return t


@dataclass(frozen=True)
class EgeParams:
    """Order ``n``, interpolation parameter ``t`` and base seed."""

    n: int
    t: float
    seed: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n}")
        check_t(self.t)
        if not 0 <= int(self.seed) < _U64:
            raise DomainError("seed must be an unsigned 64-bit integer")


def derive_stream(seed, index=0):
    """Independent generator for draw ``index`` of a run seeded by ``seed``.

    The pair is fed to :class:`numpy.random.SeedSequence` as entropy plus
    spawn key, which maps distinct pairs to distinct PCG64 states.
    """
    seed, index = int(seed), int(index)
    if not (0 <= seed < _U64 and 0 <= index < _U64):
        raise DomainError("seed and index must be unsigned 64-bit integers")
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(ss))


def sample_standard_complex(s, size=None):
    """``(g1 + i g2)/sqrt(2)`` with independent standard normals."""
    g = s.standard_normal(_pair_shape(size))
    z = (g[0] + 1j * g[1]) / math.sqrt(2.0)
    return complex(z) if size is None else z


def _pair_shape(size):
    if size is None:
        return 2
    if np.isscalar(size):
        return (2, int(size))
    return (2,) + tuple(size)


def sample_gue(s, n):
    """Hermitian matrix with N(0,1) diagonal and standard complex entries
    above the diagonal; the lower triangle is the exact conjugate."""
    if n < 1:
        raise DomainError("n must be positive")
    diag = s.standard_normal(n)
    iu = np.triu_indices(n, 1)
    g = s.standard_normal((2, len(iu[0])))
    x = np.zeros((n, n), dtype=np.complex128)
    x[np.arange(n), np.arange(n)] = diag
    upper = (g[0] + 1j * g[1]) / math.sqrt(2.0)
    x[iu] = upper
    x[iu[1], iu[0]] = upper.conj()
    return x


def sample_ege(s, p):
    """Elliptic matrix ``sqrt((1+t)/2) X + i sqrt((1-t)/2) Y``.

    ``X`` and ``Y`` are independent GUE draws taken from ``s`` in that
    order. At ``t = 1`` the result is exactly ``X``.
    """
    t = check_t(p.t)
    x = sample_gue(s, p.n)
    y = sample_gue(s, p.n)
    if t == 1.0:
        return x
    return math.sqrt((1 + t) / 2) * x + 1j * math.sqrt((1 - t) / 2) * y


def sample_gaf_coeff(s, t, k, size=None):
    """Gaussian ``X`` with ``E X^2 = t^k`` and ``E |X|^2 = 1``."""
    t = check_t(t)
    if k < 1:
        raise DomainError("k must be at least 1")
    tk = t ** k
    g = s.standard_normal(_pair_shape(size))
    re = math.sqrt((1 + tk) / 2) * g[0]
    im = math.sqrt((1 - tk) / 2) * g[1]
    x = re + 1j * im
    return complex(x) if size is None else x
