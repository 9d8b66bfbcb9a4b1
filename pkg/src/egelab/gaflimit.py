"""The limiting random analytic function ``f_t = kappa_t exp(-F_t)``.

``F_t(z) = sum_k X_k z^k / sqrt(k)`` with independent Gaussian ``X_k``,
``E X_k^2 = t^k`` and ``E|X_k|^2 = 1``, truncated at ``K`` terms. The
deterministic factor is

    kappa_t(z) = exp(-1/2 sum_k h_k z^(2k) / k) * exp(t z^2 / (2 (1 - t z^2))),

with ``h_k`` from :func:`egelab.wickoracle.h_coeff` (truncated at
``H_TERMS``).
"""

import cmath
import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .sampling import check_t, derive_stream, sample_gaf_coeff
from .wickoracle import H_COEFF_MAX_K, h_coeff

__all__ = ['GafParams', 'DEFAULT_K', 'H_TERMS', 'sample_coefficients',
           'sample_F', 'kappa', 'sample_f_limit', 'limit_second_moment',
           'export_samples_csv']

#: Satisfies 0.6**K / 0.4 < 1e-8 with margin (the smallest such K is 38).
DEFAULT_K = 40
#: Number of h terms used in kappa.
H_TERMS = H_COEFF_MAX_K


@dataclass(frozen=True)
class GafParams:
    t: float
    K: int = DEFAULT_K
    seed: int = 0

    def __post_init__(self):
        check_t(self.t)
        if self.K < 1:
            raise DomainError("K must be at least 1")


def _check_disk(zs):
    zs = np.atleast_1d(np.asarray(zs, dtype=np.complex128))
    if np.any(np.abs(zs) >= 1):
        raise DomainError("all points must satisfy |z| < 1")
    return zs


def sample_coefficients(p, index=0):
    """``X_1 .. X_K`` for draw ``index``."""
    s = derive_stream(p.seed, index)
    return np.array([sample_gaf_coeff(s, p.t, k) for k in range(1, p.K + 1)])


def _series(coeffs, zs):
    k = np.arange(1, len(coeffs) + 1)
    w = coeffs / np.sqrt(k)
    acc = np.zeros_like(zs)
    for c in w[::-1]:
        acc = (acc + c) * zs
    return acc


def sample_F(p, zs, index=0):
    """One draw of the truncated series at every point of ``zs``."""
    zs = _check_disk(zs)
    return _series(sample_coefficients(p, index), zs)


def kappa(t, z, K=H_TERMS):
    """Deterministic factor ``kappa_t(z)`` with ``K`` terms of the h-series."""
    t = check_t(t)
    z = complex(z)
    if abs(z) >= 1:
        raise DomainError("need |z| < 1")
    z2 = z * z
    s = sum(h_coeff(k, t) * z2 ** k / k for k in range(1, K + 1))
    return cmath.exp(-0.5 * s + t * z2 / (2 * (1 - t * z2)))


def sample_f_limit(p, zs, index=0):
    """``kappa_t(z) exp(-F_t(z))`` for one draw, shared across ``zs``."""
    zs = _check_disk(zs)
    kap = np.array([kappa(p.t, z) for z in zs])
    return kap * np.exp(-sample_F(p, zs, index))


def limit_second_moment(t, z, K=H_TERMS):
    """``E|f_t(z)|^2 = |kappa_t(z)|^2 / (|1 - t z^2| (1 - |z|^2))``.

    Follows from ``E|exp(-F)|^2 = exp(Re E F^2 + E|F|^2)`` with
    ``E F^2 = -log(1 - t z^2)`` and ``E|F|^2 = -log(1 - |z|^2)``.
    """
    z = complex(z)
    if abs(z) >= 1:
        raise DomainError("need |z| < 1")
    return abs(kappa(t, z, K)) ** 2 / (abs(1 - t * z * z) * (1 - abs(z) ** 2))


def export_samples_csv(p, zs, draws, comment=None):
    """CSV with columns draw_index, z_re, z_im, f_re, f_im."""
    zs = _check_disk(zs)
    buf = io.StringIO()
    if comment is not None:
        buf.write("# " + comment.replace("\n", " ") + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["draw_index", "z_re", "z_im", "f_re", "f_im"])
    for i in range(draws):
        vals = sample_f_limit(p, zs, i)
        for z, f in zip(zs, vals):
            w.writerow([i, repr(float(z.real)), repr(float(z.imag)), repr(float(f.real)), repr(float(f.imag))])
    return buf.getvalue()
