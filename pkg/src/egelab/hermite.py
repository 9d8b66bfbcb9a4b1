"""Scaled Hermite polynomials and the second moment of the normalised
characteristic polynomial.

``He_k`` are the monic probabilists' Hermite polynomials,
``He_{k+1}(w) = w He_k(w) - k He_{k-1}(w)``. Values are carried as a
mantissa with a running log-scale so degrees in the thousands at arguments
of size ``sqrt(n)`` never overflow.

The finite-n second moment is

    E|f_n(z)|^2 = n! |z|^(2n) / n^n * |exp(-n t z^2)|
                  * sum_{k<=n} t^k/k! |He_k(sqrt(n/t) g_t(z))|^2,

with ``g_t(z) = 1/z + t z``. At ``t = 0`` each term tends to
``n^k |g|^(2k) / k!`` with ``g = 1/z``, which gives the degenerate series
``n!/n^n * sum_k n^k |z|^(2(n-k)) / k!``.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .clinalg import RESCALE_BASE, ScaledComplex
from .errors import DomainError, Unsupported

__all__ = ['HermiteSeq', 'hermite_scaled', 'hermite_log_abs', 'log_factorial',
           'exact_second_moment', 'asymptotic_second_moment', 'g_inverse',
           'saddle_value', 'orthonormal_hermite', 'orthogonality_gram']

FD_STEP = 1e-5


@dataclass(frozen=True)
class HermiteSeq:
    """``He_0(w), ..., He_k(w)`` as scaled values."""

    values: tuple
    argument: complex

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]


def _hermite_core(k, w):
    # returns mantissas and log-scales, shape (k+1,) + w.shape
    w = np.asarray(w, dtype=np.complex128)
    mant = np.empty((k + 1,) + w.shape, dtype=np.complex128)
    scale = np.empty((k + 1,) + w.shape)
    prev = np.ones_like(w)
    cur = w.copy()
    sc = np.zeros(w.shape)
    mant[0], scale[0] = 1.0, 0.0
    if k >= 1:
        mant[1], scale[1] = cur, 0.0
    for m in range(1, k):
        prev, cur = cur, w * cur - m * prev
        big = np.abs(cur) >= RESCALE_BASE
        if np.any(big):
            a = np.where(big, np.abs(cur), 1.0)
            cur = cur / a
            prev = prev / a
            sc = sc + np.log(a)
        mant[m + 1] = cur
        scale[m + 1] = sc
    return mant, scale


def hermite_scaled(k, w):
    """``He_0 .. He_k`` at complex ``w`` as a :class:`HermiteSeq`."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    w = complex(w)
    mant, scale = _hermite_core(k, w)
    vals = tuple(ScaledComplex.from_parts(m, s) for m, s in zip(mant, scale))
    return HermiteSeq(vals, w)


def hermite_log_abs(k, w):
    """``log|He_j(w)|`` for ``j = 0..k``, vectorized over ``w``.

    Returns an array of shape ``(k+1,) + shape(w)``; zeros give ``-inf``.
    """
    mant, scale = _hermite_core(k, w)
    with np.errstate(divide='ignore'):
        return np.log(np.abs(mant)) + scale


def log_factorial(n):
    """``log n!`` by summing ``log m`` (exact enough at every size)."""
    return float(np.sum(np.log(np.arange(1, int(n) + 1, dtype=float))))


def _log_factorials(n):
    out = np.zeros(n + 1)
    out[1:] = np.cumsum(np.log(np.arange(1, n + 1, dtype=float)))
    return out


def exact_second_moment(n, t, z):
    """Natural log of ``E|f_{n,t}(z)|^2`` from the Hermite-sum formula.

    Parameters
    ----------
    n : int
        Matrix order, ``n >= 1``.
    t : float
        Parameter in ``[0, 1]``; ``t = 0`` uses the degenerate series.
    z : complex or array_like
        Points with ``0 < |z| < 1``. Arrays are evaluated elementwise.
    """
    n = int(n)
    if n < 1:
        raise DomainError("n must be positive")
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    z = np.asarray(z, dtype=np.complex128)
    az = np.abs(z)
    if np.any(az == 0) or np.any(az >= 1):
        raise DomainError("need 0 < |z| < 1")
    lf = _log_factorials(n)
    ks = np.arange(n + 1).reshape((-1,) + (1,) * z.ndim)
    if t == 0.0:
        terms = ks * math.log(n) + 2 * (n - ks) * np.log(az) - lf[ks]
        out = lf[n] - n * math.log(n) + logsumexp(terms, axis=0)
    else:
        w = math.sqrt(n / t) * (1 / z + t * z)
        terms = ks * math.log(t) - lf[ks] + 2 * hermite_log_abs(n, w)
        out = (lf[n] + 2 * n * np.log(az) - n * math.log(n)
               - n * t * np.real(z * z) + logsumexp(terms, axis=0))
    return float(out) if out.ndim == 0 else out


def g_inverse(t, u):
    """The preimage ``z`` of ``u`` under ``g_t`` with ``|z| < 1``."""
    u = complex(u)
    if t == 0:
        return 1 / u
    r = cmath.sqrt(u * u - 4 * t)
    z1, z2 = (u - r) / (2 * t), (u + r) / (2 * t)
    return z1 if abs(z1) <= abs(z2) else z2


def saddle_value(t, u):
    """``1 + t Re(z^2) - log|z|^2`` at ``z = g_t^{-1}(u)``."""
    z = g_inverse(t, u)
    return 1 + t * (z * z).real - math.log(abs(z) ** 2)


def _f_second_derivative(t, u, s):
    a, b = u.real, u.imag
    return (-2 * a * a / (1 + s) ** 3 + 2 * b * b / (1 - s) ** 3) / t + 1 / s ** 2


def asymptotic_second_moment(t, z):
    """Natural log of the large-n limit of ``E|f_{n,t}(z)|^2``.

    Saddle-point output: with ``u = g_t(z)`` and ``s = t|z|^2``,

        1 / (sqrt(F''(s)) sqrt(1 - t^2 |z|^4) t (1 - |z|^2))
        * exp(G(u) - <grad G(u), u>/2),

    where ``G`` is :func:`saddle_value` and the gradient is a central
    difference in ``(Re u, Im u)``. The exponential corrects for the sum
    running to ``n`` with argument scaled by ``sqrt(n)``.
    """
    t = float(t)
    if t == 0.0:
        raise Unsupported("t = 0 is not supported; use exact_second_moment at large n")
    if not 0.0 < t <= 1.0:
        raise DomainError(f"t must lie in (0, 1], got {t}")
    z = complex(z)
    az2 = abs(z) ** 2
    if az2 == 0 or az2 >= 1:
        raise DomainError("need 0 < |z| < 1")
    u = 1 / z + t * z
    s = t * az2
    fpp = _f_second_derivative(t, u, s)
    log_base = -(0.5 * math.log(fpp) + 0.5 * math.log(1 - s * s)
                 + math.log(t) + math.log(1 - az2))
    h = FD_STEP
    gx = (saddle_value(t, u + h) - saddle_value(t, u - h)) / (2 * h)
    gy = (saddle_value(t, u + 1j * h) - saddle_value(t, u - 1j * h)) / (2 * h)
    shift = saddle_value(t, u) - 0.5 * (gx * u.real + gy * u.imag)
    return log_base + shift


def orthonormal_hermite(j, t, z):
    """``sqrt(t^j / j!) He_j(z / sqrt(t))``, orthonormal for the elliptic weight."""
    z = np.asarray(z, dtype=np.complex128)
    mant, scale = _hermite_core(j, z / math.sqrt(t))
    return math.sqrt(t ** j / math.factorial(j)) * mant[j] * np.exp(scale[j])


def orthogonality_gram(t, kmax, nodes=40):
    """Gram matrix of the orthonormal family against the elliptic weight.

    The weight is ``exp(-x^2/(1+t) - y^2/(1-t)) / (pi sqrt(1-t^2))`` on the
    plane. The integral is done by tensor Gauss-Hermite quadrature after
    ``x = sqrt(1+t) xi``, ``y = sqrt(1-t) eta``, exact for polynomial
    integrands of degree below ``2 * nodes``.
    """
    if not 0.0 < t < 1.0:
        raise DomainError("need 0 < t < 1")
    xi, wts = np.polynomial.hermite.hermgauss(nodes)
    xx, yy = np.meshgrid(math.sqrt(1 + t) * xi, math.sqrt(1 - t) * xi, indexing='ij')
    ww = np.outer(wts, wts) / math.pi
    zz = xx + 1j * yy
    polys = [orthonormal_hermite(j, t, zz) for j in range(kmax + 1)]
    gram = np.empty((kmax + 1, kmax + 1), dtype=np.complex128)
    for j in range(kmax + 1):
        for k in range(kmax + 1):
            gram[j, k] = np.sum(ww * polys[j] * np.conj(polys[k]))
    return gram
