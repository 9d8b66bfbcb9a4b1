"""Modified Chebyshev polynomials ``P_k`` with parameter ``t``.

They satisfy ``P_0 = 2``, ``P_1 = X`` and ``P_{k+1} = X P_k - t P_{k-1}``,
and ``P_k(2 sqrt(t) cos(theta)) = 2 t^(k/2) cos(k theta)``.
Polynomials are :class:`numpy.polynomial.Polynomial` objects with
coefficients indexed by degree.
"""

from fractions import Fraction
from math import comb

import numpy as np
from numpy.polynomial import Polynomial

__all__ = ['PolyReal', 'cheb_poly', 'cheb_coeffs_closed', 'alpha', 'eval_poly']

PolyReal = Polynomial


def _trimmed(coeffs):
    c = np.asarray(coeffs, dtype=float)
    nz = np.nonzero(c)[0]
    c = c[:nz[-1] + 1] if nz.size else c[:1] * 0
    return Polynomial(c)


def cheb_poly(k, t):
    """``P_k`` built from the three-term recurrence."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    t = float(t)
    prev = np.array([2.0])
    if k == 0:
        return _trimmed(prev)
    cur = np.array([0.0, 1.0])
    for _ in range(1, k):
        nxt = np.zeros(len(cur) + 1)
        nxt[1:] = cur
        nxt[:len(prev)] -= t * prev
        prev, cur = cur, nxt
    return _trimmed(cur)


def alpha(k, j, t):
    """Coefficient of ``X^(k-2j)`` in ``P_k`` (``k >= 1``).

    Works for float or :class:`fractions.Fraction` ``t``; with a Fraction
    the result is exact.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if j < 0 or 2 * j > k:
        return 0 * t
    w = Fraction(k * comb(k - j, j), k - j)
    if isinstance(t, Fraction) or isinstance(t, int):
        return (-Fraction(t)) ** j * w
    return (-t) ** j * float(w)


def cheb_coeffs_closed(k, t):
    """``P_k`` from the explicit coefficient formula (``k >= 1``)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    t = float(t)
    c = np.zeros(k + 1)
    for j in range(k // 2 + 1):
        c[k - 2 * j] = alpha(k, j, t)
    return _trimmed(c)


def eval_poly(p, w):
    """Horner evaluation at complex ``w`` (scalar or array)."""
    coeffs = p.coef if isinstance(p, Polynomial) else np.asarray(p)
    w = np.asarray(w, dtype=np.complex128)
    acc = np.zeros_like(w)
    for c in coeffs[::-1]:
        acc = acc * w + c
    return complex(acc) if acc.ndim == 0 else acc
