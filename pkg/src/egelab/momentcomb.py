"""Closed-form combinatorics of the large-n trace fluctuations.

Covers Catalan numbers, annular non-crossing pairing counts, the limiting
covariance functionals ``phi`` (``E[V_p V_q]``) and ``phi_c``
(``E[V_p conj(V_q)]``) on monomials and their bilinear extension, the
tree constant ``l_tree``, and the binomial sums behind the diagonal
covariance of the modified Chebyshev basis.

Counting is done with Python integers and :class:`fractions.Fraction`;
pass a Fraction ``t`` to keep every result exact.
"""

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np
from numpy.polynomial import Polynomial

from .chebmod import alpha, cheb_poly
from .wickoracle import falling, h_coeff

__all__ = ['CovTable', 'catalan', 'falling', 'nc_pairings', 'phi_monomial',
           'phi_c_monomial', 'phi_poly', 'phi_c_poly', 'l_tree', 'h_coeff',
           'even_binomial_sum', 'odd_binomial_sum', 'tree_quadrature', 'exact_cheb_coeffs',
           'cov_table']


def catalan(m):
    """``C_m = binom(2m, m) / (m + 1)``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return comb(2 * m, m) // (m + 1)


def nc_pairings(l, p, q):
    """Number of non-crossing pairings of the ``(p, q)`` annulus with ``l``
    through strings: ``l * binom(p, (p-l)/2) * binom(q, (q-l)/2)``."""
    if l < 1:
        raise ValueError("l must be at least 1")
    if p < l or q < l or (p - l) % 2 or (q - l) % 2:
        return 0
    return l * comb(p, (p - l) // 2) * comb(q, (q - l) // 2)


def _through_counts(p, q):
    # (number of through strings, count) with the parity of p
    lo = 2 if p % 2 == 0 else 1
    return [(l, nc_pairings(l, p, q)) for l in range(lo, min(p, q) + 1, 2)]


def phi_monomial(t, p, q):
    """Limit of ``n^{-(p+q)/2} Cov(Tr A^p, Tr A^q)``."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be at least 1")
    if (p + q) % 2:
        return 0 * t
    total = sum(c for _, c in _through_counts(p, q))
    return total * t ** ((p + q) // 2)


def phi_c_monomial(t, p, q):
    """Limit of ``n^{-(p+q)/2} E[(Tr A^p - E) conj(Tr A^q - E)]``."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be at least 1")
    if (p + q) % 2:
        return 0 * t
    half = (p + q) // 2
    return sum(c * t ** (half - l) for l, c in _through_counts(p, q))


def _coeffs(p):
    if isinstance(p, Polynomial):
        return list(p.coef)
    return list(p)


def _bilinear(mono, t, p, q):
    a, b = _coeffs(p), _coeffs(q)
    total = 0 * t
    for i, ai in enumerate(a):
        if i == 0 or ai == 0:
            continue
        for j, bj in enumerate(b):
            if j == 0 or bj == 0:
                continue
            total += ai * bj * mono(t, i, j)
    return total


def phi_poly(t, p, q):
    """Bilinear extension of :func:`phi_monomial`; constants contribute 0.

    ``p`` and ``q`` are Polynomials or coefficient sequences by degree.
    """
    return _bilinear(phi_monomial, t, p, q)


def phi_c_poly(t, p, q):
    """Bilinear extension of :func:`phi_c_monomial`."""
    return _bilinear(phi_c_monomial, t, p, q)


def exact_cheb_coeffs(k, t):
    """Coefficients of ``P_k`` as Fractions for rational ``t``."""
    t = Fraction(t)
    if k == 0:
        return [Fraction(2)]
    c = [Fraction(0)] * (k + 1)
    for j in range(k // 2 + 1):
        c[k - 2 * j] = alpha(k, j, t)
    return c


def l_tree(m, t):
    """``-1/2 sum_q alpha^{(2m)}_{2m-2q} t^(m-q) C_{m-q} (m-q+1)(m-q)``.

    The sum collapses to ``-m t^m``.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    total = 0 * t
    for q in range(m + 1):
        d = m - q
        total += alpha(2 * m, q, t) * t ** d * catalan(d) * (d + 1) * d
    return -total / 2


def even_binomial_sum(k, l):
    """``sum_{r=0}^{k-l} (-1)^r/(2k-r) binom(2(k-r), k-r-l) binom(2k-r, r)``.

    Exact; zero for ``l < k`` and ``1/(2l)`` for ``k = l``.
    """
    return sum(Fraction((-1) ** r * comb(2 * (k - r), k - r - l) * comb(2 * k - r, r), 2 * k - r)
               for r in range(k - l + 1))


def odd_binomial_sum(k, l):
    """``sum_{r=0}^{k+1-l} (-1)^r/(2k+1-r) binom(2(k-r)+1, k+1-r-l) binom(2k+1-r, r)``.

    Exact; zero for ``l < k + 1`` and ``1/(2l-1)`` for ``l = k + 1``.
    """
    total = Fraction(0)
    for r in range(k + 2 - l):
        top = 2 * (k - r) + 1
        low = k + 1 - r - l
        if top < 0 or low < 0 or low > top:
            continue
        total += Fraction((-1) ** r * comb(top, low) * comb(2 * k + 1 - r, r), 2 * k + 1 - r)
    return total


def tree_quadrature(m, t, nodes=64):
    """``(4/pi) int_0^{pi/2} P_{2m}(2 sqrt(t) cos th) sin(th)^2 dth``
    by Gauss-Legendre quadrature; equals ``-t`` for ``m = 1`` and 0 beyond."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    th = (x + 1) * (math.pi / 4)
    p = cheb_poly(2 * m, t)
    vals = p(2 * math.sqrt(t) * np.cos(th)) * np.sin(th) ** 2
    return float((4 / math.pi) * (math.pi / 4) * np.sum(w * vals))


@dataclass
class CovTable:
    """``phi`` and ``phi_c`` on monomials ``1 <= p, q <= max_degree``."""

    t: float
    max_degree: int
    phi: dict = field(default_factory=dict)
    phi_c: dict = field(default_factory=dict)

    def to_json(self, extra=None):
        doc = {
            "t": self.t,
            "max_degree": self.max_degree,
            "phi": [[p, q, float(v)] for (p, q), v in sorted(self.phi.items())],
            "phi_c": [[p, q, float(v)] for (p, q), v in sorted(self.phi_c.items())],
        }
        if extra:
            doc.update(extra)
        return json.dumps(doc, sort_keys=True, indent=1)


def cov_table(t, max_degree):
    tab = CovTable(float(t), int(max_degree))
    for p in range(1, max_degree + 1):
        for q in range(1, max_degree + 1):
            tab.phi[(p, q)] = phi_monomial(t, p, q)
            tab.phi_c[(p, q)] = phi_c_monomial(t, p, q)
    return tab
