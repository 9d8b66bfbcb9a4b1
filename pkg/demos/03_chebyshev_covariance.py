"""Limiting covariance of polynomial linear statistics.

For polynomials p, q the fluctuations of Tr p(A/sqrt n) have a limiting
covariance given by two bilinear forms, phi (for E V V) and phi_c (for
E V conj V). Both are computed from non-crossing pairing counts.

The modified Chebyshev polynomials P_k diagonalise both forms:
phi(P_k, P_l) = k t^k [k = l] and phi_c(P_k, P_l) = k [k = l]. This
script prints the Gram matrices in exact rational arithmetic.

    python demos/03_chebyshev_covariance.py
"""

from fractions import Fraction

from egelab.chebmod import cheb_poly
from egelab.momentcomb import exact_cheb_coeffs, phi_c_poly, phi_poly

t = Fraction(1, 3)
K = 5
print("P_3 at t = 0.5:", cheb_poly(3, 0.5))

basis = [exact_cheb_coeffs(k, t) for k in range(1, K + 1)]
for name, form in (("phi", phi_poly), ("phi_c", phi_c_poly)):
    print(f"\n{name}(P_k, P_l) at t = {t}:")
    for p in basis:
        print("  " + " ".join(f"{str(form(t, p, q)):>8s}" for q in basis))
