"""Exact moments of traces by brute-force Wick enumeration.

Every index tuple (i_1, ..., i_k) defines a closed walk. Its expected
weight under the ensemble is a sum over pairings of the matrix entries
along the walk, each pair contributing 1 or t. Grouping tuples by their
set partition pattern gives exact polynomials in n and t.

The script checks E Tr A^2 = n^2 t, prints the polynomial for E Tr A^4,
and computes the h coefficients that enter the deterministic factor of
the limiting function.

    python demos/04_wick_oracle.py
"""

from fractions import Fraction

from egelab.wickoracle import (classify_tuple, covariance_polynomial, exact_trace_expectation,
                               h_coeff, moment_polynomial)

t = Fraction(1, 2)
for n in range(1, 5):
    print(f"n={n}: E Tr A^2 = {exact_trace_expectation(n, 2, t)}  (n^2 t = {n * n * t})")

print("\nE Tr A^4 as sum of count * t^a * n^b:")
for (a, b), c in sorted(moment_polynomial(4).items()):
    print(f"  {c:3d} * t^{a} * n^{b}")

print("\ncov(Tr A^2, Tr A^2) terms:", dict(covariance_polynomial(2, 2, False)))

for tup in [(1, 2), (1, 2, 1, 2), (1, 2, 3), (4, 4)]:
    g = classify_tuple(tup)
    print(f"tuple {tup}: {g.kind}, q1={g.q1}, q2={g.q2}")

print("\nh_k at t = 1/2:", [str(h_coeff(k, t)) for k in range(1, 7)])
