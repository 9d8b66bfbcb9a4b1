"""The limiting random analytic function.

f_t = kappa_t exp(-F_t), with F_t a Gaussian power series whose
coefficients satisfy E X_k^2 = t^k and E |X_k|^2 = 1. Here we sample it,
compare E|f_t(z)|^2 with its closed form, and compare it with the
characteristic polynomial of a moderately large matrix.

    python demos/06_limit_function.py
"""

import math

import numpy as np

from egelab.charpoly import eval_f
from egelab.gaflimit import GafParams, kappa, limit_second_moment, sample_f_limit
from egelab.sampling import EgeParams, derive_stream, sample_ege

t, z, draws = 0.5, 0.4j, 4000
p = GafParams(t, seed=2)
lim = np.array([sample_f_limit(p, [z], i)[0] for i in range(draws)])

n, reps = 200, 300
ep = EgeParams(n, t, seed=3)
fin = np.array([eval_f(sample_ege(derive_stream(3, i), ep), t, z).value() for i in range(reps)])

print(f"kappa({t}, {z}) = {kappa(t, z):.10f}")
for name, x in (("limit", lim), (f"n={n}", fin)):
    a2 = np.abs(x) ** 2
    print(f"{name:6s} E f = {x.mean():.3f}   E|f|^2 = {a2.mean():.3f} "
          f"+/- {a2.std() / math.sqrt(len(a2)):.3f}")
print(f"closed form E|f|^2 = {limit_second_moment(t, z):.3f}")
