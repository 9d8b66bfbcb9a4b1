"""Second moment of f at a fixed point, three ways.

1. Exactly at finite n, via a weighted sum of squared Hermite polynomials.
2. In the large-n limit, via the saddle-point formula.
3. From the limiting random function, |kappa|^2 / (|1 - t z^2| (1 - |z|^2)).

A small Monte Carlo run at n = 50 checks the exact value against sampled
matrices.

    python demos/02_second_moment.py
"""

import math

from egelab.gaflimit import limit_second_moment
from egelab.hermite import asymptotic_second_moment, exact_second_moment
from egelab.verification import mc_second_moment

t = 0.5
print("z            n=50      n=500     n=4000    saddle    limit")
for z in (0.3, 0.4j, 0.25 + 0.25j, 0.6):
    exact = [math.exp(exact_second_moment(n, t, z)) for n in (50, 500, 4000)]
    asym = math.exp(asymptotic_second_moment(t, z))
    lim = limit_second_moment(t, z)
    print(f"{str(z):12s} " + " ".join(f"{v:9.6f}" for v in exact + [asym, lim]))

mean, se = mc_second_moment(50, t, 0.3 + 0.3j, reps=2000)
exact = math.exp(exact_second_moment(50, t, 0.3 + 0.3j))
print(f"\nMonte Carlo at n=50, z=0.3+0.3i: {mean:.4f} +/- {se:.4f} (exact {exact:.4f})")
