"""Gaussian fluctuations of Chebyshev trace statistics.

U_k = Tr P_k(A / sqrt n) + n t [k = 2]. As n grows the centred U_k
become independent complex Gaussians with E V_k^2 = k t^k and
E |V_k|^2 = k. This run is small, so expect agreement to within a few
standard errors rather than to many digits.

    python demos/05_trace_clt.py [reps]
"""

import sys

from egelab.sampling import EgeParams
from egelab.tracestats import mc_moments

reps = int(sys.argv[1]) if len(sys.argv) > 1 else 600
n, t = 100, 0.5
est = mc_moments(EgeParams(n, t, seed=1), reps, kmax=4)
print(f"n={n}, t={t}, reps={reps}")
print(" k   E V^2 (target)        E |V|^2 (target)     cum4/SE")
for k in range(1, 5):
    i = k - 1
    sq, ab = est.cov_sq[i, i], est.cov_abs[i, i]
    print(f"{k:2d}   {sq.real:6.3f} ({k * t ** k:5.3f})       {ab.real:6.3f} ({k:d})"
          f"             {abs(est.cum4[i]) / est.cum4_se[i]:5.2f}")
