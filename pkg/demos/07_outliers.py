"""Eigenvalues stay inside the inflated ellipse.

The rescaled spectrum fills the ellipse with semi-axes 1 + t and 1 - t.
For large n there are, with high probability, no eigenvalues outside a
slightly inflated copy. We count outliers directly and also with a
second detector: a zero of f inside the disk |z| <= r, where g_t maps
the circle |z| = r onto a confocal ellipse around the inflated one.

At these moderate sizes the eigenvalues near the flat ends of the
ellipse still fluctuate beyond the 10% margin fairly often, so expect
a noticeable fraction of runs with outliers.

    python demos/07_outliers.py [runs]
"""

import sys

from egelab.spectrum import EllipseSpec, detector_radius
from egelab.verification import MIN_LOG_MODULUS_THRESHOLD, outlier_runs

runs = int(sys.argv[1]) if len(sys.argv) > 1 else 20
n, t, c = 128, 0.5, 1.1
print(f"detector radius r = {detector_radius(EllipseSpec(t, c)):.4f}")
res = outlier_runs(n, t, c, runs, seed=1)
clean = sum(1 for k, _ in res if k == 0)
agree = sum(1 for k, m in res if (k > 0) == (m < MIN_LOG_MODULUS_THRESHOLD))
for i, (k, m) in enumerate(res):
    print(f"run {i:3d}: outliers {k}, min log|f| {m:7.3f}")
print(f"\n{clean}/{runs} runs without outliers; detectors agree in {agree}/{runs}")
