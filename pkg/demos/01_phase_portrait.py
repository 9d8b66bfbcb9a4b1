"""Phase portrait of the normalised characteristic polynomial.

Draws one matrix from the elliptic ensemble, evaluates
f(z) = det(1 + t z^2 - z A / sqrt(n)) exp(-n t z^2 / 2) on a square grid
and writes a domain-coloured PPM. Hue is the argument, brightness cycles
with log2 |f|, zeros are black.

Inside the unit disk the picture looks like a smooth random function.
Outside it the zeros (preimages of eigenvalues under g(z) = 1/z + t z)
pile up near the circle.

    python demos/01_phase_portrait.py [out.ppm]
"""

import sys

from egelab.charpoly import Grid, eval_grid, render_portrait
from egelab.sampling import EgeParams, derive_stream, sample_ege

n, t, seed = 120, 0.5, 1
out = sys.argv[1] if len(sys.argv) > 1 else "portrait.ppm"

a = sample_ege(derive_stream(seed, 0), EgeParams(n, t, seed))
grid = Grid(center=0j, half_width=1.2, resolution=160)
raster = render_portrait(eval_grid(a, t, grid))
raster.write_ppm(out, comment=f"n={n} t={t} seed={seed}")
print(f"wrote {raster.width}x{raster.height} portrait to {out}")
