"""Normalised characteristic polynomial

    f_{n,t}(z) = det(1 + t z^2 - z A / sqrt(n)) * exp(-n t z^2 / 2),

its evaluation on grids, and domain-coloring phase portraits.
"""

import colorsys
import math
from dataclasses import dataclass

import numpy as np

from .clinalg import ScaledComplex, as_cmatrix, log_det, lu_factor
from .errors import DomainError

__all__ = ['Grid', 'PortraitRaster', 'g_map', 'eval_f', 'eval_grid',
           'grid_points', 'render_portrait', 'min_modulus_on_disk']


@dataclass(frozen=True)
class Grid:
    """Square window ``center +/- half_width`` sampled at ``resolution``
    pixel centers per side."""

    center: complex
    half_width: float
    resolution: int

    def __post_init__(self):
        if self.half_width <= 0:
            raise DomainError("half_width must be positive")
        if self.resolution < 2:
            raise DomainError("resolution must be at least 2")


@dataclass(frozen=True)
class PortraitRaster:
    """RGB image, row-major, top row at maximal imaginary part."""

    width: int
    height: int
    pixels: bytes

    def to_ppm(self, comment=None):
        """Binary P6 bytes; ``comment`` adds one ``#`` line after the magic."""
        head = "P6\n"
        if comment is not None:
            head += "# " + comment.replace("\n", " ") + "\n"
        head += f"{self.width} {self.height}\n255\n"
        return head.encode("ascii") + self.pixels

    def write_ppm(self, path, comment=None):
        with open(path, "wb") as fh:
            fh.write(self.to_ppm(comment))


def g_map(t, z):
    """``1/z + t z``."""
    z = complex(z)
    if z == 0:
        raise DomainError("g_t is undefined at z = 0")
    return 1 / z + t * z


def eval_f(a, t, z):
    """``f_{n,t}(z)`` for the matrix ``a`` as a :class:`ScaledComplex`.

    A singular determinant gives exact zero.
    """
    a = as_cmatrix(a)
    n = a.shape[0]
    z = complex(z)
    m = -(z / math.sqrt(n)) * a
    m[np.diag_indices(n)] += 1 + t * z * z
    det = log_det(lu_factor(m))
    return det.times_exp(-n * t * z * z / 2)


def grid_points(grid):
    """Pixel-center coordinates, shape ``(resolution, resolution)``."""
    r, h = grid.resolution, grid.half_width
    c = complex(grid.center)
    offs = (np.arange(r) + 0.5) * (2 * h / r)
    xs = c.real - h + offs
    ys = c.imag + h - offs
    return xs[None, :] + 1j * ys[:, None]


def eval_grid(a, t, grid):
    """:func:`eval_f` at every pixel center, as a nested list (row-major)."""
    a = as_cmatrix(a)
    pts = grid_points(grid)
    return [[eval_f(a, t, z) for z in row] for row in pts]


def _pixel(w):
    if w.is_zero:
        return (0, 0, 0)
    hue = (w.arg + math.pi) / (2 * math.pi)
    log2 = w.log_abs / math.log(2.0)
    val = 0.55 + 0.45 * (log2 - math.floor(log2))
    rgb = colorsys.hsv_to_rgb(hue % 1.0, 0.9, val)
    return tuple(min(255, int(math.floor(ch * 255 + 0.5))) for ch in rgb)


def render_portrait(values):
    """Domain coloring of a matrix of :class:`ScaledComplex` values.

    Hue encodes the argument, brightness the fractional part of
    ``log2 |w|``; zeros are black.
    """
    rows = [list(r) for r in values]
    height = len(rows)
    width = len(rows[0]) if height else 0
    buf = bytearray()
    for r in rows:
        if len(r) != width:
            raise ValueError("ragged value matrix")
        for w in r:
            buf.extend(_pixel(w))
    return PortraitRaster(width, height, bytes(buf))


def min_modulus_on_disk(a, t, r, resolution=64):
    """Smallest ``log|f_{n,t}|`` over grid points of the closed disk ``|z| <= r``.

    The candidates are the ``resolution**2`` points of a uniform square
    grid on ``[-r, r]^2`` (endpoints included) that fall in the disk. This
    is a heuristic proxy for the infimum, not a bound.
    """
    if not 0 < r < 1:
        raise DomainError("need 0 < r < 1")
    a = as_cmatrix(a)
    xs = np.linspace(-r, r, resolution)
    best = math.inf
    for x in xs:
        for y in xs:
            if x * x + y * y <= r * r * (1 + 1e-12):
                best = min(best, eval_f(a, t, complex(x, y)).log_abs)
    return best
