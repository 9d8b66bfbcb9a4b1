"""Ellipse support of the limiting spectrum and outlier counting."""

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .sampling import check_t

__all__ = ['EllipseSpec', 'BAND_SLACK', 'ellipse_contains', 'outlier_count',
           'export_scatter', 'detector_radius']

#: Half-height added to the degenerate t = 1 segment.
BAND_SLACK = 1e-9


@dataclass(frozen=True)
class EllipseSpec:
    """Ellipse with semi-axes ``(1+t) c`` and ``(1-t) c``."""

    t: float
    inflation: float = 1.0

    def __post_init__(self):
        check_t(self.t)
        if self.inflation < 1:
            raise DomainError("inflation must be at least 1")

    @property
    def semi_axes(self):
        return (1 + self.t) * self.inflation, (1 - self.t) * self.inflation


def ellipse_contains(e, u):
    """Membership of ``u`` (scalar or array) in the inflated ellipse.

    At ``t = 1`` the ellipse is the segment ``[-2, 2]``; it is thickened
    to ``|y| <= 2(c-1) + BAND_SLACK``, ``|x| <= 2c``.
    """
    u = np.asarray(u, dtype=np.complex128)
    x, y = np.abs(u.real), np.abs(u.imag)
    c = e.inflation
    if e.t == 1.0:
        inside = (y <= 2 * (c - 1) + BAND_SLACK) & (x <= 2 * c)
    else:
        a, b = e.semi_axes
        inside = (x / a) ** 2 + (y / b) ** 2 <= 1
    return bool(inside) if inside.ndim == 0 else inside


def outlier_count(s, n, e):
    """Number of eigenvalues with ``lambda / sqrt(n)`` outside the ellipse."""
    if not s.converged:
        raise ValueError("spectrum did not converge")
    lam = np.asarray(s.eigenvalues, dtype=np.complex128) / math.sqrt(n)
    if lam.size == 0:
        return 0
    return int(np.count_nonzero(~ellipse_contains(e, lam)))


def export_scatter(s, n):
    """CSV text: header ``re,im`` then ``lambda/sqrt(n)`` per eigenvalue."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["re", "im"])
    for lam in np.asarray(s.eigenvalues, dtype=np.complex128):
        v = lam / math.sqrt(n)
        w.writerow([f"{v.real:.17g}", f"{v.imag:.17g}"])
    return buf.getvalue()


def detector_radius(e):
    """Radius ``r < 1`` with ``1/r + t r = (1+t) c``.

    ``g_t`` maps the circle ``|z| = r`` onto a confocal ellipse with the
    same major semi-axis as ``e`` and a minor one at least as large, so a
    zero of ``f_{n,t}`` in ``|z| <= r`` certifies an outlier of ``e``.
    """
    a = (1 + e.t) * e.inflation
    if e.t == 0:
        return 1 / a
    return (a - math.sqrt(a * a - 4 * e.t)) / (2 * e.t)
