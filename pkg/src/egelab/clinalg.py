"""Dense complex linear algebra: products, LU with partial pivoting, scaled
determinants, power traces and eigenvalues by Hessenberg reduction followed
by shifted QR.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; every routine
copies its input, so callers can share matrices freely.
"""

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionError

__all__ = [
    'RESCALE_BASE', 'SINGULAR_THRESHOLD', 'NATIVE_LU_MAX_ORDER',
    'ScaledComplex', 'LUFactors', 'Spectrum',
    'as_cmatrix', 'mat_mul', 'lu_factor', 'log_det', 'trace_powers',
    'hessenberg', 'eigenvalues',
]

#: Mantissas of :class:`ScaledComplex` live in ``[1, RESCALE_BASE)``.
RESCALE_BASE = 2.0 ** 128
#: Pivots smaller than this in modulus make the determinant exactly zero.
SINGULAR_THRESHOLD = 1e-300
#: ``lu_factor(method="auto")`` uses the in-house elimination up to this order.
NATIVE_LU_MAX_ORDER = 64

CMatrix = np.ndarray


@dataclass(frozen=True)
class ScaledComplex:
    """A complex number stored as ``mantissa * exp(logscale)``.

    Use :meth:`from_parts` to build normalized instances; the mantissa then
    has modulus in ``[1, RESCALE_BASE)`` or is exactly zero.
    """

    mantissa: complex
    logscale: float = 0.0

    @classmethod
    def from_parts(cls, mantissa, logscale=0.0):
        m = complex(mantissa)
        if m == 0:
            return cls(0j, 0.0)
        a = abs(m)
        if not math.isfinite(a):
            raise OverflowError("mantissa is not finite")
        logscale = float(logscale)
        if a < 1.0 or a >= RESCALE_BASE:
            logscale += math.log(a)
            m = m / a
        return cls(m, logscale)

    @classmethod
    def zero(cls):
        return cls(0j, 0.0)

    @property
    def is_zero(self):
        return self.mantissa == 0

    @property
    def log_abs(self):
        """Natural log of the modulus; ``-inf`` for zero."""
        if self.is_zero:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.logscale

    @property
    def arg(self):
        return cmath.phase(self.mantissa)

    def value(self):
        """The plain complex value (may overflow to infinity)."""
        if self.is_zero:
            return 0j
        return self.mantissa * math.exp(self.logscale)

    def __complex__(self):
        return self.value()

    def __mul__(self, other):
        if not isinstance(other, ScaledComplex):
            other = ScaledComplex.from_parts(other)
        return ScaledComplex.from_parts(self.mantissa * other.mantissa,
                                        self.logscale + other.logscale)

    __rmul__ = __mul__

    def times_exp(self, c):
        """Multiply by ``exp(c)`` for complex ``c`` without forming ``exp(c)``."""
        if self.is_zero:
            return self
        c = complex(c)
        return ScaledComplex.from_parts(self.mantissa * cmath.exp(1j * c.imag),
                                        self.logscale + c.real)


@dataclass(frozen=True)
class LUFactors:
    """Row-pivoted factorization ``P A = L U``.

    ``combined`` packs the unit lower factor below the diagonal and the
    upper factor on and above it. ``pivots[i]`` is the row of ``A`` that
    ends up in row ``i``; ``swaps`` counts the transpositions performed.
    """

    combined: np.ndarray
    pivots: np.ndarray
    swaps: int
    singular: bool = False

    @property
    def lower(self):
        n = self.combined.shape[0]
        return np.tril(self.combined, -1) + np.eye(n)

    @property
    def upper(self):
        return np.triu(self.combined)

    def permutation_matrix(self):
        n = self.combined.shape[0]
        p = np.zeros((n, n))
        p[np.arange(n), self.pivots] = 1.0
        return p


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues as an unordered multiset."""

    eigenvalues: np.ndarray
    converged: bool = True

    def __len__(self):
        return len(self.eigenvalues)


def as_cmatrix(a):
    """Validate ``a`` as a finite square matrix and return a complex copy."""
    a = np.array(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def mat_mul(a, b):
    """Matrix product of two square matrices of equal order."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim != 2 or b.ndim != 2 or a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def _lu_native(lu):
    n = lu.shape[0]
    perm = np.arange(n)
    swaps = 0
    singular = False
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            swaps += 1
        piv = lu[k, k]
        if abs(piv) < SINGULAR_THRESHOLD:
            singular = True
            lu[k + 1:, k] = 0
            continue
        lu[k + 1:, k] /= piv
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return LUFactors(lu, perm, swaps, singular)


def _lu_lapack(a):
    n = a.shape[0]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, ipiv = scipy.linalg.lu_factor(a, overwrite_a=True, check_finite=False)
    perm = np.arange(n)
    swaps = 0
    for i, p in enumerate(ipiv):
        if p != i:
            perm[[i, p]] = perm[[p, i]]
            swaps += 1
    singular = bool(np.min(np.abs(np.diag(lu))) < SINGULAR_THRESHOLD)
    return LUFactors(lu, perm, swaps, singular)


def lu_factor(a, method="auto"):
    """LU factorization with partial (row) pivoting.

    Parameters
    ----------
    a : array_like, shape (n, n)
        Finite square matrix.
    method : {"auto", "native", "lapack"}
        ``"native"`` runs the elimination here, ``"lapack"`` calls
        ``getrf`` through scipy, ``"auto"`` picks native for
        ``n <= NATIVE_LU_MAX_ORDER``. All return the same contract.

    Returns
    -------
    LUFactors
        ``singular`` is set when some pivot falls below
        :data:`SINGULAR_THRESHOLD`; no exception is raised.
    """
    a = as_cmatrix(a)
    if method == "auto":
        method = "native" if a.shape[0] <= NATIVE_LU_MAX_ORDER else "lapack"
    if method == "native":
        return _lu_native(a)
    if method == "lapack":
        return _lu_lapack(a)
    raise ValueError(f"unknown method {method!r}")


def log_det(lu):
    """Determinant from an LU factorization as a :class:`ScaledComplex`.

    The phase is the sum of the pivot arguments plus ``pi`` per row swap and
    the log-modulus is the sum of the pivot log-moduli, so huge or tiny
    determinants never overflow.
    """
    if lu.singular:
        return ScaledComplex.zero()
    d = np.diag(lu.combined)
    logscale = float(np.sum(np.log(np.abs(d))))
    phase = float(np.sum(np.angle(d))) + math.pi * lu.swaps
    phase = math.remainder(phase, 2 * math.pi)
    return ScaledComplex.from_parts(cmath.exp(1j * phase), logscale)


def trace_powers(a, kmax):
    """Return ``[Tr A, Tr A^2, ..., Tr A^kmax]`` by repeated multiplication."""
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    a = as_cmatrix(a)
    out = [complex(np.trace(a))]
    p = a
    for _ in range(2, kmax + 1):
        p = mat_mul(p, a)
        out.append(complex(np.trace(p)))
    return out


def hessenberg(a):
    """Upper Hessenberg matrix unitarily similar to ``a`` (Householder)."""
    h = as_cmatrix(a)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k].copy()
        norm = np.linalg.norm(x)
        if norm == 0:
            continue
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        v = x
        v[0] += phase * norm
        v /= np.linalg.norm(v)
        h[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0
    return h


def _wilkinson_shift(h, hi):
    a, b = h[hi - 1, hi - 1], h[hi - 1, hi]
    c, d = h[hi, hi - 1], h[hi, hi]
    half_tr = 0.5 * (a + d)
    disc = cmath.sqrt(0.25 * (a - d) ** 2 + b * c)
    mu1, mu2 = half_tr + disc, half_tr - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def _qr_sweep(block, mu):
    # one explicitly shifted QR step H - mu = QR, H <- RQ + mu on a Hessenberg block
    m = block.shape[0]
    idx = np.arange(m)
    block[idx, idx] -= mu
    rotations = []
    for j in range(m - 1):
        x, y = block[j, j], block[j + 1, j]
        r = math.hypot(abs(x), abs(y))
        if r == 0.0:
            c, s = 1.0 + 0j, 0j
        else:
            c, s = x / r, y / r
        top = block[j, j:].copy()
        bot = block[j + 1, j:]
        block[j, j:] = c.conjugate() * top + s.conjugate() * bot
        block[j + 1, j:] = -s * top + c * bot
        rotations.append((c, s))
    for j, (c, s) in enumerate(rotations):
        left = block[:j + 2, j].copy()
        right = block[:j + 2, j + 1]
        block[:j + 2, j] = left * c + right * s
        block[:j + 2, j + 1] = -left * s.conjugate() + right * c.conjugate()
    block[idx, idx] += mu


def eigenvalues(a, tol=1e-12, max_sweeps=None, method="native"):
    """Eigenvalues of a square complex matrix.

    The native path reduces to Hessenberg form and runs single-shift complex
    QR with a Wilkinson shift from the trailing 2x2 block, deflating when a
    subdiagonal entry drops below ``tol`` times its neighbouring diagonal
    moduli. Eigenvalues come back in no particular order.

    Parameters
    ----------
    a : array_like, shape (n, n)
    tol : float
        Relative deflation tolerance.
    max_sweeps : int, optional
        Total QR sweeps allowed; defaults to ``60 * n``.
    method : {"native", "lapack"}

    Returns
    -------
    Spectrum
        ``converged`` is False when the sweep budget ran out; the returned
        values are then the current diagonal for the unconverged part.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if method == "lapack":
        return Spectrum(np.linalg.eigvals(as_cmatrix(a)), True)
    if method != "native":
        raise ValueError(f"unknown method {method!r}")
    h = hessenberg(a)
    n = h.shape[0]
    if max_sweeps is None:
        max_sweeps = 60 * n
    eig = np.empty(n, dtype=np.complex128)
    hi = n - 1
    sweeps = 0
    stalled = 0
    converged = True
    tiny = np.finfo(float).tiny
    while hi >= 0:
        if hi == 0:
            eig[0] = h[0, 0]
            break
        # locate the start of the unreduced block ending at hi
        sub = np.abs(h[np.arange(1, hi + 1), np.arange(0, hi)])
        dia = np.abs(np.diag(h)[:hi + 1])
        small = (sub <= tol * (dia[1:] + dia[:-1])) | (sub < tiny)
        hits = np.nonzero(small)[0]
        lo = int(hits[-1]) + 1 if hits.size else 0
        if hits.size:
            h[lo, lo - 1] = 0
        if lo == hi:
            eig[hi] = h[hi, hi]
            hi -= 1
            stalled = 0
            continue
        if sweeps >= max_sweeps:
            converged = False
            eig[:hi + 1] = np.diag(h)[:hi + 1]
            break
        if stalled and stalled % 10 == 0:
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            mu = _wilkinson_shift(h, hi)
        _qr_sweep(h[lo:hi + 1, lo:hi + 1], mu)
        sweeps += 1
        stalled += 1
    return Spectrum(eig, converged)
