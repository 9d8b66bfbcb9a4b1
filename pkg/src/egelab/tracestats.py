"""Chebyshev trace statistics of sampled matrices and their Monte Carlo
moments.

For a matrix ``A`` of order ``n``,

    U_k = Tr P_k(A / sqrt(n)) + n t [k == 2],

where the constant term of ``P_k`` contributes ``coefficient * n``. With
these, ``f_{n,t}(z) = exp(-sum_k U_k z^k / k)`` as formal power series.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .chebmod import alpha
from .clinalg import as_cmatrix, trace_powers
from .sampling import EgeParams, derive_stream, sample_ege

__all__ = ['TraceSample', 'MomentEstimate', 'compute_U', 'sample_U',
           'mc_moments', 'moments_from_samples', 'coeff_from_traces',
           'DEFAULT_KMAX']

DEFAULT_KMAX = 12


@dataclass(frozen=True)
class TraceSample:
    u: tuple
    n: int
    t: float
    sample_index: int = 0

    def __len__(self):
        return len(self.u)


def compute_U(a, t, kmax, sample_index=0):
    """``(U_1, ..., U_kmax)`` for one matrix."""
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    a = as_cmatrix(a)
    n = a.shape[0]
    traces = trace_powers(a, kmax)
    scaled = [complex(n)] + [traces[d - 1] / n ** (d / 2) for d in range(1, kmax + 1)]
    u = []
    for k in range(1, kmax + 1):
        val = sum(alpha(k, j, t) * scaled[k - 2 * j] for j in range(k // 2 + 1))
        if k == 2:
            val += n * t
        u.append(complex(val))
    return TraceSample(tuple(u), n, float(t), int(sample_index))


def sample_U(p, index, kmax):
    """``U`` for draw ``index`` of the run described by ``p``."""
    a = sample_ege(derive_stream(p.seed, index), p)
    return compute_U(a, p.t, kmax, index)


def _jackknife_se(loo):
    # loo: leave-one-out estimates along axis 0, complex
    m = loo.shape[0]
    dev = loo - loo.mean(axis=0)
    var = (m - 1) / m * np.sum(dev.real ** 2 + dev.imag ** 2, axis=0)
    return np.sqrt(var)


@dataclass
class MomentEstimate:
    """Monte Carlo moments of ``V_k = U_k - E U_k``.

    ``cov_sq[j-1, k-1]`` estimates ``E V_j V_k`` and ``cov_abs[j-1, k-1]``
    estimates ``E V_j conj(V_k)``; ``cum4[k-1]`` is the fourth cumulant of
    ``Re V_k``. Every estimate has a jackknife standard error; for complex
    quantities it is ``sqrt(se_re^2 + se_im^2)``.
    """

    reps: int
    mean: np.ndarray
    mean_se: np.ndarray
    cov_sq: np.ndarray
    cov_sq_se: np.ndarray
    cov_abs: np.ndarray
    cov_abs_se: np.ndarray
    cum4: np.ndarray
    cum4_se: np.ndarray
    config: dict = field(default_factory=dict)

    @property
    def kmax(self):
        return len(self.mean)

    def rows(self):
        out = []
        for k in range(self.kmax):
            out.append((k + 1, k + 1, self.mean[k], self.mean_se[k], "mean"))
        for kind, val, se in (("cov_sq", self.cov_sq, self.cov_sq_se),
                              ("cov_abs", self.cov_abs, self.cov_abs_se)):
            for j in range(self.kmax):
                for k in range(self.kmax):
                    out.append((j + 1, k + 1, val[j, k], se[j, k], kind))
        for k in range(self.kmax):
            out.append((k + 1, k + 1, self.cum4[k], self.cum4_se[k], "cum4"))
        return out

    def to_csv(self, comment=None):
        buf = io.StringIO()
        if comment is not None:
            buf.write("# " + comment.replace("\n", " ") + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j", "k", "re", "im", "stderr", "kind"])
        for j, k, v, se, kind in self.rows():
            v = complex(v)
            w.writerow([j, k, repr(v.real), repr(v.imag), repr(float(se)), kind])
        return buf.getvalue()

    def to_json(self):
        doc = {"reps": self.reps, "config": self.config,
               "rows": [{"j": j, "k": k, "re": complex(v).real, "im": complex(v).imag,
                         "stderr": float(se), "kind": kind}
                        for j, k, v, se, kind in self.rows()]}
        return json.dumps(doc, sort_keys=True, indent=1)


def moments_from_samples(u):
    """Moment estimates from an ``(reps, kmax)`` array of ``U`` values."""
    u = np.asarray(u, dtype=np.complex128)
    reps = u.shape[0]
    if reps < 2:
        raise ValueError("need at least two samples")
    r = float(reps)
    s1 = u.sum(axis=0)
    pq = u[:, :, None] * u[:, None, :]
    pc = u[:, :, None] * u[:, None, :].conj()
    s_sq = pq.sum(axis=0)
    s_abs = pc.sum(axis=0)

    mean = s1 / r
    cov_sq = s_sq / r - np.outer(mean, mean)
    cov_abs = s_abs / r - np.outer(mean, mean.conj())

    loo_mean = (s1[None] - u) / (r - 1)
    loo_sq = (s_sq[None] - pq) / (r - 1) - loo_mean[:, :, None] * loo_mean[:, None, :]
    loo_abs = ((s_abs[None] - pc) / (r - 1)
               - loo_mean[:, :, None] * loo_mean[:, None, :].conj())

    x = u.real
    sx = [np.sum(x ** p, axis=0) for p in range(1, 5)]

    def cum4_of(s, m):
        mu = s[0] / m
        m2 = s[1] / m - mu ** 2
        m4 = s[3] / m - 4 * mu * s[2] / m + 6 * mu ** 2 * s[1] / m - 3 * mu ** 4
        return m4 - 3 * m2 ** 2

    cum4 = cum4_of(sx, r)
    loo_cum4 = cum4_of([s[None] - x ** (p + 1) for p, s in enumerate(sx)], r - 1)

    return MomentEstimate(
        reps=reps,
        mean=mean, mean_se=np.sqrt(np.var(u.real, axis=0) + np.var(u.imag, axis=0)) / math.sqrt(r - 1),
        cov_sq=cov_sq, cov_sq_se=_jackknife_se(loo_sq),
        cov_abs=cov_abs, cov_abs_se=_jackknife_se(loo_abs),
        cum4=cum4.astype(np.complex128), cum4_se=_jackknife_se(loo_cum4.astype(np.complex128)),
    )


def mc_moments(p, reps, kmax=5):
    """Sample ``reps`` matrices (draw ``i`` uses stream ``(seed, i)``) and
    estimate the moments of their trace statistics."""
    if reps < 100:
        raise ValueError("reps must be at least 100")
    if not 1 <= kmax <= DEFAULT_KMAX:
        raise ValueError(f"kmax must lie in 1..{DEFAULT_KMAX}")
    u = np.array([sample_U(p, i, kmax).u for i in range(reps)])
    est = moments_from_samples(u)
    est.config = {"n": p.n, "t": p.t, "seed": p.seed, "reps": reps, "kmax": kmax}
    return est


def coeff_from_traces(u, m):
    """Taylor coefficients ``xi_0..xi_m`` of ``exp(-sum_k U_k z^k / k)``.

    Uses ``xi_0 = 1`` and ``j xi_j = -sum_{r=1}^{j} U_r xi_{j-r}``.
    """
    vals = u.u if isinstance(u, TraceSample) else tuple(u)
    if m > len(vals):
        raise ValueError("m exceeds the number of available traces")
    xi = [1.0 + 0j]
    for j in range(1, m + 1):
        acc = sum(vals[r - 1] * xi[j - r] for r in range(1, j + 1))
        xi.append(-acc / j)
    return xi
