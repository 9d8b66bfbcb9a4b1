"""Runnable checks, one per acceptance criterion.

Each ``criterion_*`` function returns a :class:`CriterionResult`; the
tolerances are fixed here. ``QUICK`` lists the exact-arithmetic checks
that finish in seconds, ``FULL`` adds the Monte Carlo suites.
"""

import math
import os
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import chebmod, momentcomb, wickoracle
from .charpoly import eval_f, min_modulus_on_disk
from .clinalg import eigenvalues
from .gaflimit import GafParams, limit_second_moment, sample_f_limit
from .hermite import asymptotic_second_moment, exact_second_moment
from .sampling import EgeParams, derive_stream, sample_ege
from .spectrum import EllipseSpec, detector_radius, outlier_count
from .tracestats import mc_moments

__all__ = ['CriterionResult', 'CANONICAL_SEED', 'QUICK', 'FULL', 'run',
           'mc_second_moment', 'outlier_runs', 'richardson']

#: Base seed of every Monte Carlo criterion.
CANONICAL_SEED = 1
#: Secondary outlier detector fires when min log|f| on the disk is below this.
MIN_LOG_MODULUS_THRESHOLD = -3.0
#: Grid side used by the secondary detector.
DETECTOR_RESOLUTION = 33


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(number, name):
    def wrap(fn):
        def inner(*args, **kwargs):
            t0 = time.perf_counter()
            passed, detail = fn(*args, **kwargs)
            return CriterionResult(number, name, bool(passed), detail, time.perf_counter() - t0)
        inner.__name__ = fn.__name__
        inner.__doc__ = fn.__doc__
        return inner
    return wrap


def mc_second_moment(n, t, z, reps, seed=CANONICAL_SEED):
    """Sample mean of ``|f_{n,t}(z)|^2`` and its standard error."""
    p = EgeParams(n, t, seed)
    vals = np.empty(reps)
    for i in range(reps):
        a = sample_ege(derive_stream(seed, i), p)
        vals[i] = abs(eval_f(a, t, z).value()) ** 2
    return vals.mean(), vals.std(ddof=1) / math.sqrt(reps)


@_timed(1, "exact second moment vs Monte Carlo")
def criterion_1(seed=CANONICAL_SEED, reps=10_000):
    n, t, z = 50, 0.5, 0.3 + 0.3j
    mean, se = mc_second_moment(n, t, z, reps, seed)
    exact = math.exp(exact_second_moment(n, t, z))
    dev = abs(mean - exact) / se
    return dev <= 3.0, f"MC {mean:.5f} +/- {se:.5f}, exact {exact:.5f}, |dev| = {dev:.2f} SE (limit 3)"


@_timed(2, "n = 1 closed form")
def criterion_2():
    ts = np.linspace(0.1, 1.0, 10)
    radii = np.linspace(0.05, 0.95, 5)
    angles = [0.3, 2.1]
    worst = 0.0
    count = 0
    for t in ts:
        for r in radii:
            for ang in angles:
                z = r * complex(math.cos(ang), math.sin(ang))
                ref = math.log(abs(1 + t * z * z) ** 2 + abs(z) ** 2) - t * (z * z).real
                worst = max(worst, abs(exact_second_moment(1, t, z) - ref))
                count += 1
    return worst <= 1e-12, f"{count} points, max |diff| = {worst:.2e} (limit 1e-12)"


@_timed(3, "second-moment limit triangle at n = 4000")
def criterion_3():
    t = 0.5
    worst = 0.0
    parts = []
    for z in (0.3, 0.4, 0.4j, 0.25 + 0.25j):
        e = exact_second_moment(4000, t, z)
        r_lim = abs(math.exp(e - math.log(limit_second_moment(t, z))) - 1)
        r_asy = abs(math.exp(e - asymptotic_second_moment(t, z)) - 1)
        worst = max(worst, r_lim, r_asy)
        parts.append(f"z={z}: {r_lim:.2e}/{r_asy:.2e}")
    return worst < 0.01, "; ".join(parts) + " (limit 1e-2)"


@_timed(4, "trace CLT at n = 300")
def criterion_4(seed=CANONICAL_SEED, reps=2000, n=300, kmax=5, ts=(0.0, 0.5, 1.0)):
    fails = []
    worst = {"diag": 0.0, "off": 0.0, "cum4": 0.0}
    for t in ts:
        est = mc_moments(EgeParams(n, t, seed), reps, kmax)
        for j in range(kmax):
            k = j + 1
            z_sq = abs(est.cov_sq[j, j] - k * t ** k) / est.cov_sq_se[j, j]
            z_abs = abs(est.cov_abs[j, j] - k) / est.cov_abs_se[j, j]
            z_c4 = abs(est.cum4[j]) / est.cum4_se[j]
            worst["diag"] = max(worst["diag"], z_sq, z_abs)
            worst["cum4"] = max(worst["cum4"], z_c4)
            if z_sq > 3:
                fails.append(f"t={t} E V{k}^2 {z_sq:.2f}SE")
            if z_abs > 3:
                fails.append(f"t={t} E|V{k}|^2 {z_abs:.2f}SE")
            if z_c4 > 4:
                fails.append(f"t={t} cum4 V{k} {z_c4:.2f}SE")
            for i in range(kmax):
                if i == j:
                    continue
                for name, val, se in (("sq", est.cov_sq, est.cov_sq_se),
                                      ("abs", est.cov_abs, est.cov_abs_se)):
                    zz = abs(val[j, i]) / se[j, i]
                    worst["off"] = max(worst["off"], zz)
                    if zz > 4:
                        fails.append(f"t={t} {name}({k},{i + 1}) {zz:.2f}SE")
    detail = (f"max diag {worst['diag']:.2f}SE (3), off {worst['off']:.2f}SE (4), "
              f"cum4 {worst['cum4']:.2f}SE (4)")
    if fails:
        detail += "; failing: " + ", ".join(fails)
    return not fails, detail


@_timed(5, "exact identities")
def criterion_5():
    fails = []
    for t in (0.0, 0.25, 0.5, 0.75, 1.0):
        for k in range(1, 21):
            a = chebmod.cheb_poly(k, t).coef
            b = chebmod.cheb_coeffs_closed(k, t).coef
            if len(a) != len(b) or np.max(np.abs(a - b)) > 1e-12 * max(1.0, np.max(np.abs(a))):
                fails.append(f"cheb k={k} t={t}")
    for t in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)):
        for k in range(1, 21):
            prev, cur = [Fraction(2)], [Fraction(0), Fraction(1)]
            for _ in range(1, k):
                nxt = [Fraction(0)] + cur
                for i, c in enumerate(prev):
                    nxt[i] -= t * c
                prev, cur = cur, nxt
            if cur != momentcomb.exact_cheb_coeffs(k, t):
                fails.append(f"exact cheb k={k} t={t}")
    for k in range(1, 13):
        for l in range(1, k + 1):
            want = Fraction(1, 2 * l) if k == l else 0
            if momentcomb.even_binomial_sum(k, l) != want:
                fails.append(f"even sum k={k} l={l}")
    for k in range(0, 12):
        for l in range(1, k + 2):
            want = Fraction(1, 2 * l - 1) if l == k + 1 else 0
            if momentcomb.odd_binomial_sum(k, l) != want:
                fails.append(f"odd sum k={k} l={l}")
    for t in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)):
        for m in range(1, 9):
            if momentcomb.l_tree(m, t) != -m * t ** m:
                fails.append(f"l_tree m={m} t={t}")
    for t in (0.25, 0.5, 1.0):
        for m in range(1, 7):
            want = -t if m == 1 else 0.0
            if abs(momentcomb.tree_quadrature(m, t) - want) > 1e-8:
                fails.append(f"S' m={m} t={t}")
    for t in (0.0, 0.25, 0.5, 1.0):
        polys = [chebmod.cheb_poly(k, t) for k in range(9)]
        for k in range(1, 9):
            for l in range(1, 9):
                d = k == l
                if abs(momentcomb.phi_poly(t, polys[k], polys[l]) - (k * t ** k if d else 0)) > 1e-9:
                    fails.append(f"phi k={k} l={l} t={t}")
                if abs(momentcomb.phi_c_poly(t, polys[k], polys[l]) - (k if d else 0)) > 1e-9:
                    fails.append(f"phi_c k={k} l={l} t={t}")
    detail = "all identities hold" if not fails else "failing: " + ", ".join(fails[:10])
    return not fails, detail


def _simple_edge(pattern):
    g = wickoracle.tuple_graph(pattern)
    counts = {}
    for u, v in g.edges:
        key = frozenset((u, v))
        counts[key] = counts.get(key, 0) + 1
    return any(c == 1 for c in counts.values())


@_timed(6, "graph oracle laws")
def criterion_6():
    fails = []
    for m in range(1, 4):
        for n in range(1, 6):
            got = wickoracle.count_class(n, 2 * m, wickoracle.DOUBLE_TREE)
            want = wickoracle.falling(n, m + 1) * momentcomb.catalan(m)
            if got != want:
                fails.append(f"count n={n} m={m}: {got} != {want}")
    checked = 0
    for k in range(1, 6):
        for pat, _ in wickoracle._weighted_patterns(k, k):
            if _simple_edge(pat):
                checked += 1
                edges = [((pat[p], pat[(p + 1) % k]), False) for p in range(k)]
                if wickoracle.wick_t_polynomial(edges):
                    fails.append(f"simple edge {pat}")
    ts = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1))
    for t in ts:
        for n in range(1, 6):
            tr2 = wickoracle.exact_trace_expectation(n, 2, t)
            if tr2 != n * n * t:
                fails.append(f"E Tr A^2 n={n} t={t}")
            e2 = tr2 / n + chebmod.alpha(2, 1, t) * n + n * t
            if e2 != 0:
                fails.append(f"e2 n={n} t={t}")
        if wickoracle.h_coeff(1, t) != t:
            fails.append(f"h(1,{t})")
    detail = f"{checked} simple-edge tuples checked; " + ("all laws hold" if not fails
                                                          else "failing: " + ", ".join(fails[:10]))
    return not fails, detail


def richardson(ns, values):
    """Value at ``1/n = 0`` of the exact fit ``c0 + c1/n + c2/n^2 + ...``."""
    ns = [Fraction(n) for n in ns]
    rows = [[1 / n ** d for d in range(len(ns))] for n in ns]
    return wickoracle._solve_exact(rows, [Fraction(v) for v in values])[0]


COV_PAIRS = ((1, 1), (2, 2), (1, 3), (2, 4), (3, 3))


@_timed(7, "scaled covariance convergence")
def criterion_7(ns=(4, 6, 8), ts=(Fraction(0), Fraction(1, 2), Fraction(1))):
    fails = []
    worst = 0.0
    for t in ts:
        for k1, k2 in COV_PAIRS:
            for conj in (False, True):
                vals = [wickoracle.exact_product_covariance(n, k1, k2, conj, t)
                        / Fraction(n) ** Fraction(k1 + k2, 2) for n in ns]
                ext = richardson(ns, vals)
                target = (momentcomb.phi_c_monomial if conj else momentcomb.phi_monomial)(t, k1, k2)
                if target == 0:
                    ok = abs(ext) <= 1e-12
                    rel = float(abs(ext))
                else:
                    rel = float(abs(ext - target) / abs(target))
                    ok = rel <= 0.05
                worst = max(worst, rel)
                if not ok:
                    fails.append(f"t={t} ({k1},{k2}) conj={conj}: {float(ext):.4f} vs {float(target):.4f}")
    detail = f"max relative deviation {worst:.3e} (limit 5e-2)"
    if fails:
        detail += "; failing: " + ", ".join(fails)
    return not fails, detail


def outlier_runs(n, t, inflation, runs, seed=CANONICAL_SEED,
                 resolution=DETECTOR_RESOLUTION, threshold=MIN_LOG_MODULUS_THRESHOLD):
    """Per run: (eigenvalue outlier count, min log|f| on the detector disk)."""
    e = EllipseSpec(t, inflation)
    r = detector_radius(e)
    p = EgeParams(n, t, seed)
    out = []
    for i in range(runs):
        a = sample_ege(derive_stream(seed, i), p)
        spec = eigenvalues(a)
        count = outlier_count(spec, n, e)
        mlog = min_modulus_on_disk(a, t, r, resolution)
        out.append((count, mlog))
    return out


@_timed(8, "no outliers at n = 256")
def criterion_8(seed=CANONICAL_SEED, runs=100):
    res = outlier_runs(256, 0.5, 1.1, runs, seed)
    clean = sum(1 for c, _ in res if c == 0)
    agree = sum(1 for c, m in res if (c > 0) == (m < MIN_LOG_MODULUS_THRESHOLD))
    ok = clean >= 95 and agree >= 98
    return ok, (f"{clean}/{runs} runs without outliers (need 95), detectors agree in "
                f"{agree}/{runs} (need 98)")


def _mean_and_abs2(samples):
    s = np.asarray(samples)
    m = s.mean(axis=0)
    m_se = np.sqrt(s.real.var(axis=0, ddof=1) + s.imag.var(axis=0, ddof=1)) / math.sqrt(len(s))
    a2 = np.abs(s) ** 2
    return m, m_se, a2.mean(axis=0), a2.std(axis=0, ddof=1) / math.sqrt(len(s))


LIMIT_POINTS = (0.3, 0.4j, 0.25 + 0.25j)


@_timed(9, "finite-n vs limit moments at n = 800")
def criterion_9(seed=CANONICAL_SEED, reps=600, limit_draws=10_000, n=800, ts=(0.0, 0.5, 1.0)):
    zs = np.array(LIMIT_POINTS)
    fails = []
    worst = 0.0
    for t in ts:
        p = EgeParams(n, t, seed)
        fin = []
        for i in range(reps):
            a = sample_ege(derive_stream(seed, i), p)
            fin.append([eval_f(a, t, z).value() for z in zs])
        gp = GafParams(t, seed=seed)
        lim = [sample_f_limit(gp, zs, i) for i in range(limit_draws)]
        fm, fm_se, fa, fa_se = _mean_and_abs2(fin)
        lm, lm_se, la, la_se = _mean_and_abs2(lim)
        for j, z in enumerate(zs):
            z1 = abs(fm[j] - lm[j]) / math.hypot(fm_se[j], lm_se[j])
            z2 = abs(fa[j] - la[j]) / math.hypot(fa_se[j], la_se[j])
            worst = max(worst, z1, z2)
            if z1 > 4:
                fails.append(f"t={t} z={z} mean {z1:.2f}SE")
            if z2 > 4:
                fails.append(f"t={t} z={z} |f|^2 {z2:.2f}SE")
    detail = f"max deviation {worst:.2f}SE (limit 4)"
    if fails:
        detail += "; failing: " + ", ".join(fails)
    return not fails, detail


@_timed(10, "bitwise determinism of outputs")
def criterion_10():
    from . import cli

    runs = [
        ["portrait", "--n", "40", "--t", "0.5", "--seed", "1", "--res", "48"],
        ["traces", "--n", "30", "--t", "0.5", "--seed", "1", "--reps", "100", "--kmax", "4",
         "--format", "csv"],
        ["gaf", "--t", "0.5", "--seed", "1", "--reps", "20"],
        ["spectrum", "--n", "40", "--t", "0.5", "--seed", "1"],
    ]
    fails = []
    with tempfile.TemporaryDirectory() as tmp:
        for args in runs:
            blobs = []
            for rep in range(2):
                path = os.path.join(tmp, f"{args[0]}_{rep}.out")
                code = cli.main(args + ["--out", path])
                if code != 0:
                    fails.append(f"{args[0]} exit {code}")
                with open(path, "rb") as fh:
                    blobs.append(fh.read())
            if blobs[0] != blobs[1] or not blobs[0]:
                fails.append(f"{args[0]} differs")
    detail = "portrait, traces, gaf and spectrum outputs identical" if not fails else ", ".join(fails)
    return not fails, detail


QUICK = (criterion_2, criterion_5, criterion_6, criterion_10)
FULL = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
        criterion_6, criterion_7, criterion_8, criterion_9, criterion_10)


def run(full=False, report=print):
    """Run the selected tier, reporting one line per criterion."""
    results = []
    for fn in (FULL if full else QUICK):
        res = fn()
        report(res.line())
        results.append(res)
    return results
