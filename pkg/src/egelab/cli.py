"""Command-line entry point: ``egelab <subcommand> [flags]``.

Exit status: 0 success, 1 usage error, 2 verification failure, 3 exact
oracle budget exceeded. The default seed comes from ``EGE_LAB_SEED`` (or 0).
Every output embeds its full configuration, seed included.
"""

import argparse
import json
import os
import sys

import numpy as np

from .charpoly import Grid, eval_grid, min_modulus_on_disk, render_portrait
from .chebmod import cheb_poly
from .clinalg import eigenvalues
from .errors import BudgetExceeded, DomainError, Unsupported
from .gaflimit import DEFAULT_K, GafParams, export_samples_csv
from .momentcomb import cov_table, phi_c_poly, phi_poly
from .sampling import EgeParams, derive_stream, sample_ege
from .spectrum import EllipseSpec, export_scatter, outlier_count
from .tracestats import DEFAULT_KMAX, mc_moments
from .wickoracle import H_COEFF_MAX_K, h_coeff

__all__ = ['main', 'build_parser']

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3
GAF_POINTS = (0.3, 0.4j, 0.25 + 0.25j)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _unit_interval(text):
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError("t must lie in [0, 1]")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _default_seed():
    raw = os.environ.get("EGE_LAB_SEED")
    if raw is None or raw == "":
        return 0
    try:
        seed = int(raw)
    except ValueError as exc:
        raise UsageError(f"EGE_LAB_SEED must be an integer, got {raw!r}") from exc
    if not 0 <= seed < 2 ** 64:
        raise UsageError("EGE_LAB_SEED must be an unsigned 64-bit integer")
    return seed


def build_parser():
    parser = _Parser(prog="egelab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    def common(p, n=True, seed=True):
        if n:
            p.add_argument("--n", type=_positive_int, required=True, help="matrix order")
        p.add_argument("--t", type=_unit_interval, required=True, help="parameter in [0, 1]")
        if seed:
            p.add_argument("--seed", type=int, default=None, help="base seed")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("portrait", help="phase portrait of f_{n,t} as PPM")
    common(p)
    p.add_argument("--res", type=_positive_int, default=256)
    p.add_argument("--center-re", type=float, default=0.0)
    p.add_argument("--center-im", type=float, default=0.0)
    p.add_argument("--half-width", type=float, default=1.0)
    p.add_argument("--format", choices=["ppm"], default="ppm")

    p = sub.add_parser("moments", help="limiting covariance tables as JSON")
    common(p, n=False, seed=False)
    p.add_argument("--kmax", type=_positive_int, default=8)
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("traces", help="Monte Carlo moments of trace statistics")
    common(p)
    p.add_argument("--reps", type=_positive_int, default=2000)
    p.add_argument("--kmax", type=_positive_int, default=5)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("gaf", help="samples of the limiting random function as CSV")
    common(p, n=False)
    p.add_argument("--reps", type=_positive_int, default=1000, help="number of draws")
    p.add_argument("--kmax", type=_positive_int, default=DEFAULT_K, help="series truncation K")
    p.add_argument("--center-re", type=float, default=None, help="extra point, real part")
    p.add_argument("--center-im", type=float, default=None, help="extra point, imaginary part")
    p.add_argument("--format", choices=["csv"], default="csv")

    p = sub.add_parser("spectrum", help="eigenvalue scatter CSV and outlier count")
    common(p)
    p.add_argument("--inflation", type=float, default=1.1)
    p.add_argument("--r", type=float, default=None, help="also report min log|f| on |z| <= r")
    p.add_argument("--res", type=_positive_int, default=33, help="grid side for --r")
    p.add_argument("--format", choices=["csv"], default="csv")

    p = sub.add_parser("verify", help="run the acceptance checks")
    tier = p.add_mutually_exclusive_group()
    tier.add_argument("--quick", action="store_true", help="exact checks only (default)")
    tier.add_argument("--full", action="store_true", help="include Monte Carlo suites")
    return parser


def _config(args):
    cfg = {k: v for k, v in vars(args).items() if k != "out"}
    return json.dumps(cfg, sort_keys=True, separators=(",", ":"))


def _emit(args, data):
    if isinstance(data, str):
        data = data.encode("utf-8")
    if args.out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(args.out, "wb") as fh:
            fh.write(data)


def _matrix(args):
    p = EgeParams(args.n, args.t, args.seed)
    return sample_ege(derive_stream(p.seed, 0), p)


def _run_portrait(args):
    if args.res < 2 or args.half_width <= 0:
        raise UsageError("portrait needs --res >= 2 and --half-width > 0")
    grid = Grid(complex(args.center_re, args.center_im), args.half_width, args.res)
    raster = render_portrait(eval_grid(_matrix(args), args.t, grid))
    _emit(args, raster.to_ppm("config " + _config(args)))
    return EXIT_OK


def _run_moments(args):
    tab = cov_table(args.t, args.kmax)
    polys = [cheb_poly(k, args.t) for k in range(args.kmax + 1)]
    worst_phi = worst_phi_c = 0.0
    for k in range(1, args.kmax + 1):
        for l in range(1, args.kmax + 1):
            d = k == l
            worst_phi = max(worst_phi, abs(phi_poly(args.t, polys[k], polys[l])
                                           - (k * args.t ** k if d else 0)))
            worst_phi_c = max(worst_phi_c, abs(phi_c_poly(args.t, polys[k], polys[l])
                                               - (k if d else 0)))
    hs = {str(k): h_coeff(k, args.t) for k in range(1, min(args.kmax, H_COEFF_MAX_K) + 1)}
    report = {
        "config": json.loads(_config(args)),
        "identity_checks": {
            "phi_chebyshev_diagonal_max_error": worst_phi,
            "phi_c_chebyshev_diagonal_max_error": worst_phi_c,
            "passed": worst_phi <= 1e-9 and worst_phi_c <= 1e-9,
        },
        "h_coeff": hs,
    }
    _emit(args, tab.to_json(report) + "\n")
    return EXIT_OK


def _run_traces(args):
    if args.reps < 100:
        raise UsageError("traces needs --reps >= 100")
    if args.kmax > DEFAULT_KMAX:
        raise UsageError(f"traces needs --kmax <= {DEFAULT_KMAX}")
    est = mc_moments(EgeParams(args.n, args.t, args.seed), args.reps, args.kmax)
    est.config = json.loads(_config(args))
    if args.format == "csv":
        _emit(args, est.to_csv("config " + _config(args)))
    else:
        _emit(args, est.to_json() + "\n")
    return EXIT_OK


def _run_gaf(args):
    zs = list(GAF_POINTS)
    if (args.center_re is None) != (args.center_im is None):
        raise UsageError("gaf needs both --center-re and --center-im or neither")
    if args.center_re is not None:
        zs.append(complex(args.center_re, args.center_im))
    p = GafParams(args.t, args.kmax, args.seed)
    _emit(args, export_samples_csv(p, zs, args.reps, "config " + _config(args)))
    return EXIT_OK


def _run_spectrum(args):
    if args.inflation < 1:
        raise UsageError("spectrum needs --inflation >= 1")
    a = _matrix(args)
    spec = eigenvalues(a)
    count = outlier_count(spec, args.n, EllipseSpec(args.t, args.inflation))
    lines = ["# config " + _config(args), f"# outliers {count}"]
    msg = f"outliers: {count}"
    if args.r is not None:
        if not 0 < args.r < 1:
            raise UsageError("--r must lie in (0, 1)")
        mlog = min_modulus_on_disk(a, args.t, args.r, args.res)
        lines.append(f"# min_log_modulus {mlog!r}")
        msg += f", min log|f| on |z|<={args.r}: {mlog:.4f}"
    _emit(args, "\n".join(lines) + "\n" + export_scatter(spec, args.n))
    print(msg, file=sys.stderr)
    return EXIT_OK


def _run_verify(args):
    from . import verification

    results = verification.run(full=args.full)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


_HANDLERS = {
    "portrait": _run_portrait, "moments": _run_moments, "traces": _run_traces,
    "gaf": _run_gaf, "spectrum": _run_spectrum, "verify": _run_verify,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "seed", "absent") is None:
            args.seed = _default_seed()
        if hasattr(args, "seed") and not 0 <= args.seed < 2 ** 64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        return _HANDLERS[args.subcommand](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, Unsupported) as exc:
        print(f"egelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"egelab: oracle budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
