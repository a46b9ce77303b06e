"""Command-line front end: classify | quantize | spectrum | simulate | verify.

Exit codes: 0 success, 1 check failure or runtime error, 2 usage error,
3 numerical blow-up.
"""

import argparse
import sys

import numpy as np

from . import dynamics
from .errors import BlowUpError, LeeOscError
from .fixtures import FIXTURE_PARAMS
from .model import ModelParams, classify_region
from .pipeline import run_quantize
from .serialize import csv_text, dumps
from .spectral import inverted_family, mode_eigenfunction, spectrum
from .verify import format_checks, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BLOWUP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params_from(args):
    gamma, lam = args.gamma, args.lam
    if args.fixture:
        fp = FIXTURE_PARAMS[args.fixture]
        gamma = fp.gamma if gamma is None else gamma
        lam = fp.lam if lam is None else lam
    return (0.0 if gamma is None else gamma), (0.0 if lam is None else lam)


def cmd_classify(args):
    (g0, g1), (l0, l1) = args.gamma_range, args.lambda_range
    if args.steps < 2:
        raise UsageError("--steps must be >= 2")
    if not (g0 < g1 and l0 < l1):
        raise UsageError("ranges must be given as LO HI with LO < HI")
    rows = []
    for g in np.linspace(g0, g1, args.steps):
        for l in np.linspace(l0, l1, args.steps):
            rc = classify_region((g, l))
            rows.append([float(g), float(l), rc.f, rc.det_sign, rc.neg_count, rc.case_label])
    _emit(csv_text(["gamma", "lambda", "f", "det_sign", "neg_count", "case_label"], rows), args.out)
    return EXIT_OK


def _report(args):
    gamma, lam = _params_from(args)
    return run_quantize(gamma, lam, args.fixture, args.b3, args.b4, args.nmax, args.fixture_dir)


def cmd_quantize(args):
    _emit(dumps(_report(args)), args.out)
    return EXIT_OK


def cmd_spectrum(args):
    rep = _report(args)
    dec = rep.decoupled
    if dec is None or not rep.spectrum_sample:
        sys.stderr.write(f"no spectrum: pipeline branch {rep.pipeline_branch}; {'; '.join(rep.notes)}\n")
        return EXIT_FAIL
    if args.eigenfunction:
        mode = dec.mode_x if args.eigenfunction == "x" else dec.mode_y
        branch = 1 if dec.relative_sign > 0 else -1
        if mode.regime == "inverted":
            inverted_family(mode, branch)  # validates the mode
        f = mode_eigenfunction(mode, args.index, branch=branch)
        _emit(dumps(f.to_dict()), args.out)
        return EXIT_OK
    levels = [spectrum(dec, n, m).to_dict() for n in range(args.nmax + 1) for m in range(args.mmax + 1)]
    _emit(dumps(levels), args.out)
    return EXIT_OK


def cmd_simulate(args):
    if args.system == "lee":
        gamma, lam = _params_from(args)
        sys_ = dynamics.lee_system(ModelParams(gamma, lam))
    elif args.system == "bateman":
        lam = 0.0 if args.lam is None else args.lam
        sys_ = dynamics.bateman_system(0.0 if args.gamma is None else args.gamma)
    else:
        lam = 0.0 if args.lam is None else args.lam
        sys_ = dynamics.generalized_system(0.0 if args.gamma is None else args.gamma, args.A, args.B)
    if args.stride < 1:
        raise UsageError("--stride must be >= 1")
    s0 = [args.x0, args.y0, args.vx0, args.vy0]
    tr = dynamics.integrate(sys_, s0, args.dt, args.T)
    pl = dynamics.p_lambda(tr.y, lam)
    idx = range(0, len(tr), args.stride)
    rows = [[float(tr.t[k]), *map(float, tr.y[k]), float(pl[k])] for k in idx]
    _emit(csv_text(["t", "x", "y", "xdot", "ydot", "p_lambda"], rows), args.out)
    return EXIT_OK


def cmd_verify(args):
    checks = run_checks(args.fixture_dir)
    text = format_checks(checks) + "\n"
    _emit(text, args.out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def _add_model_args(p, fixture=True):
    p.add_argument("--gamma", type=float, default=None, help="damping-like coupling (default 0, or the fixture's)")
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="position coupling (default 0, or the fixture's)")
    if fixture:
        p.add_argument("--fixture", choices=sorted(FIXTURE_PARAMS), default=None,
                       help="use the shipped diagonalizing matrix for this worked case")
        p.add_argument("--fixture-dir", default=None, help="directory holding case1_S.txt / case2_S.txt")
        p.add_argument("--b3", type=float, default=None, help="Bopp free parameter (default: unit momentum coefficient)")
        p.add_argument("--b4", type=float, default=None, help="Bopp free parameter (default: unit momentum coefficient)")


def build_parser():
    parser = argparse.ArgumentParser(prog="leeosc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="sweep the (gamma, lambda) region map to CSV")
    p.add_argument("--gamma-range", nargs=2, type=float, default=[-2.0, 2.0], metavar=("LO", "HI"))
    p.add_argument("--lambda-range", nargs=2, type=float, default=[-2.0, 2.0], metavar=("LO", "HI"))
    p.add_argument("--steps", type=int, default=41, help="grid points per axis (default 41)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("quantize", help="run the quantization pipeline, JSON report")
    _add_model_args(p)
    p.add_argument("--nmax", type=int, default=3, help="spectrum sample size per quantum number (default 3)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("spectrum", help="energy table or eigenfunction dump, JSON")
    _add_model_args(p)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--mmax", type=int, default=3)
    p.add_argument("--eigenfunction", choices=["x", "y"], default=None, help="dump one mode's eigenfunction instead")
    p.add_argument("--index", type=int, default=0, help="quantum number for --eigenfunction")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("simulate", help="integrate a classical system, CSV trajectory")
    p.add_argument("--system", choices=["lee", "bateman", "generalized"], default="lee")
    _add_model_args(p, fixture=False)
    p.add_argument("--A", type=float, default=0.0, help="generalized system coupling A")
    p.add_argument("--B", type=float, default=0.0, help="generalized system coupling B")
    for name in ("x0", "y0", "vx0", "vy0"):
        p.add_argument(f"--{name}", type=float, default=0.0)
    p.add_argument("--dt", type=float, default=1e-3, help="time step (default 1e-3)")
    p.add_argument("--T", type=float, default=100.0, help="final time (default 100)")
    p.add_argument("--stride", type=int, default=1, help="write every STRIDE-th sample (default 1)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate, fixture=None)

    p = sub.add_parser("verify", help="run the fixture reproduction checks")
    p.add_argument("--fixture-dir", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with 2
    except BlowUpError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BLOWUP
    except (FileNotFoundError, LeeOscError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
