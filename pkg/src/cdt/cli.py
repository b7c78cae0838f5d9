"""``cdt`` command line: analyze, dual-scan, check, reproduce.

Exit codes: 0 success, 1 a self-check or reproduction failed, 2 bad input,
3 no seed converged.
"""
import argparse
import csv
import json
import logging
import math
import os
import sys

import numpy as np

from . import tolerances as tol
from .canonical import Kind
from .complementary import f_grad, f_hess, f_value, in_X0
from .dual import classify_sigma, d_grad, d_hess, d_value
from .estimator import TrialityAnalyzer
from .exceptions import CDTError, ProblemDocumentError
from .instances import random_interior_sigma
from .io import load_problem
from .oracle import fd_grad, fd_hess, numeric_conjugate
from .reproduce import REPRODUCTIONS

EXIT_OK, EXIT_CHECK_FAILED, EXIT_BAD_INPUT, EXIT_NO_CONVERGENCE = 0, 1, 2, 3

logger = logging.getLogger("cdt")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _jsonable(obj):
    """Replace non-finite floats by the strings ``inf``, ``-inf``, ``nan`` so output is strict JSON."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        val = float(obj)
        return val if math.isfinite(val) else ("nan" if math.isnan(val) else ("inf" if val > 0 else "-inf"))
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _emit_json(doc, out):
    text = json.dumps(_jsonable(doc), indent=2, allow_nan=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args):
    problem, seeds = load_problem(args.file)
    est = TrialityAnalyzer(
        tol_critical=args.tol_critical,
        tol_psd=args.tol_psd,
        band=args.band,
        n_random_seeds=args.seeds,
        random_state=args.random_state,
        n_jobs=os.cpu_count() if args.parallel else None,
    ).fit(problem, seeds)
    _emit_json(est.report(), args.output)
    if est.n_converged_ == 0:
        print("no seed converged to a dual critical point", file=sys.stderr)
        for entry in est.seed_results_:
            print(f"  seed {entry['index']}: {entry['error']}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def _parse_range(text):
    try:
        a, b = (float(t) for t in text.split(":"))
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected a:b") from None
    if not (math.isfinite(a) and math.isfinite(b)):
        raise UsageError(f"bad range {text!r}")
    return a, b


def _scan_grid(args, m):
    try:
        axes = [int(t) for t in args.axis.split(",")]
    except ValueError:
        raise UsageError(f"bad axis {args.axis!r}, expected i or i,j") from None
    if not 1 <= len(axes) <= 2 or len(set(axes)) != len(axes) or any(not 0 <= a < m for a in axes):
        raise UsageError(f"axis must name one or two distinct indices in 0..{m - 1}")
    ranges = [_parse_range(r) for r in args.range.split(",")]
    if len(ranges) == 1:
        ranges = ranges * len(axes)
    if len(ranges) != len(axes):
        raise UsageError("give one range, or one per axis")
    if args.steps < 1:
        raise UsageError("steps must be positive")
    base = np.zeros(m)
    if args.at:
        try:
            base = np.array([float(t) for t in args.at.split(",")])
        except ValueError:
            raise UsageError(f"bad base point {args.at!r}") from None
        if base.size != m:
            raise UsageError(f"base point needs {m} components")
    ticks = [np.linspace(a, b, args.steps) for a, b in ranges]
    # row-major: the first axis varies slowest
    for combo in np.stack(np.meshgrid(*ticks, indexing="ij"), axis=-1).reshape(-1, len(axes)):
        s = base.copy()
        s[axes] = combo
        yield s


SCAN_FLAGS = ("in_dom_Vstar", "in_Y0", "in_Yplus", "in_Yminus", "in_Ycol", "in_Ycol_plus", "in_Ycol_minus")


def cmd_dual_scan(args):
    problem, _ = load_problem(args.file)
    rows = list(_scan_grid(args, problem.m))
    fh = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    try:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow([f"sigma_{i}" for i in range(problem.m)] + ["D", "region"] + list(SCAN_FLAGS))
        for s in rows:
            region = classify_sigma(problem, s, tol_psd=args.tol_psd)
            d = d_value(problem, s, tol_psd=args.tol_psd) if region.in_Scol else None
            cells = [repr(float(v)) for v in s]
            cells.append("" if d is None or not math.isfinite(d) else repr(float(d)))
            cells.append(region.name)
            cells += [int(getattr(region, f)) for f in SCAN_FLAGS]
            writer.writerow(cells)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


def _rel_err(approx, exact):
    approx, exact = np.asarray(approx, dtype=float), np.asarray(exact, dtype=float)
    return float(np.max(np.abs(approx - exact)) / max(1.0, float(np.max(np.abs(exact)))))


def self_check(problem, points=5, seed=0):
    """Compare analytic derivatives and conjugates with the brute-force oracles.

    Returns a dict of named checks, each with the worst error seen and a pass flag.
    """
    rng = np.random.default_rng(seed)
    v = problem.v
    checks = {}

    def record(name, err, limit):
        prev = checks.get(name, {"max_error": 0.0, "limit": limit, "samples": 0})
        prev["max_error"] = max(prev["max_error"], err)
        prev["samples"] += 1
        prev["passed"] = prev["max_error"] <= limit
        checks[name] = prev

    if v.is_smooth:
        for _ in range(points):
            x = rng.normal(size=problem.n)
            if not in_X0(problem, x):
                continue
            record("f_grad", _rel_err(fd_grad(lambda z: f_value(problem, z), x), f_grad(problem, x)), 1e-5)
            record("f_hess", _rel_err(fd_hess(lambda z: f_value(problem, z), x), f_hess(problem, x)), 1e-4)
    for _ in range(points):
        s = random_interior_sigma(rng, v)
        if classify_sigma(problem, s).in_S0:
            try:
                g = fd_grad(lambda t: d_value(problem, t), s)
                H = fd_hess(lambda t: d_value(problem, t), s)
            except CDTError:
                pass  # stencil crossed a singular A(sigma)
            else:
                record("d_grad", _rel_err(g, d_grad(problem, s)), 1e-5)
                record("d_hess", _rel_err(H, d_hess(problem, s)), 1e-4)
        if v.m <= 3:
            exact = v.conjugate(s)
            record("conjugate", abs(numeric_conjugate(v, s) - exact) / max(1.0, abs(exact)), 1e-6)
    if v.kind is not Kind.INDICATOR_CONE:
        for _ in range(points):
            y = rng.normal(size=v.m)
            if v.in_int_dom(y):
                sig = v.grad(y)
                record("fenchel_young", abs(v.value(y) + v.conjugate(sig) - y @ sig), 1e-8)
    return checks


def cmd_check(args):
    problem, _ = load_problem(args.file)
    checks = self_check(problem, points=args.points, seed=args.random_state or 0)
    ok = all(c["passed"] for c in checks.values())
    _emit_json({"passed": ok, "checks": checks}, args.output)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_reproduce(args):
    if args.name not in REPRODUCTIONS:
        print(f"unknown reproduction {args.name!r}; choose from {', '.join(REPRODUCTIONS)}", file=sys.stderr)
        return EXIT_BAD_INPUT
    result = REPRODUCTIONS[args.name]()
    print(result.render())
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def build_parser():
    parser = _Parser(prog="cdt", description="Canonical duality analysis of f = q0 + V(q(x)).")
    tols = _Parser(add_help=False)
    tols.add_argument("--tol-critical", type=float, default=tol.TOL_CRITICAL)
    tols.add_argument("--tol-psd", type=float, default=tol.TOL_PSD)
    tols.add_argument("--band", type=float, default=tol.BAND)
    tols.add_argument("-o", "--output", help="write to this file instead of stdout")
    tols.add_argument("--random-state", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[tols], help="find dual critical points and classify them")
    p.add_argument("file")
    p.add_argument("--seeds", type=int, default=0, help="extra random seeds beyond the document's")
    p.add_argument("--parallel", action="store_true", help="run seeds on a thread pool")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("dual-scan", parents=[tols], help="tabulate D and region flags on a sigma grid")
    p.add_argument("file")
    p.add_argument("--axis", required=True, help="i or i,j (0-based sigma components)")
    p.add_argument("--range", required=True, help="a:b, or a:b,c:d for two axes")
    p.add_argument("--steps", type=int, required=True, help="samples per axis, endpoints included")
    p.add_argument("--at", help="comma-separated base point for the other components (default 0)")
    p.set_defaults(func=cmd_dual_scan)

    p = sub.add_parser("check", parents=[tols], help="derivative and conjugate self-test")
    p.add_argument("file")
    p.add_argument("--points", type=int, default=5)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reproduce", help="run a canned demonstration")
    p.add_argument("name", help=", ".join(REPRODUCTIONS))
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None):
    level = os.environ.get("CDT_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"cdt: error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ProblemDocumentError as e:
        print(f"cdt: bad problem document: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
