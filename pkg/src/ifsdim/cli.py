"""Command-line entry point.

Exit codes: 0 success, 1 a ``verify`` check failed, 2 usage or parameter
error, 3 theorem hypothesis not met, 4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import verify as verify_mod
from .chain import (
    balance_residuals,
    build_truncated_chain,
    solve_stationary,
    unit_params,
    xi_converged,
    xi_from_stationary,
)
from .dimensions import theorem_bounds
from .errors import HypothesisNotMet, IfsDimError, NoConvergence
from .multiscale import base_grid_from_stationary, refine_grid
from .output import dumps, run_metadata, write_csv, write_json, write_sidecar
from .params import theorem_applicability, validate_params
from .simulate import GENERATOR, SimConfig, empirical_distribution_export, simulate_lumped_digits, simulate_trajectory
from .spectrum import spectrum_lower_bounds

log = logging.getLogger("ifsdim")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_NO_CONVERGENCE = 0, 1, 2, 3, 4


def _common(parser):
    parser.add_argument("--alpha", type=int, default=2, help="integer contraction factor (>= 2)")
    parser.add_argument("--beta", type=int, default=1, help="integer translation (>= 1)")
    parser.add_argument("--p", default="1/3", help='translation probability; accepts "a/b"')
    parser.add_argument("--out", default=None, help="output path (directory for simulate)")
    parser.add_argument("-v", "--verbose", action="store_true")


def _truncation(parser):
    parser.add_argument("--n", type=int, default=None, help="truncation size; omit to double until xi converges")
    parser.add_argument("--tol", type=float, default=1e-6, help="xi convergence tolerance when --n is omitted")
    parser.add_argument("--method", choices=("auto", "power", "elimination"), default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ifsdim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("xi", help="digit-frequency vector from the truncated chain (JSON)")
    _common(p)
    _truncation(p)

    p = sub.add_parser("bounds", help="Hausdorff, naive and packing bounds (JSON)")
    _common(p)
    _truncation(p)
    p.add_argument("--upper-only", action="store_true", help="emit the upper bound when the lower-bound hypotheses fail")

    p = sub.add_parser("spectrum", help="multifractal spectrum lower bounds (CSV)")
    _common(p)
    p.add_argument("--grid", type=int, default=512)
    p.add_argument("--clamp-max", type=float, default=1.0)

    p = sub.add_parser("simulate", help="Monte-Carlo digit frequencies and trajectory distribution")
    _common(p)
    p.add_argument("--mode", choices=("digits", "trajectory", "both"), default="both")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=10**6)
    p.add_argument("--burn-in", type=int, default=1000)
    p.add_argument("--record-every", type=int, default=1)
    p.add_argument("--replica", type=int, default=0)
    p.add_argument("--bins", type=int, default=500)

    p = sub.add_parser("refine", help="masses of alpha-adic intervals (CSV)")
    _common(p)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--method", choices=("auto", "power", "elimination"), default="auto")

    p = sub.add_parser("verify", help="run the oracle cross-checks and print a pass/fail table")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=10**6)
    p.add_argument("--out", default=None, help="write the results as JSON")
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


def _params(args):
    return validate_params(args.alpha, args.beta, args.p)


def _solve_xi(args, params):
    """xi for ``params`` via the beta=1 chain, plus truncation info."""
    chain_params = unit_params(params)
    if args.n is None:
        xi, n = xi_converged(chain_params, tol=args.tol)
    else:
        n = args.n
    sv = solve_stationary(build_truncated_chain(chain_params, n), method=args.method)
    if args.n is not None:
        xi = xi_from_stationary(sv, params.alpha)
    m_max = n // params.alpha - 1
    balance = (
        float(np.abs(balance_residuals(sv.probabilities, params.alpha, params.p, m_max)).max())
        if m_max >= 0
        else 0.0
    )
    truncation = {
        "n": n,
        "residual": sv.residual,
        "method": sv.method,
        "iterations": sv.iterations,
        "balance_residual": balance,
    }
    if args.n is None:
        truncation["xi_tol"] = args.tol
    return xi, truncation


def _require_chain_beta(params, appl):
    if params.beta != 1 and appl.t_power is None:
        raise HypothesisNotMet("beta=alpha^t", "xi is only available for beta = alpha^t (hypothesis beta=alpha^t)")


def cmd_xi(args):
    params = _params(args)
    _require_chain_beta(params, theorem_applicability(params))
    xi, trunc = _solve_xi(args, params)
    meta = run_metadata("xi", params, truncation_n=trunc["n"], tolerances={"xi": args.tol, "solver": 1e-12})
    payload = {"params": params.as_dict(), "truncation": trunc, "xi": xi.xi, "mean_digit": xi.mean_digit}
    write_json(args.out, payload, meta)
    if args.out:
        print("xi = (" + ", ".join(f"{v:.6f}" for v in xi.xi) + f")  [n={trunc['n']}]")
    return EXIT_OK


def cmd_bounds(args):
    params = _params(args)
    appl = theorem_applicability(params)
    _require_chain_beta(params, appl)
    if not args.upper_only:
        appl.require_lower()
    xi, trunc = _solve_xi(args, params)
    b = theorem_bounds(xi, params, appl, require_lower=not args.upper_only)
    meta = run_metadata("bounds", params, truncation_n=trunc["n"], tolerances={"xi": args.tol, "solver": 1e-12})
    payload = {
        "params": params.as_dict(),
        "truncation": trunc,
        "xi": xi.xi,
        "bounds": b.as_dict(),
        "mean_digit": b.mean_digit,
        "applicability": {
            "upper_bound_ok": appl.upper_bound_ok,
            "lower_and_spectrum_ok": appl.lower_and_spectrum_ok,
            "t_power": appl.t_power,
        },
    }
    write_json(args.out, payload, meta)
    if args.out:
        lo = "n/a" if b.hausdorff_lower is None else f"{b.hausdorff_lower:.3f}"
        print(f"{lo} <= dim_H pi <= dim_H* pi <= {b.hausdorff_upper:.3f}  (naive {b.naive_upper:.3f})")
    return EXIT_OK


def cmd_spectrum(args):
    params = _params(args)
    curve = spectrum_lower_bounds(params, args.grid, args.clamp_max)
    meta = run_metadata("spectrum", params, grid_points=args.grid, clamp_max=args.clamp_max)
    write_csv(args.out, ["t", "fbar_lower_bound", "funder_lower_bound", "upper_line_t"], curve.rows(), meta)
    return EXIT_OK


def cmd_simulate(args):
    params = _params(args)
    cfg = SimConfig(args.seed, args.steps, args.burn_in, args.record_every, args.replica)
    meta = run_metadata(
        "simulate",
        params,
        seed=cfg.seed,
        steps=cfg.steps,
        burn_in=cfg.burn_in,
        record_every=cfg.record_every,
        replica=cfg.replica,
        generator=GENERATOR,
    )
    out = Path(args.out) if args.out else None
    if out is None and args.mode != "digits":
        raise SystemExit("simulate: --out DIR is required for trajectory output")
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    if args.mode in ("digits", "both"):
        est = simulate_lumped_digits(params, cfg)
        write_json(out / "digits.json" if out else None, {"params": params.as_dict(), "digits": est.as_dict()}, meta)
    if args.mode in ("trajectory", "both"):
        stats = simulate_trajectory(params, cfg)
        hist, cdf = empirical_distribution_export(stats, args.bins)
        hmeta = dict(meta, bins=args.bins)
        write_csv(out / "histogram.csv", ["bin_left", "bin_right", "count", "density"], hist.rows(), hmeta)
        write_csv(out / "cdf.csv", ["x", "cumulative_fraction"], cdf.rows(), hmeta)
    return EXIT_OK


def cmd_refine(args):
    params = _params(args)
    if params.beta != 1:
        raise HypothesisNotMet("beta=1", "interval masses are computed for beta = 1 only")
    sv = solve_stationary(build_truncated_chain(params, args.n), method=args.method)
    grid = base_grid_from_stationary(sv, params)
    rows = list(grid.rows())
    for _ in range(args.levels):
        grid = refine_grid(grid)
        rows.extend(grid.rows())
    meta = run_metadata("refine", params, truncation_n=args.n, levels=args.levels)
    write_csv(args.out, ["level", "n", "interval_left", "interval_right", "mass"], rows, meta)
    return EXIT_OK


def cmd_verify(args):
    results = verify_mod.run_all(seed=args.seed, steps=args.steps)
    print(verify_mod.format_table(results))
    if args.out:
        meta = run_metadata("verify", seed=args.seed, steps=args.steps, generator=GENERATOR)
        payload = {"checks": [r.as_dict() for r in results], "all_passed": all(r.passed for r in results)}
        Path(args.out).write_text(dumps(dict(payload, metadata=meta)))
        write_sidecar(Path(args.out), meta)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


COMMANDS = {
    "xi": cmd_xi,
    "bounds": cmd_bounds,
    "spectrum": cmd_spectrum,
    "simulate": cmd_simulate,
    "refine": cmd_refine,
    "verify": cmd_verify,
}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except HypothesisNotMet as exc:
        print(f"ifsdim: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except NoConvergence as exc:
        print(f"ifsdim: did not converge: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (IfsDimError, ValueError) as exc:
        print(f"ifsdim: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return EXIT_USAGE
        return int(exc.code or 0)


def main():
    sys.exit(run_cli())
