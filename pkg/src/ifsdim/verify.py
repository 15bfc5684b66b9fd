"""Cross-checks run by ``ifsdim verify``.

Each check pairs a computed quantity with an independent route (exact
rationals, a second solver, simulation, or a closed-form identity) and
reports the discrepancy against a fixed threshold.  Everything is
deterministic given the seed.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .chain import (
    balance_residuals,
    build_truncated_chain,
    interval_mass,
    solve_stationary,
    xi_converged,
)
from .digits import g_exponent, g_exponent_digit_form
from .dimensions import barreira_dim, d_bar, eggleston_dim, naive_upper_bound, theorem_bounds
from .multiscale import base_grid_from_stationary, compute_K, envelope_check, refine_grid
from .params import theorem_applicability, validate_params
from .simulate import SimConfig, simulate_lumped_digits
from .spectrum import spectrum_lower_bounds

P5_EXACT = [Fraction(v, 57) for v in (32, 16, 6, 2, 1)]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    threshold: float
    detail: str = ""

    def as_dict(self):
        return asdict(self)


def _check(name, value, threshold, detail="", le=True):
    passed = bool(value <= threshold) if le else bool(value >= threshold)
    return CheckResult(name, passed, float(value), float(threshold), detail)


def check_small_chain():
    params = validate_params(2, 1, "1/3")
    chain = build_truncated_chain(params, 5)
    p = params.p
    printed = np.array(
        [
            [1 - p, p, 0, 0, 0],
            [1 - p, 0, p, 0, 0],
            [0, 1 - p, 0, p, 0],
            [0, 1 - p, 0, 0, p],
            [0, 0, 1 - p, 0, p],
        ]
    )
    yield _check("P5 dense rendering", np.abs(chain.to_dense() - printed).max(), 0.0)
    exact = np.array([float(v) for v in P5_EXACT])
    for method in ("elimination", "power"):
        sv = solve_stationary(chain, tol=1e-14, method=method)
        yield _check(f"P5 stationary vector ({method})", np.abs(sv.probabilities - exact).max(), 1e-12)


def check_solver_agreement():
    worst = 0.0
    for alpha in (2, 3, 5):
        params = validate_params(alpha, 1, "1/3")
        for n in (16, 64, 256, 512):
            chain = build_truncated_chain(params, n)
            a = solve_stationary(chain, method="power").probabilities
            b = solve_stationary(chain, method="elimination").probabilities
            worst = max(worst, float(np.abs(a - b).max()))
    yield _check("power iteration vs elimination, n<=512", worst, 1e-10)


def check_simulation(seed: int, steps: int):
    for alpha in (2, 5):
        params = validate_params(alpha, 1, "1/3")
        xi, _ = xi_converged(params, tol=1e-6)
        est = simulate_lumped_digits(params, SimConfig(seed=seed, steps=steps, burn_in=1000))
        diff = float(np.abs(est.frequencies - xi.xi).max())
        tol = max(2e-3, 5.0 * float(np.max(est.standard_errors)))
        yield _check(f"xi chain vs simulation (alpha={alpha})", diff, tol, f"steps={steps}")
        se_rate = np.sqrt(params.p * (1 - params.p) / est.steps_counted)
        yield _check(
            f"digit emission rate vs 1-p (alpha={alpha})",
            abs(est.emission_rate - (1 - params.p)) / se_rate,
            3.0,
            "in standard errors",
        )


def check_invariance():
    params = validate_params(2, 1, "1/3")
    p = params.p
    pi = solve_stationary(build_truncated_chain(params, 200)).probabilities
    yield _check("balance residual n=200, m<=50", np.abs(balance_residuals(pi, 2, p, 50)).max(), 1e-6)
    pi = solve_stationary(build_truncated_chain(params, 400)).probabilities
    worst = max(abs(interval_mass(pi, x, 2 * x) / pi[x - 1] - p / (1 - p)) for x in range(1, 11))
    yield _check("interval ratio pi[x,2x]/pi[x-1,x] = p/(1-p), x<=10", worst, 1e-9)
    m = np.arange(20, 41)
    slope = np.polyfit(m, np.log(pi[m]), 1)[0]
    yield _check("log-mass decay slope vs log p", abs(slope / np.log(p) - 1.0), 0.02)
    grid = base_grid_from_stationary(pi, params)
    const = compute_K(params, grid=grid)
    yield _check("K constant (alpha=2, p=1/3)", abs(const.K - 3.4567452382934647), 1e-9)
    yield _check("unit-interval envelope violations", int((~envelope_check(grid, const, 1e-12).passed).sum()), 0)


def check_refinement():
    params = validate_params(2, 1, "1/3")
    pi = solve_stationary(build_truncated_chain(params, 200)).probabilities
    grid = base_grid_from_stationary(pi, params)
    const = compute_K(params, grid=grid)
    worst, failures = 0.0, 0
    failures += int((~envelope_check(grid, const, 1e-6).passed).sum())
    for k in (1, 2, 3):
        child = refine_grid(grid)
        n_parent = 10 * 2 ** (k - 1)
        sums = child.masses[: 2 * n_parent].reshape(n_parent, 2).sum(axis=1)
        worst = max(worst, float(np.abs(sums - grid.masses[:n_parent]).max()))
        failures += int((~envelope_check(child, const, 1e-6).passed).sum())
        grid = child
    yield _check("refinement conservation k<=3 on [0,10]", worst, 1e-12)
    yield _check("fine-scale envelope violations k<=3", failures, 0)


def check_formulas():
    worst = max(
        abs(barreira_dim(2, t).dimension - eggleston_dim((1 - t, t), 2))
        for t in np.round(np.arange(0.05, 0.951, 0.05), 10)
    )
    yield _check("Barreira(2,t) vs Eggleston((1-t,t))", worst, 1e-10)
    ident, excess = 0.0, -np.inf
    for alpha in (2, 3, 5):
        for p in ("1/10", "1/5", "3/10", "2/5", "1/2"):
            params = validate_params(alpha, 1, p)
            ident = max(ident, abs(naive_upper_bound(params) - d_bar(params.p / (1 - params.p), params)))
            xi, _ = xi_converged(params, tol=1e-6)
            b = theorem_bounds(xi, params, theorem_applicability(params))
            excess = max(excess, b.hausdorff_upper - min(1.0, b.naive_upper))
    yield _check("naive bound = d_bar(p/(1-p))", ident, 1e-12)
    yield _check("upper bound - min(1, naive)", max(excess, 0.0), 1e-12)


def check_g_identity(n_max: int = 4096, k_max: int = 12):
    mismatches = 0
    for alpha in (2, 3, 5):
        for n in range(n_max + 1):
            for k in range(k_max + 1):
                if g_exponent(n, k, alpha) != g_exponent_digit_form(n, k, alpha):
                    mismatches += 1
    yield _check(f"g(n,k) closed forms, n<={n_max}, k<={k_max}", mismatches, 0)


def check_spectrum():
    params = validate_params(5, 1, "1/3")
    curve = spectrum_lower_bounds(params)
    t, f = curve.t_grid, curve.upper_spectrum_lb
    yield _check("spectrum bound <= t", float(np.max(f - t)), 1e-9)
    yield _check("spectrum zero for t <= d_bar(0)", float(np.max(np.abs(f[t <= d_bar(0.0, params)]))), 0.0)
    yield _check("spectrum non-decreasing", float(max(0.0, -np.diff(f).min())), 0.0)


def run_all(seed: int = 0, steps: int = 10**6, g_n_max: int = 4096):
    checks = [
        check_small_chain(),
        check_solver_agreement(),
        check_simulation(seed, steps),
        check_invariance(),
        check_refinement(),
        check_formulas(),
        check_g_identity(g_n_max),
        check_spectrum(),
    ]
    return [result for group in checks for result in group]


def format_table(results) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  result  {'value':>12}  {'threshold':>10}"]
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name:<{width}}  {mark:<6}  {r.value:>12.4g}  {r.threshold:>10.3g}")
    return "\n".join(lines)
