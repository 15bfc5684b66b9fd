"""Masses of alpha-adic intervals, their envelopes, and local-dimension bounds.

A :class:`MassGrid` at level ``k`` holds ``pi[n beta / alpha^k, (n+1) beta / alpha^k]``
for ``n = 0..coverage``.  Level 0 comes from the truncated lumped chain;
finer levels follow from the invariance relation

    mass_k[n] = (1 - p) * sum_{j=0}^{n // alpha^k} p^j * mass_{k-1}[n - j alpha^k].
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .digits import g_exponent, mean_digit_prefix, normalized_digits
from .dimensions import d_bar, d_under
from .errors import BetaNotOne, InsufficientParentCoverage
from .params import IfsParams, theorem_applicability


@dataclass(frozen=True)
class MassGrid:
    level: int
    masses: np.ndarray
    coverage: int
    params: IfsParams

    def mass(self, n: int) -> float:
        if not 0 <= n <= self.coverage:
            raise InsufficientParentCoverage(f"index {n} outside covered range 0..{self.coverage}")
        return float(self.masses[n])

    def interval(self, n: int):
        scale = Fraction(self.params.beta, self.params.alpha**self.level)
        return n * scale, (n + 1) * scale

    def rows(self):
        for n in range(self.coverage + 1):
            left, right = self.interval(n)
            yield self.level, n, float(left), float(right), float(self.masses[n])

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["level", "n", "interval_left", "interval_right", "mass"])
            for level, n, left, right, mass in self.rows():
                w.writerow([level, n, f"{left:.17g}", f"{right:.17g}", f"{mass:.17g}"])


@dataclass(frozen=True)
class EnvelopeConstants:
    M0: float
    K: float
    factors_used: int


@dataclass(frozen=True)
class EnvelopeReport:
    level: int
    lower: np.ndarray
    upper: np.ndarray
    masses: np.ndarray
    passed: np.ndarray
    slack: float

    @property
    def ok(self) -> bool:
        return bool(self.passed.all())

    @property
    def lower_slack(self) -> np.ndarray:
        """``mass / lower - 1``; negative means the lower envelope is violated."""
        return self.masses / self.lower - 1.0

    @property
    def upper_slack(self) -> np.ndarray:
        """``1 - mass / upper``; negative means the upper envelope is violated."""
        return 1.0 - self.masses / self.upper


def base_grid_from_stationary(sv, params: IfsParams, coverage: Optional[int] = None) -> MassGrid:
    """Level-0 grid: the unit-interval masses of the truncated stationary vector.

    ``coverage`` defaults to every state of the truncation.
    """
    if params.beta != 1:
        raise BetaNotOne("level-0 masses from the lumped chain need beta == 1")
    masses = np.array(getattr(sv, "probabilities", sv), dtype=float)
    masses.flags.writeable = False
    cov = len(masses) - 1 if coverage is None else coverage
    if cov > len(masses) - 1:
        raise InsufficientParentCoverage("coverage beyond the truncation")
    return MassGrid(0, masses, cov, params)


def refine_grid(parent: MassGrid, coverage: Optional[int] = None) -> MassGrid:
    """Next refinement level.  Child index ``n`` reads parent indices ``n - j alpha^k``."""
    params = parent.params
    k = parent.level + 1
    step = params.alpha**k
    cov = parent.coverage if coverage is None else coverage
    if cov > parent.coverage:
        raise InsufficientParentCoverage(
            f"child coverage {cov} needs parent indices up to {cov}, parent covers {parent.coverage}"
        )
    p = params.p
    parent_masses = parent.masses[: parent.coverage + 1]
    out = np.zeros(cov + 1)
    weight = 1.0
    j = 0
    # accumulate sum_j p^j * parent[n - j*step] for every n at once
    while j * step <= cov:
        shift = j * step
        out[shift:] += weight * parent_masses[: cov + 1 - shift]
        j += 1
        weight *= p
    out *= 1.0 - p
    out.flags.writeable = False
    return MassGrid(k, out, cov, params)


def compute_K(
    params: IfsParams, eps: float = 1e-15, grid: Optional[MassGrid] = None, max_factors: int = 100000
) -> EnvelopeConstants:
    """Partial product of ``prod_{k>=1} (1 + k alpha p^(k(alpha-1)))``.

    Stops once the next factor is below ``1 + eps``.  ``M0`` is read from the
    first cell of ``grid`` (level 0) when one is given, else left as NaN.
    """
    M0 = float(grid.masses[0]) if grid is not None else float("nan")
    a, p = params.alpha, params.p
    K = 1.0
    k = 1
    while k <= max_factors:
        term = k * a * p ** (k * (a - 1))
        if term < eps:
            break
        K *= 1.0 + term
        k += 1
    return EnvelopeConstants(M0, K, k - 1)


def envelope_check(grid: MassGrid, constants: EnvelopeConstants, slack: float = 0.0) -> EnvelopeReport:
    """Test ``M0 (1-p)^k p^g <= mass <= M0 K ((1-p)/(1-p^(alpha-1)))^k p^g`` at every covered index.

    ``slack`` is relative: bounds are widened to ``lower (1 - slack)`` and
    ``upper (1 + slack)``.
    """
    params = grid.params
    a, p, k = params.alpha, params.p, grid.level
    n = np.arange(grid.coverage + 1)
    g = np.array([g_exponent(int(i), k, a) for i in n], dtype=float)
    pg = p**g
    lower = constants.M0 * (1.0 - p) ** k * pg
    upper = constants.M0 * constants.K * ((1.0 - p) / (1.0 - p ** (a - 1))) ** k * pg
    masses = np.asarray(grid.masses[: grid.coverage + 1], dtype=float)
    passed = (masses >= lower * (1.0 - slack)) & (masses <= upper * (1.0 + slack))
    return EnvelopeReport(k, lower, upper, masses, passed, slack)


@dataclass(frozen=True)
class LocalDimBounds:
    lower: float
    upper: float
    prefix_mean: float
    n_digits: int
    # the prefix mean stands in for a liminf; it is not a certified value
    certified: bool = False


def local_dim_bounds(x, params: IfsParams, n_digits: int) -> LocalDimBounds:
    """Lower local dimension bounds at ``x`` from its mean base-alpha digit."""
    theorem_applicability(params).require_lower()
    xq = Fraction(x) / params.beta
    ds = normalized_digits(xq, params.alpha, n_digits)
    sigma = mean_digit_prefix(ds, n_digits)
    return LocalDimBounds(d_under(sigma, params), d_bar(sigma, params), sigma, n_digits)
