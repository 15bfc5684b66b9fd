"""Closed-form dimension quantities for the stationary distribution.

``d_bar`` and ``d_under`` are the affine maps from a mean base-alpha digit to
local-dimension bounds; the Hausdorff bounds combine them with the digit
frequency vector xi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import HypothesisNotMet, MeanOutOfRange, NotAProbabilityVector
from .params import IfsParams, TheoremApplicability

PROBABILITY_ATOL = 1e-12

# bisection on u = log r
U_RANGE = 60.0
BISECT_MAX_ITER = 200
MEAN_TOL = 1e-14


@dataclass(frozen=True)
class DimensionBounds:
    hausdorff_lower: Optional[float]
    hausdorff_upper: float
    naive_upper: float
    packing_lower: Optional[float]
    packing_upper: Optional[float]
    mean_digit: float

    def as_dict(self):
        return {
            "hausdorff_lower": self.hausdorff_lower,
            "hausdorff_upper": self.hausdorff_upper,
            "naive_upper": self.naive_upper,
            "packing_lower": self.packing_lower,
            "packing_upper": self.packing_upper,
        }


@dataclass(frozen=True)
class BarreiraSolution:
    r_root: float
    dimension: float

    def residual(self, b: int, t: float) -> float:
        """``sum (i - t) r^i``, divided by ``r^(b-1)`` when ``r > 1`` to stay O(1)."""
        i = np.arange(b)
        r = self.r_root
        if r == 0.0 or math.isinf(r):
            return 0.0
        if r > 1.0:
            return float(np.sum((i - t) * r ** (i - (b - 1))))
        return float(np.sum((i - t) * r**i))


def _log_inv_alpha(params: IfsParams) -> float:
    return -math.log(params.alpha)


def d_bar(x: float, params: IfsParams) -> float:
    return (math.log(1.0 - params.p) + x * math.log(params.p)) / _log_inv_alpha(params)


def _under_shift(params: IfsParams) -> float:
    return math.log1p(-(params.p ** (params.alpha - 1))) / _log_inv_alpha(params)


def d_under(x: float, params: IfsParams) -> float:
    return d_bar(x, params) - _under_shift(params)


def d_star_inverse(t: float, params: IfsParams, which: str = "upper", clamp_max: float = 1.0) -> float:
    """Clamped inverse of ``d_bar`` (``which="upper"``) or ``d_under`` (``"lower"``).

    ``clamp_max`` defaults to 1; values up to ``alpha - 1`` open up the full
    mean-digit range.
    """
    if which == "upper":
        intercept = d_bar(0.0, params)
    elif which == "lower":
        intercept = d_under(0.0, params)
    else:
        raise ValueError(f"which must be 'upper' or 'lower', got {which!r}")
    slope = math.log(params.p) / _log_inv_alpha(params)
    x = (t - intercept) / slope
    return min(max(x, 0.0), clamp_max)


def _xlogx(q: float) -> float:
    if q == 0.0:
        return 0.0
    return q * math.log(q)


def check_probability_vector(q: Sequence[float]) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.ndim != 1 or q.size == 0:
        raise NotAProbabilityVector("expected a non-empty 1-d vector")
    if np.any(q < 0) or abs(q.sum() - 1.0) > PROBABILITY_ATOL:
        raise NotAProbabilityVector(f"entries must be >= 0 and sum to 1 (sum={q.sum()!r})")
    return q


def eggleston_dim(q: Sequence[float], b: int) -> float:
    """Entropy of the digit frequencies ``q`` in base ``b``, summed over all digits."""
    q = check_probability_vector(q)
    if len(q) != b:
        raise NotAProbabilityVector(f"expected {b} frequencies, got {len(q)}")
    return -sum(_xlogx(float(v)) for v in q) / math.log(b)


def _mean_at(u: float, i: np.ndarray) -> float:
    w = np.exp(i * u - np.max(i * u))
    return float(np.dot(i, w) / w.sum())


def barreira_dim(b: int, t: float) -> BarreiraSolution:
    """Dimension of the set of points whose mean base-``b`` digit is ``t``.

    Solves ``sum (i - t) r^i = 0`` for ``r > 0`` (equivalently: the
    ``r``-weighted mean digit equals ``t``) by bisection in ``u = log r``,
    then returns ``log(sum r^(i - t)) / log b``.

    Raises
    ------
    MeanOutOfRange
        ``t`` lies outside ``[0, b - 1]``.
    """
    if not (0.0 <= t <= b - 1):
        raise MeanOutOfRange(f"t={t!r} not in [0, {b - 1}]")
    if t == 0.0:
        return BarreiraSolution(0.0, 0.0)
    if t == b - 1:
        return BarreiraSolution(math.inf, 0.0)
    i = np.arange(b, dtype=float)
    lo, hi = -U_RANGE, U_RANGE
    u = 0.0
    for _ in range(BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        u = mid
        gap = _mean_at(u, i) - t
        if abs(gap) < MEAN_TOL:
            break
        if gap < 0:
            lo = u
        else:
            hi = u
    a = i * u
    top = np.max(a)
    log_sum = top + math.log(np.exp(a - top).sum())
    dim = (log_sum - t * u) / math.log(b)
    return BarreiraSolution(math.exp(u), min(max(dim, 0.0), 1.0))


def naive_upper_bound(params: IfsParams) -> float:
    p = params.p
    return (p * math.log(p) + (1 - p) * math.log(1 - p)) / ((1 - p) * _log_inv_alpha(params))


def theorem_bounds(
    xi,
    params: IfsParams,
    applicability: TheoremApplicability,
    require_lower: bool = True,
) -> DimensionBounds:
    """Assemble the Hausdorff, naive and packing bounds from ``xi``.

    The upper Hausdorff bound needs only integer parameters.  The lower and
    packing bounds need ``p <= 1/2`` and ``beta = alpha^t``; without them the
    fields are ``None`` when ``require_lower`` is False and
    :class:`HypothesisNotMet` is raised otherwise.
    """
    q = np.asarray(getattr(xi, "xi", xi), dtype=float)
    if not applicability.upper_bound_ok:
        raise HypothesisNotMet("alpha>=2 and beta>=1 integers")
    upper = eggleston_dim(q, params.alpha)
    mean = float(np.dot(np.arange(params.alpha), q))
    lower = pack_lo = pack_hi = None
    if applicability.lower_and_spectrum_ok:
        lower = d_under(mean, params)
        pack_lo = lower
        pack_hi = d_bar(mean, params)
    elif require_lower:
        applicability.require_lower()
    return DimensionBounds(lower, upper, naive_upper_bound(params), pack_lo, pack_hi, mean)
