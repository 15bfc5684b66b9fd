"""Parameters of the translate-or-contract process and theorem gating.

The process is ``X -> X + beta`` with probability ``p`` and
``X -> X / alpha`` otherwise.  Every formula in this package assumes integer
``alpha >= 2`` and ``beta >= 1``.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    AlphaOutOfRange,
    BetaOutOfRange,
    HypothesisNotMet,
    ProbabilityOutOfRange,
)


@dataclass(frozen=True)
class IfsParams:
    alpha: int
    beta: int
    p: float

    @property
    def contractivity(self) -> float:
        """Average log-Lipschitz constant, ``-(1 - p) log alpha``; always negative."""
        return -(1.0 - self.p) * math.log(self.alpha)

    def as_dict(self):
        return {"alpha": self.alpha, "beta": self.beta, "p": self.p}


@dataclass(frozen=True)
class TheoremApplicability:
    upper_bound_ok: bool
    lower_and_spectrum_ok: bool
    t_power: Optional[int]

    def require_lower(self) -> None:
        """Raise :class:`HypothesisNotMet` naming the first failed hypothesis."""
        if not self.upper_bound_ok:
            raise HypothesisNotMet("alpha>=2 and beta>=1 integers")
        if not self.lower_and_spectrum_ok:
            if self.t_power is None:
                raise HypothesisNotMet("beta=alpha^t")
            raise HypothesisNotMet("p<=1/2")


def parse_probability(text: Union[str, float, Fraction]) -> float:
    """Convert ``"1/3"``, ``"0.25"`` or a number to a float exactly once."""
    if isinstance(text, str):
        try:
            return float(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ProbabilityOutOfRange(f"cannot parse probability {text!r}") from exc
    return float(text)


def _as_int(value, name, exc):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise exc(f"{name} must be an integer, got {value!r}")
    return int(value)


def validate_params(alpha, beta, p) -> IfsParams:
    alpha = _as_int(alpha, "alpha", AlphaOutOfRange)
    beta = _as_int(beta, "beta", BetaOutOfRange)
    if alpha < 2:
        raise AlphaOutOfRange(f"alpha must be >= 2, got {alpha}")
    if beta < 1:
        raise BetaOutOfRange(f"beta must be >= 1, got {beta}")
    p = parse_probability(p)
    if not (0.0 < p < 1.0):
        raise ProbabilityOutOfRange(f"p must lie in (0, 1), got {p!r}")
    return IfsParams(alpha, beta, p)


def integer_log(value: int, base: int) -> Optional[int]:
    """Return ``t`` with ``base**t == value`` or None; pure integer arithmetic."""
    t, power = 0, 1
    while power < value:
        power *= base
        t += 1
    return t if power == value else None


def theorem_applicability(params: IfsParams) -> TheoremApplicability:
    upper_ok = params.alpha >= 2 and params.beta >= 1
    t = integer_log(params.beta, params.alpha)
    lower_ok = upper_ok and t is not None and params.p <= 0.5
    return TheoremApplicability(upper_ok, lower_ok, t)
