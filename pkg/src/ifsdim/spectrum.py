"""Lower bounds for the upper and lower multifractal spectra on a grid of t."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .dimensions import barreira_dim, d_star_inverse
from .params import IfsParams, theorem_applicability

DEFAULT_GRID_POINTS = 512


@dataclass(frozen=True)
class SpectrumCurve:
    t_grid: np.ndarray
    upper_spectrum_lb: np.ndarray
    lower_spectrum_lb: np.ndarray
    diagonal: np.ndarray
    clamp_max: float

    def rows(self):
        return zip(self.t_grid, self.upper_spectrum_lb, self.lower_spectrum_lb, self.diagonal)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "fbar_lower_bound", "funder_lower_bound", "upper_line_t"])
            for row in self.rows():
                w.writerow([f"{v:.17g}" for v in row])


def spectrum_point(t: float, params: IfsParams, which: str = "upper", clamp_max: float = 1.0) -> float:
    return barreira_dim(params.alpha, d_star_inverse(t, params, which, clamp_max)).dimension


def spectrum_lower_bounds(
    params: IfsParams, grid_points: int = DEFAULT_GRID_POINTS, clamp_max: float = 1.0
) -> SpectrumCurve:
    """Evaluate both spectrum lower bounds on ``grid_points`` uniform points of [0, 1].

    Requires ``p <= 1/2`` and ``beta = alpha^t``; raises
    :class:`~ifsdim.errors.HypothesisNotMet` otherwise.
    """
    theorem_applicability(params).require_lower()
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    if not 0.0 <= clamp_max <= params.alpha - 1:
        raise ValueError(f"clamp_max must lie in [0, {params.alpha - 1}]")
    t = np.linspace(0.0, 1.0, grid_points)
    upper = np.array([spectrum_point(v, params, "upper", clamp_max) for v in t])
    lower = np.array([spectrum_point(v, params, "lower", clamp_max) for v in t])
    return SpectrumCurve(t, upper, lower, t.copy(), clamp_max)
