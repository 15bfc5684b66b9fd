"""Lumped integer-part chain, its truncation, and stationary solvers.

With ``beta == 1`` the integer part ``m = floor(X)`` of the process is itself a
Markov chain on ``{0, 1, 2, ...}``: ``m -> m + 1`` with probability ``p`` and
``m -> m // alpha`` otherwise.  Truncating to ``n`` states keeps the rows
stochastic by letting the last state keep its translation mass.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import BetaNotOne, NoConvergence, TruncationTooSmall
from .params import IfsParams

log = logging.getLogger(__name__)

#: Largest truncation solved by elimination when ``method="auto"``.
ELIMINATION_AUTO_MAX = 512
#: Hard cap for the dense elimination solver.
ELIMINATION_MAX = 2000


def _frozen(array) -> np.ndarray:
    out = np.array(array, dtype=float)
    out.flags.writeable = False
    return out


def unit_params(params: IfsParams) -> IfsParams:
    """Copy of ``params`` with ``beta = 1`` (the only translation the chain supports)."""
    return dataclasses.replace(params, beta=1)


@dataclass(frozen=True)
class TruncatedChain:
    """Sparse truncated lumped chain: two successors per state.

    ``up[m]`` receives probability ``p`` and ``down[m]`` receives ``1 - p``.
    """

    params: IfsParams
    n_states: int
    up: np.ndarray
    down: np.ndarray

    @property
    def p(self) -> float:
        return self.params.p

    def row(self, m: int) -> dict:
        """Transition probabilities out of state ``m`` as ``{target: prob}``."""
        out = {}
        out[int(self.down[m])] = out.get(int(self.down[m]), 0.0) + (1.0 - self.p)
        out[int(self.up[m])] = out.get(int(self.up[m]), 0.0) + self.p
        return out

    def to_dense(self) -> np.ndarray:
        n = self.n_states
        P = np.zeros((n, n))
        rows = np.arange(n)
        np.add.at(P, (rows, self.down), 1.0 - self.p)
        np.add.at(P, (rows, self.up), self.p)
        return P

    def left_multiply(self, x: np.ndarray) -> np.ndarray:
        """Return ``x @ P`` in O(n)."""
        n = self.n_states
        return (1.0 - self.p) * np.bincount(self.down, x, minlength=n) + self.p * np.bincount(
            self.up, x, minlength=n
        )


@dataclass(frozen=True)
class StationaryVector:
    probabilities: np.ndarray
    residual: float
    iterations: int
    method: str = "power"

    @property
    def n_states(self) -> int:
        return len(self.probabilities)

    def __len__(self):
        return len(self.probabilities)

    def __getitem__(self, m):
        return self.probabilities[m]


@dataclass(frozen=True)
class XiVector:
    """Pi-mass of unit intervals grouped by integer part mod ``alpha``."""

    xi: np.ndarray
    truncation_n: int

    @property
    def alpha(self) -> int:
        return len(self.xi)

    @property
    def mean_digit(self) -> float:
        return float(np.dot(np.arange(len(self.xi)), self.xi))


def build_truncated_chain(params: IfsParams, n: int) -> TruncatedChain:
    if params.beta != 1:
        raise BetaNotOne(f"the lumped chain needs beta == 1, got beta={params.beta}")
    if n < params.alpha:
        raise TruncationTooSmall(f"need n >= alpha={params.alpha}, got n={n}")
    m = np.arange(n)
    up = np.minimum(m + 1, n - 1)
    down = m // params.alpha
    up.flags.writeable = False
    down.flags.writeable = False
    return TruncatedChain(params, n, up, down)


def stationary_residual(chain: TruncatedChain, x: np.ndarray) -> float:
    """Sup norm of ``x P - x``."""
    return float(np.max(np.abs(chain.left_multiply(x) - x)))


def gth_stationary(P: np.ndarray) -> np.ndarray:
    """Stationary vector of a dense row-stochastic matrix by state elimination.
    GTH elimination: diagonal entries are never used and
    Grassmann-Taksar-Heyman elimination: diagonal entries are never used and
    no subtraction occurs, so small entries keep full relative accuracy.
    """
    P = np.array(P, dtype=float)
    n = P.shape[0]
    for k in range(n - 1, 0, -1):
        s = P[k, :k].sum()
        P[:k, k] /= s
        P[:k, :k] += np.outer(P[:k, k], P[k, :k])
    pi = np.zeros(n)
    pi[0] = 1.0
    for k in range(1, n):
        pi[k] = pi[:k] @ P[:k, k]
    return pi / pi.sum()


def _power_iteration(chain: TruncatedChain, tol: float, max_iter: int):
    n = chain.n_states
    x = np.full(n, 1.0 / n)
    residual = np.inf
    for it in range(1, max_iter + 1):
        y = chain.left_multiply(x)
        y /= y.sum()
        residual = float(np.max(np.abs(y - x)))
        x = y
        if residual < tol:
            return x, it
    raise NoConvergence(
        f"power iteration: residual {residual:.3e} > tol {tol:.1e} after {max_iter} sweeps"
    )


def solve_stationary(
    chain: TruncatedChain,
    tol: float = 1e-12,
    max_iter: int = 10**6,
    method: str = "auto",
) -> StationaryVector:
    """Left fixed point of the truncated chain.

    Parameters
    ----------
    chain : TruncatedChain
    tol : float
        Sup-norm tolerance on ``x P - x``; must be positive.
    max_iter : int
        Sweep budget for power iteration.
    method : {"auto", "power", "elimination"}
        ``"auto"`` uses elimination up to ``ELIMINATION_AUTO_MAX`` states and
        power iteration above.

    Raises
    ------
    NoConvergence
        The residual is still above ``tol`` after ``max_iter`` sweeps.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if method == "auto":
        method = "elimination" if chain.n_states <= ELIMINATION_AUTO_MAX else "power"
    if method == "elimination":
        if chain.n_states > ELIMINATION_MAX:
            raise ValueError(f"elimination is limited to {ELIMINATION_MAX} states")
        x = gth_stationary(chain.to_dense())
        iterations = chain.n_states
    elif method == "power":
        x, iterations = _power_iteration(chain, tol, max_iter)
    else:
        raise ValueError(f"unknown method {method!r}")
    residual = stationary_residual(chain, x)
    if residual > tol:
        raise NoConvergence(f"{method}: residual {residual:.3e} exceeds tol {tol:.1e}")
    return StationaryVector(_frozen(x), residual, iterations, method)


def xi_from_stationary(sv, alpha: int) -> XiVector:
    probs = np.asarray(getattr(sv, "probabilities", sv), dtype=float)
    xi = np.array([probs[k::alpha].sum() for k in range(alpha)])
    return XiVector(_frozen(xi), len(probs))


def xi_converged(
    params: IfsParams,
    tol: float = 1e-6,
    n_start: int = 64,
    n_cap: int = 2**20,
    solver_tol: float = 1e-12,
) -> Tuple[XiVector, int]:
    """Double the truncation until xi changes by less than ``tol`` in sup norm."""
    n = max(n_start, params.alpha)
    prev = xi_from_stationary(solve_stationary(build_truncated_chain(params, n), solver_tol), params.alpha)
    while True:
        n *= 2
        if n > n_cap:
            raise NoConvergence(f"xi not converged to {tol:.1e} before n exceeded {n_cap}")
        sv = solve_stationary(build_truncated_chain(params, n), solver_tol)
        cur = xi_from_stationary(sv, params.alpha)
        change = float(np.max(np.abs(cur.xi - prev.xi)))
        log.debug("xi_converged n=%d change=%.3e", n, change)
        if change < tol:
            return cur, n
        prev = cur


def balance_residuals(pi: np.ndarray, alpha: int, p: float, m_max: int) -> np.ndarray:
    """``pi(m) - p pi(m-1) - (1-p) sum_j pi(m alpha + j)`` for ``m = 0..m_max``."""
    pi = np.asarray(pi, dtype=float)
    if (m_max + 1) * alpha > len(pi):
        raise ValueError("m_max too large for the given vector")
    m = np.arange(m_max + 1)
    prev = np.concatenate(([0.0], pi[:m_max]))
    children = pi[: (m_max + 1) * alpha].reshape(m_max + 1, alpha).sum(axis=1)
    return pi[m] - p * prev - (1.0 - p) * children


def interval_mass(pi, left: int, right: int):
    """Pi-mass of ``[left, right]`` for integer endpoints, from unit-interval masses."""
    return sum(pi[left:right])
