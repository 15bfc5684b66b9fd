"""Seeded Monte-Carlo engines for the translate-or-contract process.

Both engines consume a boolean map sequence (True = translate by beta,
False = contract by alpha).  Seeded runs draw that sequence from PCG64:
step ``s`` translates iff the ``s``-th ``random_raw()`` word is below
``floor(p * 2**64)``.  Only the bit generator's raw stream is used, so the
sequence depends on the documented PCG64 algorithm alone.

The digit engine keeps the exact integer part ``m = floor(X)``.  A
contraction appends the base-alpha digit ``m mod alpha`` to the fractional
part and replaces ``m`` by ``m // alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numba
import numpy as np

from .errors import NoSamples, StateOverflow
from .params import IfsParams

GENERATOR = {
    "name": "PCG64",
    "implementation": f"numpy.random.PCG64 (numpy {np.__version__})",
    "seeding": "SeedSequence(seed, spawn_key=(replica,)); raw 64-bit words thresholded at floor(p*2^64)",
}

CHUNK = 1 << 22
DEFAULT_BATCHES = 64
_INT64_LIMIT = 1 << 62


@dataclass(frozen=True)
class SimConfig:
    seed: int = 0
    steps: int = 10**6
    burn_in: int = 1000
    record_every: int = 1
    replica: int = 0

    def __post_init__(self):
        if not (self.steps > self.burn_in >= 0):
            raise ValueError(f"need steps > burn_in >= 0, got steps={self.steps}, burn_in={self.burn_in}")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")


@dataclass(frozen=True)
class DigitFrequencyEstimate:
    counts: np.ndarray
    digits_emitted: int
    frequencies: np.ndarray
    standard_errors: np.ndarray
    steps_counted: int
    batch_counts: np.ndarray = field(repr=False)

    @property
    def emission_rate(self) -> float:
        """Digits per counted step; tends to ``1 - p``."""
        return self.digits_emitted / self.steps_counted

    def as_dict(self):
        return {
            "counts": [int(c) for c in self.counts],
            "digits_emitted": int(self.digits_emitted),
            "steps_counted": int(self.steps_counted),
            "frequencies": [float(f) for f in self.frequencies],
            "standard_errors": [float(s) for s in self.standard_errors],
            "emission_rate": self.emission_rate,
        }


@dataclass(frozen=True)
class TrajectoryStats:
    samples: np.ndarray
    histogram: "Histogram"
    empirical_cdf: "EmpiricalCdf"


@dataclass(frozen=True)
class Histogram:
    bin_left: np.ndarray
    bin_right: np.ndarray
    count: np.ndarray
    density: np.ndarray

    def rows(self):
        return zip(self.bin_left, self.bin_right, self.count, self.density)


@dataclass(frozen=True)
class EmpiricalCdf:
    x: np.ndarray
    cumulative_fraction: np.ndarray

    def at(self, value: float) -> float:
        i = np.searchsorted(self.x, value, side="right")
        return 0.0 if i == 0 else float(self.cumulative_fraction[i - 1])

    def rows(self):
        return zip(self.x, self.cumulative_fraction)


# ---------------------------------------------------------------- kernels


@numba.njit(cache=True)
def _digit_kernel(translate, alpha, beta, m, step0, burn_in, batch_size, batch_counts):
    n_batches = batch_counts.shape[0]
    for s in range(translate.shape[0]):
        g = step0 + s
        if translate[s]:
            m += beta
        else:
            if g >= burn_in:
                b = (g - burn_in) // batch_size
                if b >= n_batches:
                    b = n_batches - 1
                batch_counts[b, m % alpha] += 1
            m //= alpha
    return m


@numba.njit(cache=True)
def _lumped_states(translate, alpha, beta, m):
    out = np.empty(translate.shape[0], dtype=np.int64)
    for s in range(translate.shape[0]):
        if translate[s]:
            m += beta
        else:
            m //= alpha
        out[s] = m
    return out


@numba.njit(cache=True)
def _trajectory_kernel(translate, alpha, beta, x, step0, burn_in, record_every, out, n_out):
    for s in range(translate.shape[0]):
        if translate[s]:
            x = x + beta
        else:
            x = x / alpha
        g = step0 + s + 1
        if g > burn_in and (g - burn_in) % record_every == 0:
            out[n_out] = x
            n_out += 1
    return x, n_out


# ---------------------------------------------------------------- drivers


def make_generator(seed: int, replica: int = 0) -> np.random.PCG64:
    return np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(replica,)))


def _threshold(p: float) -> np.uint64:
    t = int(Fraction(p) * (1 << 64))
    return np.uint64(min(t, (1 << 64) - 1))


def map_sequence(params: IfsParams, bitgen: np.random.PCG64, n: int) -> np.ndarray:
    """Next ``n`` map choices from ``bitgen`` (True = translate)."""
    return bitgen.random_raw(n) < _threshold(params.p)


def _chunks(total: int):
    done = 0
    while done < total:
        size = min(CHUNK, total - done)
        yield done, size
        done += size


def _check_width(m0: int, beta: int, steps: int) -> None:
    # m grows by at most beta per step
    if m0 + beta * steps >= _INT64_LIMIT:
        raise StateOverflow(f"integer state could exceed 2^62 (beta={beta}, steps={steps})")


def lumped_digits_from_maps(maps: Sequence[bool], alpha: int, beta: int, m0: int = 0):
    """Digits emitted along a fixed map sequence, in emission order (reference loop)."""
    m = m0
    digits = []
    for translate in maps:
        if translate:
            m += beta
        else:
            digits.append(m % alpha)
            m //= alpha
    return digits


def lumped_states_from_maps(maps, alpha: int, beta: int, m0: int = 0) -> np.ndarray:
    maps = np.asarray(maps, dtype=np.bool_)
    _check_width(m0, beta, len(maps))
    return _lumped_states(maps, alpha, beta, m0)


def trajectory_from_maps(maps, alpha: int, beta: int, x0: float = 0.0) -> np.ndarray:
    """Every ``X_1 .. X_n`` along a fixed map sequence."""
    maps = np.asarray(maps, dtype=np.bool_)
    out = np.empty(len(maps))
    _trajectory_kernel(maps, alpha, float(beta), x0, 0, 0, 1, out, 0)
    return out


def _estimate(batch_counts: np.ndarray, steps_counted: int) -> DigitFrequencyEstimate:
    counts = batch_counts.sum(axis=0)
    total = int(counts.sum())
    freqs = counts / total if total else np.zeros(len(counts))
    per_batch = batch_counts.sum(axis=1)
    used = per_batch > 0
    if used.sum() >= 2:
        bf = batch_counts[used] / per_batch[used, None]
        se = bf.std(axis=0, ddof=1) / np.sqrt(used.sum())
    else:
        se = np.full(len(counts), np.nan)
    return DigitFrequencyEstimate(counts, total, freqs, se, steps_counted, batch_counts)


def simulate_lumped_digits(
    params: IfsParams, cfg: SimConfig, n_batches: int = DEFAULT_BATCHES
) -> DigitFrequencyEstimate:
    """Estimate the digit frequencies xi_k by exact integer simulation.

    Standard errors are batch means over ``n_batches`` equal blocks of the
    counted steps.
    """
    _check_width(0, params.beta, cfg.steps)
    bitgen = make_generator(cfg.seed, cfg.replica)
    counted = cfg.steps - cfg.burn_in
    batch_size = max(1, -(-counted // n_batches))
    batch_counts = np.zeros((n_batches, params.alpha), dtype=np.int64)
    m = 0
    for start, size in _chunks(cfg.steps):
        maps = map_sequence(params, bitgen, size)
        m = _digit_kernel(maps, params.alpha, params.beta, m, start, cfg.burn_in, batch_size, batch_counts)
    return _estimate(batch_counts, counted)


def merge_estimates(*estimates: DigitFrequencyEstimate) -> DigitFrequencyEstimate:
    """Pool independent replicas; associative in its arguments."""
    batches = np.concatenate([e.batch_counts for e in estimates])
    return _estimate(batches, sum(e.steps_counted for e in estimates))


def _histogram(samples: np.ndarray, bins: int) -> Histogram:
    top = float(samples.max())
    if top <= 0.0:
        top = 1.0
    counts, edges = np.histogram(samples, bins=bins, range=(0.0, top))
    width = edges[1:] - edges[:-1]
    density = counts / (len(samples) * width)
    return Histogram(edges[:-1], edges[1:], counts, density)


def _cdf(samples: np.ndarray) -> EmpiricalCdf:
    ordered = np.sort(samples)
    x = np.unique(ordered)
    frac = np.searchsorted(ordered, x, side="right") / len(ordered)
    return EmpiricalCdf(x, frac)


def simulate_trajectory(params: IfsParams, cfg: SimConfig, bins: int = 100) -> TrajectoryStats:
    """Forward floating-point simulation from ``X_0 = 0``."""
    bitgen = make_generator(cfg.seed, cfg.replica)
    n_rec = (cfg.steps - cfg.burn_in) // cfg.record_every
    out = np.empty(n_rec)
    x, n_out = 0.0, 0
    for start, size in _chunks(cfg.steps):
        maps = map_sequence(params, bitgen, size)
        x, n_out = _trajectory_kernel(
            maps, params.alpha, float(params.beta), x, start, cfg.burn_in, cfg.record_every, out, n_out
        )
    samples = out[:n_out]
    return TrajectoryStats(samples, _histogram(samples, bins), _cdf(samples))


def empirical_distribution_export(stats_or_samples, bins: int):
    """Equal-width histogram on ``[0, max sample]`` and the empirical CDF table."""
    samples = np.asarray(getattr(stats_or_samples, "samples", stats_or_samples), dtype=float)
    if samples.size == 0:
        raise NoSamples("no samples to export")
    return _histogram(samples, bins), _cdf(samples)
