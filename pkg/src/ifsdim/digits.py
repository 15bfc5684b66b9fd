"""Exact base-b digit expansions and the exponent g(n, k).

Digits are always extracted from exact rationals.  Floats are converted via
``Fraction(float)``, which is exact, so terminating expansions end in zeros and
never in a run of ``b - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Tuple, Union

from .errors import EmptyPrefix, NonPositiveInput, PrefixTooLong

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class DigitString:
    base: int
    digits: Tuple[int, ...]
    source_value: Fraction

    def __len__(self):
        return len(self.digits)

    def value(self) -> Fraction:
        """Reconstruct ``sum_i d_i b^-i * b^L`` (a truncation of ``source_value``)."""
        acc = Fraction(0)
        for d in reversed(self.digits):
            acc = (acc + d) / self.base
        return acc * Fraction(self.base) ** leading_exponent(self.source_value, self.base)


@dataclass(frozen=True)
class DigitCounts:
    counts: Tuple[int, ...]
    n: int


def _exact(x: Number) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(float(x))


def leading_exponent(x: Number, b: int) -> int:
    """``floor(log_b x) + 1`` by integer comparison against powers of b."""
    x = _exact(x)
    if x <= 0:
        raise NonPositiveInput(f"expected x > 0, got {x}")
    e = 0
    if x >= 1:
        power = 1
        while power <= x:
            power *= b
            e += 1
        return e
    # x < 1: lower e until x / b^e lands in [1/b, 1)
    scaled = x
    while scaled * b < 1:
        scaled *= b
        e -= 1
    return e


def normalized_digits(x: Number, b: int, n: int) -> DigitString:
    """First ``n`` digits of the expansion of ``x / b**leading_exponent(x)``.

    >>> normalized_digits(5, 2, 4).digits
    (1, 0, 1, 0)
    """
    if b < 2:
        raise ValueError("base must be >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    xq = _exact(x)
    if xq <= 0:
        raise NonPositiveInput(f"expected x > 0, got {x!r}")
    e = leading_exponent(xq, b)
    y = xq / Fraction(b) ** e
    num, den = y.numerator, y.denominator
    digits = []
    for _ in range(n):
        d, num = divmod(num * b, den)
        digits.append(d)
    return DigitString(b, tuple(digits), xq)


def digit_counts(ds: DigitString, n_prefix: int) -> DigitCounts:
    if n_prefix > len(ds.digits):
        raise PrefixTooLong(f"prefix {n_prefix} exceeds {len(ds.digits)} digits")
    counts = [0] * ds.base
    for d in ds.digits[:n_prefix]:
        counts[d] += 1
    return DigitCounts(tuple(counts), n_prefix)


def mean_digit_prefix(ds: DigitString, n_prefix: int) -> float:
    if n_prefix < 1:
        raise EmptyPrefix("need at least one digit")
    if n_prefix > len(ds.digits):
        raise PrefixTooLong(f"prefix {n_prefix} exceeds {len(ds.digits)} digits")
    return sum(ds.digits[:n_prefix]) / n_prefix


def g_exponent(n: int, k: int, alpha: int) -> int:
    """``g(n, k) = n alpha + (1 - alpha) sum_{i=0}^{k} floor(n / alpha^i)``."""
    total = 0
    power = 1
    for _ in range(k + 1):
        total += n // power
        power *= alpha
    return n * alpha + (1 - alpha) * total


def g_exponent_digit_form(n: int, k: int, alpha: int) -> int:
    """``floor(n / alpha^k)`` plus the ``k`` least significant base-alpha digits of n.

    Digits come from :func:`normalized_digits`; positions beyond the
    expansion are leading zeros.
    """
    head = n // alpha**k
    if n == 0 or k == 0:
        return head
    length = leading_exponent(n, alpha)
    digits = normalized_digits(n, alpha, length).digits
    # digits[length - 1 - i] is the i-th digit from the right
    tail = sum(digits[length - 1 - i] for i in range(min(k, length)))
    return head + tail
