from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ifsdim.digits import (
    digit_counts,
    g_exponent,
    g_exponent_digit_form,
    leading_exponent,
    mean_digit_prefix,
    normalized_digits,
)
from ifsdim.errors import EmptyPrefix, NonPositiveInput, PrefixTooLong


@pytest.mark.parametrize(
    "x, b, expected",
    [(1, 2, 1), (5, 2, 3), (4, 2, 3), (Fraction(1, 2), 2, 0), (Fraction(1, 3), 2, -1), (0.1, 10, 0), (24, 5, 2), (25, 5, 3)],
)
def test_leading_exponent(x, b, expected):
    e = leading_exponent(x, b)
    assert e == expected
    y = Fraction(x) / Fraction(b) ** e
    assert Fraction(1, b) <= y < 1


def test_leading_exponent_rejects_nonpositive():
    for bad in (0, -1, -0.5):
        with pytest.raises(NonPositiveInput):
            leading_exponent(bad, 2)


def test_normalized_digit_examples():
    assert normalized_digits(5, 2, 4).digits == (1, 0, 1, 0)
    assert normalized_digits(Fraction(1, 3), 2, 6).digits == (1, 0, 1, 0, 1, 0)
    assert normalized_digits(24, 5, 3).digits == (4, 4, 0)


def test_terminating_expansion_ends_in_zeros():
    # 1/2 in base 2 is 0.1000..., never 0.0111...
    assert normalized_digits(Fraction(1, 2), 2, 5).digits == (1, 0, 0, 0, 0)
    assert normalized_digits(0.75, 2, 4).digits == (1, 1, 0, 0)


def test_float_input_uses_exact_binary_value():
    ds = normalized_digits(0.1, 2, 60)
    assert ds.source_value == Fraction(0.1)
    assert ds.value() <= Fraction(0.1) < ds.value() + Fraction(2) ** (-60 + leading_exponent(0.1, 2))


@given(st.fractions(min_value=Fraction(1, 10**6), max_value=10**6), st.integers(2, 9), st.integers(1, 40))
def test_reconstruction_is_a_truncation(x, b, n):
    ds = normalized_digits(x, b, n)
    assert len(ds) == n and all(0 <= d < b for d in ds.digits)
    scale = Fraction(b) ** leading_exponent(x, b)
    assert ds.value() <= x < ds.value() + scale / Fraction(b) ** n
    assert ds.digits[0] != 0


@given(st.fractions(min_value=Fraction(1, 1000), max_value=1000), st.integers(2, 7))
def test_normalization_is_idempotent(x, b):
    e = leading_exponent(x, b)
    y = x / Fraction(b) ** e
    assert leading_exponent(y, b) == 0
    assert normalized_digits(y, b, 20).digits == normalized_digits(x, b, 20).digits


def test_counts_and_prefix_mean():
    ds = normalized_digits(Fraction(1, 3), 2, 10)
    assert digit_counts(ds, 10).counts == (5, 5)
    assert digit_counts(ds, 3).counts == (1, 2)
    assert mean_digit_prefix(ds, 4) == 0.5
    with pytest.raises(PrefixTooLong):
        digit_counts(ds, 11)
    with pytest.raises(PrefixTooLong):
        mean_digit_prefix(ds, 11)
    with pytest.raises(EmptyPrefix):
        mean_digit_prefix(ds, 0)


@pytest.mark.parametrize(
    "n, k, alpha, expected",
    [(0, 3, 2, 0), (5, 0, 2, 5), (5, 1, 2, 3), (5, 2, 2, 2), (5, 5, 2, 2), (7, 1, 3, 3), (7, 2, 3, 3), (24, 1, 5, 8)],
)
def test_g_examples(n, k, alpha, expected):
    assert g_exponent(n, k, alpha) == expected
    assert g_exponent_digit_form(n, k, alpha) == expected


@given(st.integers(0, 10**9), st.integers(0, 40), st.integers(2, 10))
def test_g_identity(n, k, alpha):
    assert g_exponent(n, k, alpha) == g_exponent_digit_form(n, k, alpha)


@given(st.integers(0, 10**6), st.integers(1, 12), st.integers(2, 6), st.data())
def test_g_shift_identity(n, k, alpha, data):
    # removing j copies of alpha^k from n lowers g(., k-1) by j*alpha
    j = data.draw(st.integers(0, n // alpha**k))
    assert g_exponent(n - j * alpha**k, k - 1, alpha) == g_exponent(n, k - 1, alpha) - j * alpha


def test_g_becomes_digit_sum_for_large_k():
    n = 0b1011011
    assert g_exponent(n, 30, 2) == bin(n).count("1")
