import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ifsdim.errors import AlphaOutOfRange, BetaOutOfRange, HypothesisNotMet, ProbabilityOutOfRange
from ifsdim.params import (
    IfsParams,
    integer_log,
    parse_probability,
    theorem_applicability,
    validate_params,
)


def test_plotting_parameters_are_valid():
    assert validate_params(2, 1, "1/3") == IfsParams(2, 1, 1 / 3)
    assert validate_params(5, 1, "1/3") == IfsParams(5, 1, 1 / 3)


@pytest.mark.parametrize(
    "args, exc",
    [
        ((1, 1, 0.5), AlphaOutOfRange),
        ((0, 1, 0.5), AlphaOutOfRange),
        ((2, 0, 0.5), BetaOutOfRange),
        ((2, 1, 0.0), ProbabilityOutOfRange),
        ((2, 1, 1.0), ProbabilityOutOfRange),
        ((2, 1, "3/2"), ProbabilityOutOfRange),
        ((2.5, 1, 0.5), AlphaOutOfRange),
        ((2, 1.0, 0.5), BetaOutOfRange),
        ((2, 1, "one third"), ProbabilityOutOfRange),
    ],
)
def test_invalid_inputs_raise(args, exc):
    with pytest.raises(exc):
        validate_params(*args)


def test_rational_probability_converted_once():
    assert parse_probability("1/3") == 1 / 3
    assert parse_probability(" 2/5 ") == 0.4
    assert parse_probability(Fraction(1, 4)) == 0.25


@given(st.integers(2, 50), st.integers(1, 10**6), st.floats(1e-6, 1 - 1e-6))
def test_round_trip_and_average_contractivity(alpha, beta, p):
    params = validate_params(alpha, beta, p)
    assert (params.alpha, params.beta, params.p) == (alpha, beta, p)
    assert params.contractivity < 0
    assert math.isclose(params.contractivity, -(1 - p) * math.log(alpha))


@pytest.mark.parametrize(
    "alpha, beta, p, expected",
    [
        (2, 1, 1 / 3, (True, True, 0)),
        (2, 4, 1 / 3, (True, True, 2)),
        (2, 3, 0.6, (True, False, None)),
        (3, 27, 0.5, (True, True, 3)),
        (3, 9, 0.51, (True, False, 2)),
        (4, 2, 0.2, (True, False, None)),
    ],
)
def test_theorem_applicability(alpha, beta, p, expected):
    appl = theorem_applicability(validate_params(alpha, beta, p))
    assert (appl.upper_bound_ok, appl.lower_and_spectrum_ok, appl.t_power) == expected


@given(st.integers(2, 12), st.integers(1, 5000), st.floats(0.01, 0.99))
def test_applicability_is_pure_and_consistent(alpha, beta, p):
    params = validate_params(alpha, beta, p)
    a, b = theorem_applicability(params), theorem_applicability(params)
    assert a == b
    if a.lower_and_spectrum_ok:
        assert a.upper_bound_ok
    # t_power present iff beta is an exact power of alpha
    powers = {alpha**t for t in range(0, 20)}
    assert (a.t_power is not None) == (beta in powers)
    if a.t_power is not None:
        assert alpha**a.t_power == beta


def test_integer_log_is_exact_for_large_powers():
    assert integer_log(3**40, 3) == 40
    assert integer_log(3**40 + 1, 3) is None


def test_require_lower_names_the_hypothesis():
    with pytest.raises(HypothesisNotMet, match="beta=alpha"):
        theorem_applicability(validate_params(2, 3, 0.3)).require_lower()
    with pytest.raises(HypothesisNotMet, match="p<=1/2"):
        theorem_applicability(validate_params(2, 1, 0.6)).require_lower()
