from fractions import Fraction

import numpy as np
import pytest

from ifsdim.chain import build_truncated_chain, solve_stationary
from ifsdim.params import validate_params


@pytest.fixture(scope="session")
def params_2():
    return validate_params(2, 1, "1/3")


@pytest.fixture(scope="session")
def params_5():
    return validate_params(5, 1, "1/3")


@pytest.fixture(scope="session")
def pi_2_200(params_2):
    return solve_stationary(build_truncated_chain(params_2, 200)).probabilities


@pytest.fixture(scope="session")
def pi_2_400(params_2):
    return solve_stationary(build_truncated_chain(params_2, 400)).probabilities


def exact_stationary(alpha, p, n):
    """Stationary vector of the truncated chain in exact rationals by Gauss-Jordan.

    Independent of the package solvers: builds the balance equations
    ``pi (P - I) = 0`` plus normalisation and eliminates with pivoting.
    """
    p = Fraction(p)
    A = [[Fraction(0)] * n for _ in range(n)]
    for m in range(n):
        A[m // alpha][m] += 1 - p
        A[min(m + 1, n - 1)][m] += p
    for j in range(n):
        A[j][j] -= 1
    rhs = [Fraction(0)] * n
    A[n - 1] = [Fraction(1)] * n
    rhs[n - 1] = Fraction(1)
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col] / A[col][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
                rhs[r] -= f * rhs[col]
    return [rhs[i] / A[i][i] for i in range(n)]


def as_floats(values):
    return np.array([float(v) for v in values])
