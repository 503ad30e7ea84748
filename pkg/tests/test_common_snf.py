import math

import pytest
from sympy import ImmutableMatrix, Rational

from pyadams.common_errors import ValidationError
from pyadams.common_snf import (
    determinant_valuation,
    free_kernel,
    free_solve,
    matrix_inverse,
    smith_normal_form,
)


def _diagonal_p(D):
    m, n = D.shape
    return all(D[i, j] == 0 for i in range(m) for j in range(n) if i != j)


def test_smith_normal_form_two_by_two():
    p = 3
    M = ImmutableMatrix([[p, 1], [0, p]])
    res = smith_normal_form(M, p)

    assert res.exponents == (0, 2)
    assert res.rank == 2
    assert res.D == ImmutableMatrix([[1, 0], [0, p**2]])
    assert res.U * M * res.V == res.D
    assert res.U * res.U_inv == ImmutableMatrix.eye(2)


def test_smith_normal_form_rectangular():
    p = 5
    M = ImmutableMatrix([[5, 10, 25], [Rational(1, 2), 0, 5]])
    res = smith_normal_form(M, p)

    assert _diagonal_p(res.D)
    assert res.U * M * res.V == res.D
    assert res.exponents == (0, 1)
    assert list(res.exponents) == sorted(res.exponents)


def test_smith_normal_form_rejects_nonlocal():
    with pytest.raises(ValidationError):
        smith_normal_form(ImmutableMatrix([[Rational(1, 3)]]), 3)


def test_smith_normal_form_zero_matrix():
    res = smith_normal_form(ImmutableMatrix.zeros(2, 3), 3)
    assert res.rank == 0
    assert res.exponents == ()


def test_free_kernel():
    p = 3
    K = free_kernel(ImmutableMatrix([[1, 2], [2, 4]]), p)
    assert K.shape == (2, 1)
    assert ImmutableMatrix([[1, 2]]) * K == ImmutableMatrix.zeros(1, 1)
    assert K[0, 0] != 0 or K[1, 0] != 0


def test_free_solve():
    p = 3
    A = ImmutableMatrix([[3, 0], [0, 1]])

    X = free_solve(A, ImmutableMatrix([[6], [5]]), p)
    assert A * X == ImmutableMatrix([[6], [5]])

    #: 1 = 3x has no 3-local solution
    assert free_solve(A, ImmutableMatrix([[1], [0]]), p) is None


def test_matrix_inverse():
    p = 3
    A = ImmutableMatrix([[2, 1], [1, 1]])
    inv = matrix_inverse(A, p)
    assert A * inv == ImmutableMatrix.eye(2)

    assert matrix_inverse(ImmutableMatrix([[3]]), p) is None
    assert matrix_inverse(ImmutableMatrix([[1, 0]]), p) is None


def test_determinant_valuation():
    p = 3
    assert determinant_valuation(ImmutableMatrix([[p, 1], [0, p]]), p) == 2
    assert determinant_valuation(ImmutableMatrix([[1, 1], [1, 1]]), p) == math.inf
