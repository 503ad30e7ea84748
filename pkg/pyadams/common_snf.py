"""
Smith normal form over the local PID Z_(p), and the free-module solvers built
on it.

Over Z_(p) every nonzero scalar is u·p^a with u a unit, so the elimination
never needs extended gcds: the pivot of minimal valuation divides every other
entry of the remaining block.
"""
import math
from fractions import Fraction

from sympy import ImmutableMatrix

from pyadams.common_debugging import fn_name_current
from pyadams.common_dict import simple_obj
from pyadams.common_errors import ValidationError
from pyadams.common_icecream import ic
from pyadams.common_scalar import from_fraction, to_fraction, valuation


##
def _rows_of(matrix):
    m, n = matrix.shape
    return [[to_fraction(matrix[i, j]) for j in range(n)] for i in range(m)], m, n


def _identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _immutable(rows, m, n):
    return ImmutableMatrix(m, n, [from_fraction(x) for row in rows for x in row])


def _snf_rows(A, m, n, p):
    """
    In-place Smith reduction of the Fraction matrix `A`.

    Returns (U, U_inv, V, exponents) with U·A_original·V = A_final, where the
    final diagonal is p^{a_1}, p^{a_2}, ... with nondecreasing a_i.
    """
    U = _identity(m)
    U_inv = _identity(m)
    V = _identity(n)
    exponents = []

    for t in range(min(m, n)):
        #: pivot: minimal valuation, ties broken by lowest row then column
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x:
                    v = valuation(x, p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break

        if best is None:
            break

        a, i, j = best
        if i != t:
            A[t], A[i] = A[i], A[t]
            U[t], U[i] = U[i], U[t]
            for row in U_inv:
                row[t], row[i] = row[i], row[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
            for row in V:
                row[t], row[j] = row[j], row[t]

        #: normalize the unit part of the pivot to 1
        u = A[t][t] / (p**a)
        if u != 1:
            u_inv = 1 / u
            A[t] = [x * u_inv for x in A[t]]
            U[t] = [x * u_inv for x in U[t]]
            for row in U_inv:
                row[t] = row[t] * u

        pivot = A[t][t]
        for i in range(t + 1, m):
            c = A[i][t] / pivot
            if c:
                row_t = A[t]
                A[i] = [x - c * y for x, y in zip(A[i], row_t)]
                U[i] = [x - c * y for x, y in zip(U[i], U[t])]
                for row in U_inv:
                    row[t] += c * row[i]

        for j in range(t + 1, n):
            c = A[t][j] / pivot
            if c:
                for row in A:
                    row[j] -= c * row[t]
                for row in V:
                    row[j] -= c * row[t]

        exponents.append(a)

    return U, U_inv, V, exponents


def smith_normal_form(matrix, p):
    """
    Smith normal form of a matrix over Z_(p).

    Returns a record with `U`, `D`, `V` (so that D = U·M·V), `U_inv`, the
    `rank` and the diagonal `exponents` a_i (D_ii = p^{a_i}, nondecreasing).
    All matrices are exact sympy `ImmutableMatrix`es.
    """
    A, m, n = _rows_of(matrix)
    for row in A:
        for x in row:
            if x.denominator % p == 0:
                raise ValidationError(
                    f"{fn_name_current()}: entry {x} is not {p}-local"
                )
    if m * n > 400:
        ic(m, n)

    U, U_inv, V, exponents = _snf_rows(A, m, n, p)

    return simple_obj(
        U=_immutable(U, m, m),
        D=_immutable(A, m, n),
        V=_immutable(V, n, n),
        U_inv=_immutable(U_inv, m, m),
        rank=len(exponents),
        exponents=tuple(exponents),
    )


snf = smith_normal_form


##
def free_kernel(matrix, p):
    """
    A basis (as columns) of the kernel of `matrix` acting on Z_(p)^n.

    The columns span a saturated submodule.
    """
    A, m, n = _rows_of(matrix)
    _, _, V, exponents = _snf_rows(A, m, n, p)
    r = len(exponents)

    cols = [[V[i][j] for j in range(r, n)] for i in range(n)]
    return _immutable(cols, n, n - r)


def free_solve(matrix, rhs, p):
    """
    Solves matrix·X = rhs over Z_(p) (all columns of `rhs` at once).

    Returns the solution matrix or None when some column has no p-local
    solution.
    """
    A, m, n = _rows_of(matrix)
    B, m_b, k = _rows_of(rhs)
    assert m == m_b, f"row mismatch: {m} vs {m_b}"

    U, _, V, exponents = _snf_rows(A, m, n, p)
    r = len(exponents)

    #: c = U·rhs
    C = [[sum((U[i][l] * B[l][j] for l in range(m)), Fraction(0)) for j in range(k)] for i in range(m)]

    Z = [[Fraction(0)] * k for _ in range(n)]
    for i in range(m):
        for j in range(k):
            c = C[i][j]
            if i < r:
                z = c / (p ** exponents[i])
                if z and valuation(z, p) < 0:
                    return None
                Z[i][j] = z
            elif c:
                return None

    X = [[sum((V[i][l] * Z[l][j] for l in range(n)), Fraction(0)) for j in range(k)] for i in range(n)]
    return _immutable(X, n, k)


def matrix_inverse(matrix, p):
    """
    The inverse over Z_(p) of a square matrix, or None when its determinant is
    not a unit.
    """
    A, m, n = _rows_of(matrix)
    if m != n:
        return None

    U, _, V, exponents = _snf_rows(A, m, n, p)
    if len(exponents) != n or any(exponents):
        return None

    #: U·M·V = I, so M^{-1} = V·U
    inv = [[sum((V[i][l] * U[l][j] for l in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
    return _immutable(inv, n, n)


def determinant_valuation(matrix, p):
    """Sum of the SNF exponents; inf for singular square matrices."""
    res = smith_normal_form(matrix, p)
    m, n = matrix.shape
    if res.rank < min(m, n):
        return math.inf
    return sum(res.exponents)


##
