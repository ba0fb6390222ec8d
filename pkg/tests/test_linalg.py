"""Exact linear algebra tests over Fraction and RationalFn entries."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from qcb._linalg import (
    identity_matrix, mat_mul, mat_vec, mat_rank, mat_solve,
    mat_inverse, mat_nullspace, bareiss_det,
)
from qcb.coeff import RationalFn, LaurentPoly, quantum_int

F0, F1 = Fraction(0), Fraction(1)

ints = st.integers(min_value=-6, max_value=6)


def square(n):
    return st.lists(st.lists(ints, min_size=n, max_size=n),
                    min_size=n, max_size=n)


def frac_mat(A):
    return [[Fraction(x) for x in row] for row in A]


def det_by_elimination(A):
    """Oracle: cofactor-free determinant by fraction Gaussian elimination."""
    M = [list(map(Fraction, row)) for row in A]
    n = len(M)
    det = F1
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k]), None)
        if p is None:
            return F0
        if p != k:
            M[k], M[p] = M[p], M[k]
            det = -det
        det *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return det


@settings(max_examples=60)
@given(st.integers(min_value=1, max_value=5).flatmap(square))
def test_bareiss_det_matches_elimination(A):
    assert Fraction(bareiss_det(A)) == det_by_elimination(A)


@settings(max_examples=60)
@given(st.integers(min_value=1, max_value=4).flatmap(square))
def test_inverse_and_solve(A):
    M = frac_mat(A)
    n = len(M)
    inv = mat_inverse(M, F0, F1)
    if bareiss_det(A) == 0:
        assert inv is None
        return
    assert mat_mul(inv, M, F0) == identity_matrix(n, F0, F1)
    b = [Fraction(i + 1) for i in range(n)]
    x = mat_solve(M, b, F0, F1)
    assert mat_vec(M, x, F0) == b


@settings(max_examples=60)
@given(st.lists(st.lists(ints, min_size=3, max_size=3), min_size=2, max_size=5))
def test_rank_nullity(A):
    M = frac_mat(A)
    r = mat_rank(M, F0, F1)
    ns = mat_nullspace(M, F0, F1)
    assert r + len(ns) == 3
    for x in ns:
        assert all(s == 0 for s in mat_vec(M, x, F0))


def test_inconsistent_solve():
    M = frac_mat([[1, 1], [1, 1]])
    assert mat_solve(M, [F1, Fraction(2)], F0, F1) is None
    # underdetermined but consistent: free variables pinned to zero
    x = mat_solve(M, [F1, F1], F0, F1)
    assert mat_vec(M, x, F0) == [F1, F1]


def test_rationalfn_entries():
    z, o = RationalFn(0), RationalFn(1)
    two = RationalFn(quantum_int(2))
    vv = RationalFn(LaurentPoly({1: 1}))
    M = [[o, two], [two, o]]
    inv = mat_inverse(M, z, o)
    assert mat_mul(inv, M, z) == identity_matrix(2, z, o)
    sing = [[o, vv], [vv, vv * vv]]
    assert mat_inverse(sing, z, o) is None
    assert mat_rank(sing, z, o) == 1
    ns = mat_nullspace(sing, z, o)
    assert len(ns) == 1 and mat_vec(sing, ns[0], z) == [z, z]
