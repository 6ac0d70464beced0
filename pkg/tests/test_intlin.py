import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from motive import intlin


def matrices(max_r=5, max_c=5, lo=-6, hi=6):
    return st.integers(1, max_r).flatmap(
        lambda r: st.integers(1, max_c).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


square = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=80, deadline=None)
@given(square)
def test_det_matches_sympy(M):
    assert intlin.det_exact(M) == sympy.Matrix(M).det()


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_smith_form_is_a_factorization(M):
    diag, U, V = intlin.smith_form(M)
    D = intlin.matmul(intlin.matmul(U, M), V)
    m, n = intlin.shape(M)
    for i in range(m):
        for j in range(n):
            assert D[i][j] == (diag[i] if i == j else 0)
    assert abs(intlin.det_exact(U)) == 1 and abs(intlin.det_exact(V)) == 1
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_smith_invariants_match_sympy(M):
    S = smith_normal_form(sympy.Matrix(M), domain=sympy.ZZ)
    want = sorted(abs(S[i, i]) for i in range(min(S.shape)))
    got = sorted(intlin.smith_invariants(M))
    assert got == want


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_basis(M):
    K = intlin.kernel_basis(M)
    n = intlin.shape(M)[1]
    assert len(K) == n
    k = len(K[0]) if K else 0
    assert k == n - sympy.Matrix(M).rank()
    if k:
        assert all(x == 0 for row in intlin.matmul(M, K) for x in row)
        assert intlin.is_saturated(K)


def test_solve_in_lattice():
    B = [[2, 0], [0, 3], [0, 0]]
    assert intlin.solve_in_lattice(B, [[4], [9], [0]]) == [[2], [3]]
    with pytest.raises(ValueError):
        intlin.solve_in_lattice(B, [[1], [0], [0]])
    with pytest.raises(ValueError):
        intlin.solve_in_lattice(B, [[0], [0], [1]])


def test_cokernel_invariants():
    assert intlin.cokernel_invariants([[2, 0], [0, 6], [0, 0]]) == ([2, 6], 1)


def test_inverse_unimodular():
    U = [[2, 1], [1, 1]]
    assert intlin.matmul(U, intlin.inverse_unimodular(U)) == intlin.eye(2)
    with pytest.raises(ValueError):
        intlin.inverse_unimodular([[2, 0], [0, 1]])
