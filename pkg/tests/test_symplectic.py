import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from motive import intlin
from motive.symplectic import (SympPlane, conjecture_scan, conjectured_det, diagram_report, phi_matrix,
                               phi_prime_matrix)


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_phi_shape_and_rows(ell):
    M = phi_matrix(ell)
    assert len(M) == ell * ell - 1
    assert all(set(row) <= {0, 1} and sum(row) == ell for row in M)
    assert all(sum(M[i][j] for i in range(len(M))) == ell for j in range(len(M)))


@pytest.mark.parametrize("ell,det", [(3, -27), (5, 5 ** 10)])
def test_phi_det(ell, det):
    assert intlin.det_exact(phi_matrix(ell)) == det
    assert sympy.Matrix(phi_matrix(ell)).det() == det


@pytest.mark.parametrize("ell", [3, 5, 7, 11])
def test_phi_prime(ell):
    P = phi_prime_matrix(ell)
    assert intlin.det_exact(P) == -ell == (-1) ** ell * ell
    plus_i = [[x + (i == j) for j, x in enumerate(row)] for i, row in enumerate(P)]
    assert intlin.rank(plus_i) == 1


def test_conjecture_scan():
    rows = conjecture_scan([3, 5, 7, 11])
    assert all(r.match for r in rows)
    assert rows[2].det == -7 ** 21


def test_conjectured_det_values():
    assert conjectured_det(3) == -27
    assert conjectured_det(5) == 5 ** 10


def test_scan_limit():
    with pytest.raises(ValueError):
        conjecture_scan([17])


@pytest.mark.parametrize("bad", [2, 4, 9, 1])
def test_rejects_non_odd_primes(bad):
    with pytest.raises(ValueError):
        SympPlane(bad)


def test_diagram_ell3():
    rep = diagram_report(3)
    assert rep.ok, rep.checks
    assert rep.index_K == 9
    assert rep.B_order == 3
    assert rep.A_invariants == []


def test_diagram_ell5():
    rep = diagram_report(5)
    assert rep.ok, rep.checks
    assert rep.index_K == 25
    assert rep.A_invariants
    assert rep.B_order == abs(rep.det_phi) // 25


def test_diagram_ell7_checks():
    rep = diagram_report(7)
    assert rep.ok
    assert rep.B_order * 49 == abs(rep.det_phi)


def test_diagram_limit():
    with pytest.raises(ValueError):
        diagram_report(11)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.data())
def test_omega_alternating_nondegenerate(ell, data):
    V = SympPlane(ell)
    v = data.draw(st.sampled_from(V.points))
    u = data.draw(st.sampled_from(V.points))
    assert V.omega(v, v) == 0
    assert V.omega(v, u) == -V.omega(u, v) % ell
    assert any(V.omega(v, w) for w in V.points)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_phi_equivariant_for_random_sl2(ell, a, b, c):
    a, b, c = a % ell, b % ell, c % ell
    if a == 0:
        m = ((0, ell - 1), (1, c))
    else:
        d = (1 + b * c) * pow(a, -1, ell) % ell
        m = ((a, b), (c, d))
    V = SympPlane(ell)
    P = V.point_permutation(m)
    Phi = phi_matrix(ell)
    assert intlin.matmul(P, Phi) == intlin.matmul(Phi, P)


def test_phi_descends():
    V = SympPlane(5)
    Q = V.quotient_matrix()
    assert intlin.matmul(Q, phi_matrix(5)) == intlin.matmul(phi_prime_matrix(5), Q)
