"""The endomorphisms phi of Z[V0] and phi' of Z[P(V)] for V = F_l^2 with the
standard symplectic form, their determinants, and the lattice diagram built
from them.

Matrices act on column vectors: column v of ``phi_matrix`` is the image of [v].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from . import intlin


def _is_odd_prime(n: int) -> bool:
    return n > 2 and n % 2 == 1 and all(n % p for p in range(3, int(n ** 0.5) + 1, 2))


class SympPlane:
    def __init__(self, ell: int):
        if not _is_odd_prime(ell):
            raise ValueError(f"{ell} is not an odd prime")
        self.ell = ell
        self.points = [(a, b) for a in range(ell) for b in range(ell) if (a, b) != (0, 0)]
        self.index = {v: i for i, v in enumerate(self.points)}
        # each line through the origin is named by its first point in lexicographic order
        self.lines = sorted({self.line_of(v) for v in self.points})
        self.line_index = {p: i for i, p in enumerate(self.lines)}

    def omega(self, v, u) -> int:
        return (v[0] * u[1] - v[1] * u[0]) % self.ell

    def line_of(self, v) -> tuple[int, int]:
        return min(((c * v[0]) % self.ell, (c * v[1]) % self.ell) for c in range(1, self.ell))

    def act(self, m, v) -> tuple[int, int]:
        p = self.ell
        return ((m[0][0] * v[0] + m[0][1] * v[1]) % p, (m[1][0] * v[0] + m[1][1] * v[1]) % p)

    def point_permutation(self, m) -> list[list[int]]:
        n = len(self.points)
        P = intlin.zeros(n, n)
        for v in self.points:
            P[self.index[self.act(m, v)]][self.index[v]] = 1
        return P

    def line_permutation(self, m) -> list[list[int]]:
        n = len(self.lines)
        P = intlin.zeros(n, n)
        for q in self.lines:
            P[self.line_index[self.line_of(self.act(m, q))]][self.line_index[q]] = 1
        return P

    def quotient_matrix(self) -> list[list[int]]:
        """Z[V0] -> Z[P(V)]."""
        Q = intlin.zeros(len(self.lines), len(self.points))
        for v in self.points:
            Q[self.line_index[self.line_of(v)]][self.index[v]] = 1
        return Q

    def sum_matrix(self) -> list[list[int]]:
        """Coordinates of Z[V0] -> V, taken mod ell by the caller."""
        return [[v[0] for v in self.points], [v[1] for v in self.points]]

    def sl2_generators(self):
        return [((1, 1), (0, 1)), ((0, self.ell - 1), (1, 0))]


def phi_matrix(ell: int) -> list[list[int]]:
    if ell > 13:
        raise ValueError("phi is only built for ell <= 13")
    V = SympPlane(ell)
    n = len(V.points)
    M = intlin.zeros(n, n)
    for v in V.points:
        for u in V.points:
            if V.omega(v, u) == 1:
                M[V.index[u]][V.index[v]] = 1
    return M


def phi_prime_matrix(ell: int) -> list[list[int]]:
    n = ell + 1
    return [[0 if i == j else 1 for j in range(n)] for i in range(n)]


def conjectured_det(ell: int) -> int:
    return (-1) ** ((ell - 1) // 2) * ell ** comb(ell, 2)


@dataclass
class DiagramReport:
    ell: int
    det_phi: int
    det_phi_prime: int
    index_K: int
    checks: dict[str, bool] = field(default_factory=dict)
    B_invariants: list[int] = field(default_factory=list)
    A_invariants: list[int] = field(default_factory=list)

    @property
    def B_order(self) -> int:
        out = 1
        for d in self.B_invariants:
            out *= d
        return out

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def diagram_report(ell: int) -> DiagramReport:
    if ell > 7:
        raise ValueError("diagram computations are limited to ell <= 7")
    V = SympPlane(ell)
    n = len(V.points)
    Phi = phi_matrix(ell)
    S = V.sum_matrix()
    Q = V.quotient_matrix()
    checks: dict[str, bool] = {}

    # K = ker(Z[V0] -> V): kernel of [S | -ell I], projected to the first n coordinates
    aug = [row + [(-ell if i == j else 0) for j in range(2)] for i, row in enumerate(S)]
    Kb = intlin.kernel_basis(aug, n + 2)[:n]
    index_K = abs(intlin.det_exact(Kb))
    checks["index of K is ell^2"] = index_K == ell ** 2

    QK = intlin.matmul(Q, Kb)
    checks["K -> Z[P(V)] surjective"] = intlin.is_saturated(intlin.transpose(QK))

    SPhi = intlin.matmul(S, Phi)
    checks["phi(Z[V0]) in K"] = all(x % ell == 0 for row in SPhi for x in row)

    det_phi = intlin.det_exact(Phi)
    checks["phi injective"] = det_phi != 0

    X = intlin.solve_in_lattice(Kb, Phi)
    B_inv = [d for d in intlin.smith_invariants(X) if d != 1]
    checks["|det phi| = |B| * ell^2"] = abs(det_phi) == _prod(B_inv) * ell ** 2

    K2 = intlin.kernel_basis(Q, n)  # K'' = ker(Z[V0] -> Z[P(V)])
    c = intlin.kernel_basis(QK, n)
    K1 = intlin.matmul(Kb, c)  # K' = ker(K -> Z[P(V)])
    Y = intlin.solve_in_lattice(K1, intlin.matmul(Phi, K2))
    A_inv = [d for d in intlin.smith_invariants(Y) if d != 1]

    Pp = phi_prime_matrix(ell)
    checks["phi descends to phi'"] = intlin.matmul(Q, Phi) == intlin.matmul(Pp, Q)
    eq = True
    for m in V.sl2_generators():
        P = V.point_permutation(m)
        Pl = V.line_permutation(m)
        eq = eq and intlin.matmul(P, Phi) == intlin.matmul(Phi, P)
        eq = eq and intlin.matmul(Pl, Pp) == intlin.matmul(Pp, Pl)
    checks["SL2 equivariance"] = eq

    return DiagramReport(ell, det_phi, intlin.det_exact(Pp), index_K, checks, B_inv, A_inv)


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


@dataclass
class ConjectureRow:
    ell: int
    det: int
    conjecture: int

    @property
    def match(self) -> bool:
        return self.det == self.conjecture


def conjecture_scan(ells=(3, 5, 7, 11, 13)) -> list[ConjectureRow]:
    rows = []
    for ell in ells:
        if (ell * ell - 1) > 168:
            raise ValueError(f"ell = {ell} is beyond the scan limit")
        rows.append(ConjectureRow(ell, intlin.det_exact(phi_matrix(ell)), conjectured_det(ell)))
    return rows
