"""Permutation resolutions of tori and the classifying-stack class they give.

Direction convention: a resolution of tori ``1 -> T1 -> T2 -> T -> 1`` is stored
on character lattices, which reverses arrows:

    0 -> X(T) --embed--> Z[E2] --project--> Z[E1] -> 0

``embed`` is a |E2| x rank matrix and ``project`` a |E1| x |E2| matrix, both
acting on column vectors.  With T1, T2 quasi-split, {B T dual} = {T1}/{T2},
i.e. (l - 1)^E1 / (l - 1)^E2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from math import comb, factorial
from pathlib import Path
from typing import Mapping, Sequence

from . import intlin, lring
from .burnside import (LocBurnsidePoly, MissingAssignment, all_ones, invert_qs,
                       pushforward, qs_torus_class)
from .lring import CycloDenom, LClass
from .marks import GSet, PermGroup, symmetric_group

AssignmentMissing = MissingAssignment


class InvalidResolution(ValueError):
    pass


class NotFound(LookupError):
    pass


class GLattice:
    """Z^rank with one integer matrix per group generator (acting on columns)."""

    def __init__(self, group: PermGroup, rank: int, action: Sequence[Sequence[Sequence[int]]]):
        if len(action) != len(group.generators):
            raise InvalidResolution("need one matrix per group generator")
        self.group = group
        self.rank = rank
        self.action = [[list(r) for r in m] for m in action]
        for m in self.action:
            if intlin.shape(m) != (rank, rank) and rank:
                raise InvalidResolution("action matrix has wrong shape")
            if abs(intlin.det_exact(m)) != 1:
                raise InvalidResolution("action matrix is not unimodular")
        self.element_action = self._extend()

    def _extend(self) -> list[list[list[int]]]:
        G = self.group
        gen_idx = [G.index[g] for g in G.generators]
        acts: list = [None] * len(G)
        acts[0] = intlin.eye(self.rank)
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s, a in zip(gen_idx, self.action):
                    y = G.mul(s, x)
                    img = intlin.matmul(a, acts[x])
                    if acts[y] is None:
                        acts[y] = img
                        nxt.append(y)
                    elif acts[y] != img:
                        raise InvalidResolution("matrices do not satisfy the group relations")
            frontier = nxt
        return acts

    def character(self) -> list[int]:
        return [sum(m[i][i] for i in range(self.rank)) for m in self.element_action]


def norm_one_lattice(n: int, group: PermGroup | None = None) -> GLattice:
    """Z[n]/Z(1,...,1) over S_n, basis the images of e_0 .. e_{n-2}."""
    G = group or symmetric_group(n)
    r = n - 1
    mats = []
    for g in G.generators:
        m = intlin.zeros(r, r)
        for i in range(r):
            j = g[i]
            if j < r:
                m[j][i] += 1
            else:
                for k in range(r):
                    m[k][i] -= 1
        mats.append(m)
    return GLattice(G, r, mats)


@dataclass
class TorusResolution:
    group: PermGroup
    e1: GSet
    e2: GSet
    target: GLattice
    embed: list[list[int]]
    project: list[list[int]]

    def to_json(self) -> dict:
        return {
            "group": {"degree": self.group.degree, "generators": [list(g) for g in self.group.generators]},
            "e1": {"size": self.e1.size, "action": [list(a) for a in self.e1.action]},
            "e2": {"size": self.e2.size, "action": [list(a) for a in self.e2.action]},
            "target": {"rank": self.target.rank, "action_matrices": self.target.action},
            "embed": self.embed,
            "project": self.project,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TorusResolution":
        try:
            G = PermGroup(data["group"]["degree"], data["group"]["generators"])
            e1 = GSet(G, data["e1"]["size"], data["e1"]["action"])
            e2 = GSet(G, data["e2"]["size"], data["e2"]["action"])
            target = GLattice(G, data["target"]["rank"], data["target"]["action_matrices"])
            return cls(G, e1, e2, target, [list(r) for r in data["embed"]], [list(r) for r in data["project"]])
        except (KeyError, TypeError) as exc:
            raise InvalidResolution(f"malformed resolution fixture: {exc}") from exc


def load_resolution(path: str | Path) -> TorusResolution:
    return TorusResolution.from_json(json.loads(Path(path).read_text()))


def save_resolution(r: TorusResolution, path: str | Path) -> None:
    Path(path).write_text(json.dumps(r.to_json(), indent=1) + "\n")


def fixture_n2() -> TorusResolution:
    G = symmetric_group(2)
    return TorusResolution(
        group=G,
        e1=GSet.trivial(G, 1),
        e2=GSet.natural(G),
        target=GLattice(G, 1, [[[-1]]]),
        embed=[[1], [-1]],
        project=[[1, 1]],
    )


# --- verification ----------------------------------------------------------

@dataclass
class ResolutionReport:
    ok: bool
    failed: str | None = None
    passed: list[str] = field(default_factory=list)
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_resolution(r: TorusResolution) -> ResolutionReport:
    rank, m1, m2 = r.target.rank, r.e1.size, r.e2.size
    passed: list[str] = []

    def fail(name, detail=""):
        return ResolutionReport(False, name, passed, detail)

    if intlin.shape(r.embed) != (m2, rank) or intlin.shape(r.project) != (m1, m2):
        return fail("shapes", f"embed {intlin.shape(r.embed)}, project {intlin.shape(r.project)}")
    passed.append("shapes")
    if not intlin.is_saturated(r.embed):
        return fail("embed injective with saturated image")
    passed.append("embed injective with saturated image")
    if m1 and not intlin.is_saturated(intlin.transpose(r.project)):
        return fail("project surjective")
    passed.append("project surjective")
    comp = intlin.matmul(r.project, r.embed)
    if any(any(row) for row in comp):
        return fail("composite zero", f"project * embed = {comp}")
    passed.append("composite zero")
    ker = intlin.kernel_basis(r.project, m2) if m1 else intlin.eye(m2)
    if intlin.shape(ker)[1] != rank or not intlin.integer_span_contains(r.embed, ker):
        return fail("exactness", "ker(project) != im(embed)")
    passed.append("exactness")
    for g in r.group.generators:
        gi = r.group.index[g]
        P2 = r.e2.permutation_matrix(gi)
        A = r.target.element_action[gi]
        if intlin.matmul(r.embed, A) != intlin.matmul(P2, r.embed):
            return fail("equivariance", f"embed does not commute with generator {g}")
        P1 = r.e1.permutation_matrix(gi)
        if intlin.matmul(r.project, P2) != intlin.matmul(P1, r.project):
            return fail("equivariance", f"project does not commute with generator {g}")
    passed.append("equivariance")
    return ResolutionReport(True, None, passed)


def class_B_dual(r: TorusResolution) -> LocBurnsidePoly:
    """{B T dual} = (l - 1)^E1 / (l - 1)^E2."""
    _require_valid(r)
    return LocBurnsidePoly(qs_torus_class(r.e1), CycloDenom()) * invert_qs(r.e2)


def class_T(r: TorusResolution) -> LocBurnsidePoly:
    """{T} = (l - 1)^E2 / (l - 1)^E1."""
    _require_valid(r)
    return LocBurnsidePoly(qs_torus_class(r.e2), CycloDenom()) * invert_qs(r.e1)


def _require_valid(r: TorusResolution) -> None:
    rep = verify_resolution(r)
    if not rep:
        raise InvalidResolution(f"resolution check failed: {rep.failed} {rep.detail}".strip())


def expected_b_pn(n: int) -> LClass:
    """L^(n(n-1)) / {PGL_n}."""
    from .catalog import linear_group_class

    return lring.L ** (n * (n - 1)) / linear_group_class("PGL", n)


@dataclass
class TheoremBReport:
    n: int
    ok: bool
    expected: LClass
    actual: LClass | None
    detail: str = ""


def theorem_b_check(n: int, r: TorusResolution, assign: Mapping[int, LClass] | None = None) -> TheoremBReport:
    if n not in (2, 3):
        raise ValueError("only n = 2 and n = 3 are covered")
    expected = expected_b_pn(n)
    G = r.group
    if G.degree != n or len(G) != factorial(n):
        raise InvalidResolution(f"resolution group is not S_{n}")
    natural = GSet.natural(G)
    want = [natural.fixed_points([g]) - 1 for g in range(len(G))]
    if r.target.rank != n - 1 or r.target.character() != want:
        raise InvalidResolution(f"target lattice is not Z[{n}]/Z")
    _require_valid(r)
    value = pushforward(class_B_dual(r), all_ones(G.subgroup_table) if assign is None else assign)
    ok = value == expected
    return TheoremBReport(n, ok, expected, value, "" if ok else f"got {value}, expected {expected}")


# --- bounded search --------------------------------------------------------

def equivariant_homs(target: GLattice, E: GSet) -> list[list[list[int]]]:
    """Z-basis of Hom_G(target, Z[E]) as |E| x rank matrices."""
    m, r = E.size, target.rank
    rows = []
    G = target.group
    for g in G.generators:
        gi = G.index[g]
        A = target.element_action[gi]
        P = E.permutation_matrix(gi)
        for i in range(m):
            for j in range(r):
                eq = [0] * (m * r)
                for k in range(r):
                    eq[i * r + k] += A[k][j]
                for k in range(m):
                    eq[k * r + j] -= P[i][k]
                rows.append(eq)
    K = intlin.kernel_basis(rows, m * r)
    out = []
    for c in range(intlin.shape(K)[1]):
        out.append([[K[i * r + j][c] for j in range(r)] for i in range(m)])
    return out


def _union(sets: Sequence[GSet]) -> GSet:
    out = sets[0]
    for s in sets[1:]:
        out = out.disjoint_union(s)
    return out


def _fixed_sublattice(mats: Sequence[Sequence[Sequence[int]]], n: int) -> list[list[int]]:
    rows = []
    for M in mats:
        for i in range(n):
            rows.append([M[i][j] - (1 if i == j else 0) for j in range(n)])
    return intlin.kernel_basis(rows, n)


def _coset_reps(T: GSet) -> list[int]:
    """For a transitive set, a group element carrying point 0 to each point."""
    reps = [None] * T.size
    for g, a in enumerate(T.element_action):
        if reps[a[0]] is None:
            reps[a[0]] = g
    return reps  # type: ignore[return-value]


def _permutation_basis(coker: list[list[list[int]]], parts: Sequence[GSet], bound: int):
    """Vectors v_k fixed by Stab(0) in parts[k] whose translates form a Z-basis."""
    n = len(coker[0])
    choices = []
    for T in parts:
        stab = sorted(T.stabilizer(0))
        F = _fixed_sublattice([coker[h] for h in stab], n)
        d = intlin.shape(F)[1]
        if d == 0:
            return None
        vecs = []
        for c in sorted(product(range(-bound, bound + 1), repeat=d), key=lambda c: (sum(map(abs, c)), c)):
            if any(c):
                vecs.append([sum(F[i][j] * c[j] for j in range(d)) for i in range(n)])
        choices.append(vecs)
    reps = [_coset_reps(T) for T in parts]
    for pick in product(*choices):
        cols = []
        for v, rp in zip(pick, reps):
            for g in rp:
                M = coker[g]
                cols.append([sum(M[i][j] * v[j] for j in range(n)) for i in range(n)])
        B = intlin.transpose(cols)
        if abs(intlin.det_exact(B)) == 1:
            return B
    return None


def search_resolution(G: PermGroup, target: GLattice, catalog: Sequence[GSet] | None = None,
                      bound: int = 3, max_e2: int = 8) -> TorusResolution:
    """Smallest verified resolution 0 -> target -> Z[E2] -> Z[E1] -> 0.

    Candidates are ordered by |E2|, then by the catalog indices making up E2,
    then by (l1 norm, lexicographic) order of the coordinates of the embedding in
    a basis of equivariant maps; the first candidate whose cokernel has a
    permuted Z-basis wins.
    """
    table = G.subgroup_table
    if catalog is None:
        catalog = [GSet.cosets(G, rep) for rep in table.reps]
    catalog = list(catalog)
    if not catalog:
        raise NotFound("empty catalog")
    r = target.rank
    tchar = target.character()
    perm_chars = [[T.fixed_points([g]) for g in range(len(G))] for T in catalog]
    for size in range(r, max_e2 + 1):
        for k in range(1, size + 1):
            for combo in combinations_with_replacement(range(len(catalog)), k):
                if sum(catalog[i].size for i in combo) != size:
                    continue
                E2 = _union([catalog[i] for i in combo])
                res = _try_e2(G, target, E2, catalog, perm_chars, tchar, bound)
                if res is not None:
                    return res
    raise NotFound(f"no resolution with |E2| <= {max_e2} and coefficients <= {bound}")


def _try_e2(G, target, E2, catalog, perm_chars, tchar, bound):
    r, m = target.rank, E2.size
    homs = equivariant_homs(target, E2)
    if not homs:
        return None
    c_char = [E2.fixed_points([g]) - tchar[g] for g in range(len(G))]
    e1_options = []
    for k in range(1, m - r + 1):
        for combo in combinations_with_replacement(range(len(catalog)), k):
            if sum(catalog[i].size for i in combo) != m - r:
                continue
            ch = [sum(perm_chars[i][g] for i in combo) for g in range(len(G))]
            if ch == c_char:
                e1_options.append(combo)
    if not e1_options:
        return None
    coeffs = sorted(product(range(-bound, bound + 1), repeat=len(homs)), key=lambda c: (sum(map(abs, c)), c))
    for c in coeffs:
        if not any(c):
            continue
        embed = [[sum(ci * h[i][j] for ci, h in zip(c, homs)) for j in range(r)] for i in range(m)]
        if not intlin.is_saturated(embed):
            continue
        diag, U, _ = intlin.smith_form(embed)
        Uinv = intlin.inverse_unimodular(U)
        coker = []
        for g in range(len(G)):
            C = intlin.matmul(intlin.matmul(U, E2.permutation_matrix(g)), Uinv)
            coker.append([row[r:] for row in C[r:]])
        for combo in e1_options:
            parts = [catalog[i] for i in combo]
            B = _permutation_basis(coker, parts, bound)
            if B is None:
                continue
            project = intlin.matmul(intlin.inverse_unimodular(B), [row for row in U[r:]])
            res = TorusResolution(G, _union(parts), E2, target, embed, project)
            if verify_resolution(res):
                return res
    return None
