"""Symmetric and exterior powers of G-sets, the quasi-split torus class (l - 1)^E,
its inverse after inverting cyclotomic polynomials in l, and pushforward to
classes in L.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from . import lring
from .lring import CycloDenom, LClass
from .marks import (BurnsideElt, GSet, NotIntegral, SubgroupClassTable,
                    orbit_decompose, unmark)


class MissingAssignment(KeyError):
    pass


# --- polynomials in l over the Burnside ring -------------------------------

@dataclass(frozen=True)
class BurnsidePoly:
    table: SubgroupClassTable = field(compare=False, repr=False)
    coeffs: tuple[BurnsideElt, ...]  # index i = coefficient of l^i

    @classmethod
    def make(cls, table: SubgroupClassTable, coeffs: Sequence[BurnsideElt]) -> "BurnsidePoly":
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        return cls(table, tuple(c))

    @classmethod
    def constant(cls, e: BurnsideElt) -> "BurnsidePoly":
        return cls.make(e.table, [e])

    @classmethod
    def from_int_poly(cls, table: SubgroupClassTable, p: Sequence[int]) -> "BurnsidePoly":
        one = table.unit()
        return cls.make(table, [one.scale(c) for c in p])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "BurnsidePoly") -> "BurnsidePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.table.zero()
        return BurnsidePoly.make(self.table, [
            (self.coeffs[i] if i < len(self.coeffs) else z) + (other.coeffs[i] if i < len(other.coeffs) else z)
            for i in range(n)])

    def __neg__(self) -> "BurnsidePoly":
        return BurnsidePoly(self.table, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "BurnsidePoly") -> "BurnsidePoly":
        return self + (-other)

    def __mul__(self, other: "BurnsidePoly") -> "BurnsidePoly":
        if not self.coeffs or not other.coeffs:
            return BurnsidePoly(self.table, ())
        out = [self.table.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BurnsidePoly.make(self.table, out)

    def mark_poly(self, k: int) -> lring.IntPoly:
        """Image in Z[l] under the k-th mark."""
        return lring.poly(c.marks()[k] for c in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("l" if i == 1 else f"l^{i}")
            body = str(c)
            if mono:
                body = mono if body == "1" else f"({body})*{mono}"
            parts.append(body)
        return " + ".join(parts)


@dataclass(frozen=True)
class LocBurnsidePoly:
    """num / den with den a product of cyclotomic polynomials in l."""

    num: BurnsidePoly
    den: CycloDenom

    def __mul__(self, other: "LocBurnsidePoly") -> "LocBurnsidePoly":
        return LocBurnsidePoly(self.num * other.num, self.den.times(other.den))

    def mark_class(self, k: int) -> LClass:
        """k-th mark, as a rational function with l read as L."""
        return lring.reduce(self.num.mark_poly(k), self.den)

    def __str__(self) -> str:
        return f"({self.num}) / {self.den}"


# --- pre-lambda operations -------------------------------------------------

def symmetric_power_set(E: GSet, i: int) -> GSet:
    """G-set of size-i multisets of points of E."""
    pts = list(combinations_with_replacement(range(E.size), i))

    def act(g, p):
        a = E.action[E.group.generators.index(g)]
        return tuple(sorted(a[x] for x in p))

    return GSet.from_function(E.group, pts, act)


def symmetric_power(E: GSet, i: int) -> BurnsideElt:
    if i < 0:
        raise ValueError("negative symmetric power")
    return orbit_decompose(symmetric_power_set(E, i))


def lambda_powers(E: GSet, top: int | None = None) -> list[BurnsideElt]:
    """lambda^0 .. lambda^top from sum_j (-1)^j lambda^j sigma^(n-j) = 0."""
    top = E.size + 1 if top is None else top
    sig = [symmetric_power(E, i) for i in range(top + 1)]
    lam = [sig[0]]
    for n in range(1, top + 1):
        acc = E.group.subgroup_table.zero()
        for j in range(n):
            term = lam[j] * sig[n - j]
            acc = acc + (term if j % 2 == 0 else -term)
        lam.append(acc if n % 2 == 1 else -acc)
    return lam


def lambda_power(E: GSet, i: int) -> BurnsideElt:
    if i < 0:
        raise ValueError("negative exterior power")
    return lambda_powers(E, i)[i]


def lambda_powers_from_marks(E: GSet) -> list[BurnsideElt]:
    """Independent route: the H-mark of sum (-1)^i lambda^i s^i is prod (1 - s^w)."""
    table = E.group.subgroup_table
    per_class = []
    for rep in table.reps:
        p: lring.IntPoly = (1,)
        for w in E.restricted_orbit_lengths(rep):
            p = lring.pmul(p, lring.poly([1] + [0] * (w - 1) + [-1]))
        per_class.append(p)
    out = []
    for i in range(E.size + 1):
        v = [(-1) ** i * (p[i] if i < len(p) else 0) for p in per_class]
        out.append(unmark(table, v))
    return out


def sigma_marks_series(E: GSet, k: int, top: int) -> list[int]:
    """k-th marks of sigma^0 .. sigma^top, by counting fixed multisets."""
    rep = E.group.subgroup_table.reps[k]
    return [symmetric_power_set(E, i).fixed_points(rep) for i in range(top + 1)]


# --- quasi-split tori ------------------------------------------------------

def qs_torus_class(E: GSet) -> BurnsidePoly:
    """(l - 1)^E = sum_i (-1)^i lambda^i(E) l^(n - i)."""
    n = E.size
    lam = lambda_powers(E, n)
    table = E.group.subgroup_table
    coeffs = [lam[n - k] if (n - k) % 2 == 0 else -lam[n - k] for k in range(n + 1)]
    return BurnsidePoly.make(table, coeffs)


def mark_factors(E: GSet, k: int) -> dict[int, int]:
    """Cyclotomic factorization of the k-th mark prod_j (l^w_j - 1)."""
    out: dict[int, int] = {}
    for w in E.restricted_orbit_lengths(E.group.subgroup_table.reps[k]):
        for d in lring.divisors(w):
            out[d] = out.get(d, 0) + 1
    return out


def invert_qs(E: GSet) -> LocBurnsidePoly:
    """g / h with (l - 1)^E * g = h * 1, h the lcm of the mark polynomials."""
    table = E.group.subgroup_table
    nk = len(table)
    facs = [mark_factors(E, k) for k in range(nk)]
    h: dict[int, int] = {}
    for f in facs:
        for d, m in f.items():
            h[d] = max(h.get(d, 0), m)
    hden = CycloDenom.make(0, h)
    g_marks = []
    for f in facs:
        co = {d: m - f.get(d, 0) for d, m in h.items()}
        g_marks.append(CycloDenom.make(0, co).expand())
    deg = max(len(p) for p in g_marks)
    coeffs = []
    for i in range(deg):
        v = [p[i] if i < len(p) else 0 for p in g_marks]
        try:
            coeffs.append(unmark(table, v))
        except NotIntegral as exc:
            raise NotIntegral(f"inverse of (l-1)^E is not integral in degree {i}") from exc
    g = BurnsidePoly.make(table, coeffs)
    check = qs_torus_class(E) * g - BurnsidePoly.from_int_poly(table, hden.expand())
    if not check.is_zero():
        raise NotIntegral("(l-1)^E * g != h; marks or lambda computation is inconsistent")
    return LocBurnsidePoly(g, hden)


def pushforward(p: LocBurnsidePoly | BurnsidePoly, assign: Mapping[int, LClass]) -> LClass:
    """Replace [G/H_k] by assign[k] and l by L, then divide by the denominator."""
    if isinstance(p, BurnsidePoly):
        p = LocBurnsidePoly(p, CycloDenom())
    total = lring.ZERO
    for i, c in enumerate(p.num.coeffs):
        for k, a in enumerate(c.coeffs):
            if not a:
                continue
            if k not in assign:
                raise MissingAssignment(f"no class assigned to subgroup class {k}")
            total = total + assign[k] * a * lring.L ** i
    return total * lring.invert(lring.reduce(p.den.expand(), CycloDenom()))


def all_ones(table: SubgroupClassTable) -> dict[int, LClass]:
    """{B H} = 1 for every subgroup class; valid for subgroups of S_2 and S_3."""
    return {k: lring.ONE for k in range(len(table))}
