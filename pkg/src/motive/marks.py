"""Small permutation groups, subgroup classes, tables of marks, Burnside rings.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i``; products compose
right to left, ``(p * q)[i] = p[q[i]]``, so G-sets are left actions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Sequence

Perm = tuple

DEFAULT_BOUND = 10000


class GroupTooLarge(ValueError):
    pass


class NotIntegral(ArithmeticError):
    pass


class InvalidAction(ValueError):
    pass


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def identity(n: int) -> Perm:
    return tuple(range(n))


def closure(gens: Sequence[Perm], n: int, bound: int = DEFAULT_BOUND) -> list[Perm]:
    e = identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > bound:
                        raise GroupTooLarge(f"group exceeds {bound} elements")
        frontier = nxt
    return sorted(seen)


class PermGroup:
    def __init__(self, degree: int, generators: Sequence[Sequence[int]], bound: int = DEFAULT_BOUND):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        for g in self.generators:
            if sorted(g) != list(range(degree)):
                raise ValueError(f"{g} is not a permutation of 0..{degree - 1}")
        self.bound = bound
        self.elements: list[Perm] = closure(self.generators, degree, bound)
        self.index = {g: i for i, g in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={len(self)})"

    def mul(self, i: int, j: int) -> int:
        return self._table[i][j]

    def inv(self, i: int) -> int:
        return self._inverses[i]

    @cached_property
    def _table(self) -> list[list[int]]:
        return [[self.index[compose(a, b)] for b in self.elements] for a in self.elements]

    @cached_property
    def _inverses(self) -> list[int]:
        return [self.index[inverse(a)] for a in self.elements]

    def conjugate(self, sub: frozenset[int], g: int) -> frozenset[int]:
        """g H g^-1."""
        gi = self.inv(g)
        return frozenset(self.mul(self.mul(g, h), gi) for h in sub)

    def generated(self, gens: Sequence[int]) -> frozenset[int]:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(g, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def subgroup_table(self) -> "SubgroupClassTable":
        return subgroup_classes(self)


def symmetric_group(n: int) -> PermGroup:
    if n <= 1:
        return PermGroup(max(n, 1), [identity(max(n, 1))])
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return PermGroup(n, gens)


def trivial_group() -> PermGroup:
    return PermGroup(1, [(0,)])


def all_subgroups(G: PermGroup) -> set[frozenset[int]]:
    """Breadth-first closure over cyclic extensions, starting at the trivial group."""
    if len(G) > G.bound:
        raise GroupTooLarge(f"|G| = {len(G)} exceeds {G.bound}")
    trivial = frozenset([0])
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for H in frontier:
            gens = sorted(H)
            for g in range(len(G)):
                if g in H:
                    continue
                K = G.generated(gens + [g])
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return found


@dataclass
class SubgroupClassTable:
    group: PermGroup
    reps: list[tuple[int, ...]]
    marks: list[list[int]]
    class_of: dict[frozenset[int], int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.reps)

    def order(self, k: int) -> int:
        return len(self.reps[k])

    def unit(self) -> "BurnsideElt":
        c = [0] * len(self)
        c[-1] = 1
        return BurnsideElt(self, tuple(c))

    def zero(self) -> "BurnsideElt":
        return BurnsideElt(self, (0,) * len(self))

    def basis(self, k: int) -> "BurnsideElt":
        c = [0] * len(self)
        c[k] = 1
        return BurnsideElt(self, tuple(c))

    def class_index(self, sub) -> int:
        return self.class_of[frozenset(sub)]

    def label(self, k: int) -> str:
        return f"H{k}(order {self.order(k)})"


def subgroup_classes(G: PermGroup) -> SubgroupClassTable:
    subs = all_subgroups(G)
    classes: list[tuple[tuple[int, ...], list[frozenset[int]]]] = []
    assigned: set[frozenset[int]] = set()
    for H in sorted(subs, key=lambda s: (len(s), sorted(s))):
        if H in assigned:
            continue
        conj = {G.conjugate(H, g) for g in range(len(G))}
        assigned |= conj
        rep = min(tuple(sorted(c)) for c in conj)
        classes.append((rep, sorted(conj, key=sorted)))
    classes.sort(key=lambda c: (len(c[0]), c[0]))
    reps = [c[0] for c in classes]
    class_of = {}
    for k, (_, conj) in enumerate(classes):
        for c in conj:
            class_of[c] = k
    marks = [[_fixed_cosets(G, frozenset(H), frozenset(K)) for K in reps] for H in reps]
    return SubgroupClassTable(G, reps, marks, class_of)


def _fixed_cosets(G: PermGroup, H: frozenset[int], K: frozenset[int]) -> int:
    """Number of cosets gH fixed by every element of K, i.e. g^-1 K g inside H."""
    count = 0
    for g in range(len(G)):
        gi = G.inv(g)
        if all(G.mul(G.mul(gi, k), g) in H for k in K):
            count += 1
    return count // len(H)


# --- G-sets ----------------------------------------------------------------

class GSet:
    """A finite left G-set given by one permutation of range(size) per generator."""

    def __init__(self, group: PermGroup, size: int, action: Sequence[Sequence[int]]):
        if len(action) != len(group.generators):
            raise InvalidAction("need one permutation per group generator")
        self.group = group
        self.size = size
        self.action = [tuple(a) for a in action]
        for a in self.action:
            if sorted(a) != list(range(size)):
                raise InvalidAction(f"{a} is not a permutation of 0..{size - 1}")
        self.element_action = self._extend()

    def _extend(self) -> list[Perm]:
        G = self.group
        gen_idx = [G.index[g] for g in G.generators]
        acts: list[Perm | None] = [None] * len(G)
        acts[0] = identity(self.size)
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s, a in zip(gen_idx, self.action):
                    y = G.mul(s, x)
                    img = compose(a, acts[x])
                    if acts[y] is None:
                        acts[y] = img
                        nxt.append(y)
                    elif acts[y] != img:
                        raise InvalidAction("generator images do not define a group action")
            frontier = nxt
        return acts  # type: ignore[return-value]

    @classmethod
    def from_function(cls, group: PermGroup, points: Sequence, act) -> "GSet":
        """Build from a point list and ``act(perm, point) -> point`` for generators."""
        pos = {p: i for i, p in enumerate(points)}
        action = [[pos[act(g, p)] for p in points] for g in group.generators]
        return cls(group, len(points), action)

    @classmethod
    def natural(cls, group: PermGroup) -> "GSet":
        return cls(group, group.degree, group.generators)

    @classmethod
    def trivial(cls, group: PermGroup, size: int = 1) -> "GSet":
        return cls(group, size, [identity(size)] * len(group.generators))

    @classmethod
    def cosets(cls, group: PermGroup, sub: Sequence[int]) -> "GSet":
        """The transitive set G/H, points indexed by sorted coset tuples."""
        H = frozenset(sub)
        cos = sorted({tuple(sorted(group.mul(g, h) for h in H)) for g in range(len(group))})
        pos = {c: i for i, c in enumerate(cos)}
        action = []
        for gen in group.generators:
            s = group.index[gen]
            action.append([pos[tuple(sorted(group.mul(s, x) for x in c))] for c in cos])
        return cls(group, len(cos), action)

    def disjoint_union(self, other: "GSet") -> "GSet":
        n = self.size
        action = [a + tuple(n + i for i in b) for a, b in zip(self.action, other.action)]
        return GSet(self.group, n + other.size, action)

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for x in range(self.size):
            if x in seen:
                continue
            orb = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for a in self.action:
                        z = a[y]
                        if z not in orb:
                            orb.add(z)
                            nxt.append(z)
                frontier = nxt
            seen |= orb
            out.append(sorted(orb))
        return out

    def stabilizer(self, x: int) -> frozenset[int]:
        return frozenset(g for g, a in enumerate(self.element_action) if a[x] == x)

    def fixed_points(self, sub) -> int:
        acts = [self.element_action[h] for h in sub]
        return sum(1 for x in range(self.size) if all(a[x] == x for a in acts))

    def restricted_orbit_lengths(self, sub) -> list[int]:
        """Orbit lengths of E under the subgroup ``sub``."""
        acts = [self.element_action[h] for h in sub]
        seen: set[int] = set()
        out = []
        for x in range(self.size):
            if x in seen:
                continue
            orb = {a[x] for a in acts}
            seen |= orb
            out.append(len(orb))
        return out

    def permutation_matrix(self, g: int) -> list[list[int]]:
        """Matrix of g on Z[E], column x has a 1 in row g.x."""
        a = self.element_action[g]
        m = [[0] * self.size for _ in range(self.size)]
        for x in range(self.size):
            m[a[x]][x] = 1
        return m

    def __repr__(self) -> str:
        return f"GSet(size={self.size}, orbits={[len(o) for o in self.orbits()]})"


# --- Burnside ring ---------------------------------------------------------

@dataclass(frozen=True)
class BurnsideElt:
    """Integer combination of the transitive sets [G/H_k] of a class table."""

    table: SubgroupClassTable = field(compare=False, repr=False)
    coeffs: tuple[int, ...]

    def __add__(self, other: "BurnsideElt") -> "BurnsideElt":
        return BurnsideElt(self.table, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "BurnsideElt":
        return BurnsideElt(self.table, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "BurnsideElt") -> "BurnsideElt":
        return self + (-other)

    def scale(self, c: int) -> "BurnsideElt":
        return BurnsideElt(self.table, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return b_mul(self, other)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def marks(self) -> tuple[int, ...]:
        return marks_of(self)

    def __str__(self) -> str:
        t = self.table
        out = ""
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            sym = "1" if k == len(t) - 1 else f"[G/H{k}]"
            mag = abs(c)
            body = sym if mag == 1 else (str(mag) if sym == "1" else f"{mag}{sym}")
            if sym == "1" and mag == 1:
                body = "1"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out or "0"


def marks_of(e: BurnsideElt) -> tuple[int, ...]:
    M = e.table.marks
    n = len(M)
    return tuple(sum(e.coeffs[h] * M[h][k] for h in range(n)) for k in range(n))


def unmark(table: SubgroupClassTable, v: Sequence[int]) -> BurnsideElt:
    """Solve c M = v for integer c using lower-triangularity of the marks."""
    M = table.marks
    n = len(M)
    c = [0] * n
    for k in range(n - 1, -1, -1):
        rest = v[k] - sum(c[h] * M[h][k] for h in range(k + 1, n))
        q, r = divmod(rest, M[k][k])
        if r:
            raise NotIntegral(f"marks vector {tuple(v)} is not in the Burnside lattice "
                              f"(entry {k}: {Fraction(rest, M[k][k])})")
        c[k] = q
    return BurnsideElt(table, tuple(c))


def b_mul(a: BurnsideElt, b: BurnsideElt) -> BurnsideElt:
    ma, mb = marks_of(a), marks_of(b)
    return unmark(a.table, [x * y for x, y in zip(ma, mb)])


def orbit_decompose(E: GSet) -> BurnsideElt:
    table = E.group.subgroup_table
    c = [0] * len(table)
    for orb in E.orbits():
        c[table.class_index(E.stabilizer(orb[0]))] += 1
    return BurnsideElt(table, tuple(c))


def is_lower_triangular(table: SubgroupClassTable) -> bool:
    M = table.marks
    return all(M[h][k] == 0 for h in range(len(M)) for k in range(h + 1, len(M)))


def sl2_f3() -> PermGroup:
    """SL_2(F_3) acting on the 8 nonzero vectors of F_3^2."""
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def perm(m):
        return tuple(pos[((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3)] for a, b in vecs)

    return PermGroup(8, [perm(((1, 1), (0, 1))), perm(((0, 2), (1, 0)))])


def group_by_name(name: str) -> PermGroup:
    name = name.lower()
    if name in ("s1", "s2", "s3", "s4", "s5"):
        return symmetric_group(int(name[1]))
    if name in ("sl2f3", "sl2(f3)"):
        return sl2_f3()
    raise KeyError(f"unknown group {name!r}")


def all_permutations(n: int) -> list[Perm]:
    return sorted(permutations(range(n)))
