"""Stabilizers of the eight singular plane cubics over F_q.

Forms are acted on by substitution, (f.A)(v) = f(A v), so row i of A is the
image of the i-th variable. This is a right action. It differs from the
determinant-twisted action on forms by a scalar character, so projective
stabilizers are the same. Reuse ``act`` for orbit maps only after checking
that convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

import numpy as np

MONOMIALS: tuple[tuple[int, int, int], ...] = (
    (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
    (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
)
MONO_INDEX = {m: i for i, m in enumerate(MONOMIALS)}


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % p for p in range(2, int(n ** 0.5) + 1))


class Fq:
    """Prime field F_q; elements are ints in [0, q)."""

    def __init__(self, q: int):
        if not _is_prime(q) or q >= 2 ** 16:
            raise FieldError(f"q = {q} must be a prime below 2^16")
        self.q = q

    def __call__(self, x: int) -> int:
        return x % self.q

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def mul(self, a, b):
        return (a * b) % self.q

    def inv(self, a):
        if a % self.q == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.q)

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def roots_of_unity(self, n: int) -> list[int]:
        return [x for x in self.units() if pow(x, n, self.q) == 1]


def require_good_field(q: int) -> Fq:
    F = Fq(q)
    if q % 6 != 1:
        raise FieldError(f"q = {q} is not 1 mod 6")
    return F


@dataclass(frozen=True)
class DualNum:
    """a + b eps over F_q with eps^2 = 0."""

    a: int
    b: int
    q: int

    def __add__(self, o):
        o = self._lift(o)
        return DualNum((self.a + o.a) % self.q, (self.b + o.b) % self.q, self.q)

    __radd__ = __add__

    def __neg__(self):
        return DualNum(-self.a % self.q, -self.b % self.q, self.q)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __mul__(self, o):
        o = self._lift(o)
        return DualNum(self.a * o.a % self.q, (self.a * o.b + self.b * o.a) % self.q, self.q)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.a % self.q != 0

    def inverse(self) -> "DualNum":
        if not self.is_unit():
            raise ZeroDivisionError("eps-multiple is not a unit")
        ia = pow(self.a, -1, self.q)
        return DualNum(ia, -self.b * ia * ia % self.q, self.q)

    def _lift(self, o) -> "DualNum":
        return o if isinstance(o, DualNum) else DualNum(o % self.q, 0, self.q)


# --- forms -------------------------------------------------------------------

@dataclass(frozen=True)
class CubicForm:
    coeffs: tuple  # in MONOMIALS order

    def __post_init__(self):
        if len(self.coeffs) != 10:
            raise ValueError("a cubic form has 10 coefficients")

    @classmethod
    def from_dict(cls, terms: dict) -> "CubicForm":
        c = [0] * 10
        for m, v in terms.items():
            c[MONO_INDEX[m]] += v
        return cls(tuple(c))

    def is_zero(self, q: int | None = None) -> bool:
        return all((c % q if q else c) == 0 for c in self.coeffs)

    def mod(self, q: int) -> "CubicForm":
        return CubicForm(tuple(c % q for c in self.coeffs))

    def __str__(self):
        names = "xyz"
        parts = []
        for c, m in zip(self.coeffs, MONOMIALS):
            if c == 0:
                continue
            mono = "".join(names[i] + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) or "0"


def _poly_mul(p: dict, r: dict, zero) -> dict:
    out: dict = {}
    for m1, a in p.items():
        for m2, b in r.items():
            k = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            out[k] = out.get(k, zero) + a * b
    return out


def substitute(coeffs: Sequence, A, zero=0, one=1) -> list:
    """Coefficients of f(A (x, y, z)) over any commutative ring of entries."""
    lin = [{(1, 0, 0): A[i][0], (0, 1, 0): A[i][1], (0, 0, 1): A[i][2]} for i in range(3)]
    out = [zero] * 10
    for c, m in zip(coeffs, MONOMIALS):
        if isinstance(c, int) and c == 0:
            continue
        p = {(0, 0, 0): one}
        for i, e in enumerate(m):
            for _ in range(e):
                p = _poly_mul(p, lin[i], zero)
        for k, v in p.items():
            out[MONO_INDEX[k]] = out[MONO_INDEX[k]] + c * v
    return out


def act(f: CubicForm, A) -> CubicForm:
    if det3(A) == 0:
        raise ValueError("matrix is singular")
    return CubicForm(tuple(substitute(f.coeffs, A)))


def det3(A):
    return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
            - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
            + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))


def proportional(g: Sequence[int], f: Sequence[int], q: int) -> bool:
    """g = c f for some c in F_q^x."""
    k = next((i for i, c in enumerate(f) if c % q), None)
    if k is None or g[k] % q == 0:
        return False
    return all((g[i] * f[k] - f[i] * g[k]) % q == 0 for i in range(10))


def stabilizes(f: CubicForm, A, q: int) -> bool:
    return det3(A) % q != 0 and proportional(substitute(f.coeffs, A), f.coeffs, q)


# --- brute-force count ---------------------------------------------------------

def _vector_substitute(coeffs, rows, q):
    """Vectorized f(A v): rows[i][j] are ints or int64 arrays."""
    lin = [{(1, 0, 0): rows[i][0], (0, 1, 0): rows[i][1], (0, 0, 1): rows[i][2]} for i in range(3)]
    cache: dict = {}

    def power(i, e):
        if (i, e) not in cache:
            p = {(0, 0, 0): 1}
            for _ in range(e):
                p = {k: v % q for k, v in _poly_mul(p, lin[i], 0).items()}
            cache[(i, e)] = p
        return cache[(i, e)]

    out = [0] * 10
    for c, m in zip(coeffs, MONOMIALS):
        c %= q
        if c == 0:
            continue
        p = _poly_mul(_poly_mul(power(0, m[0]), power(1, m[1]), 0), power(2, m[2]), 0)
        for k, v in p.items():
            out[MONO_INDEX[k]] = (out[MONO_INDEX[k]] + c * (v % q)) % q
    return out


def _first_columns(q: int):
    """Representatives of F_q^3 minus 0 up to scalars, first nonzero entry 1."""
    for col in product(range(q), repeat=3):
        nz = next((c for c in col if c), None)
        if nz == 1:
            yield col


def stabilizer_order(f: CubicForm, q: int, allow_large: bool = False) -> int:
    """Order of the stabilizer of f in PGL_3(F_q), by enumeration.

    Each projective class is counted once by fixing the first nonzero entry
    of the first column to 1.
    """
    require_good_field(q)
    if q > 7 and not allow_large:
        raise FieldError(f"q = {q} needs allow_large=True (long sweep)")
    if f.is_zero(q):
        raise ValueError("zero form")
    fc = [c % q for c in f.coeffs]
    k = next(i for i, c in enumerate(fc) if c)
    # the six entries of columns 1 and 2, one block per value of A[0][1]
    grid = np.stack(np.meshgrid(*[np.arange(q, dtype=np.int64)] * 5, indexing="ij"), 0).reshape(5, -1)
    count = 0
    for c0 in _first_columns(q):
        for a01 in range(q):
            a11, a21, a02, a12, a22 = grid
            rows = [(c0[0], a01, a02), (c0[1], a11, a12), (c0[2], a21, a22)]
            d = det3(rows) % q
            g = _vector_substitute(fc, rows, q)
            ok = (d != 0) & (np.asarray(g[k]) % q != 0)
            for i in range(10):
                gi = np.asarray(g[i])
                ok &= (gi * fc[k] - fc[i] * np.asarray(g[k])) % q == 0
            count += int(np.count_nonzero(ok))
    return count


def gl3_order(q: int) -> int:
    return (q ** 3 - 1) * (q ** 3 - q) * (q ** 3 - q ** 2)


# --- Lie algebra ----------------------------------------------------------------

def rank_mod(M: list[list[int]], q: int) -> int:
    M = [[x % q for x in row] for row in M]
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, q)
        M[r] = [x * inv % q for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                t = M[i][c]
                M[i] = [(x - t * y) % q for x, y in zip(M[i], M[r])]
        r += 1
    return r


def lie_system(f: CubicForm, q: int) -> list[list[int]]:
    """10 x 10 matrix: columns N_11 .. N_33 then c; rows are monomials.

    Column (i, j) is the eps-part of f((I + eps E_ij) v), computed with dual numbers.
    """
    zero, one = DualNum(0, 0, q), DualNum(1, 0, q)
    cols = []
    for i in range(3):
        for j in range(3):
            A = [[DualNum(int(r == s), int(r == i and s == j), q) for s in range(3)] for r in range(3)]
            g = substitute([c % q for c in f.coeffs], A, zero, one)
            cols.append([x.b if isinstance(x, DualNum) else 0 for x in g])
    cols.append([-c % q for c in f.coeffs])
    return [[cols[c][r] for c in range(10)] for r in range(10)]


def lie_stab_dim(f: CubicForm, q: int) -> int:
    require_good_field(q)
    return 10 - rank_mod(lie_system(f, q), q) - 1


# --- the table ------------------------------------------------------------------

def _f(**terms) -> CubicForm:
    names = {"x": 0, "y": 1, "z": 2}
    d = {}
    for key, v in terms.items():
        m = [0, 0, 0]
        for ch in key:
            m[names[ch]] += 1
        d[tuple(m)] = v
    return CubicForm.from_dict(d)


STANDARD_FORMS: dict[str, CubicForm] = {
    "a": _f(xxx=1),
    "b": _f(xxy=1),
    "c": _f(xxy=1, xyy=1),
    "d": _f(xyz=1),
    "e": _f(xyz=1, zzz=1),
    "f": _f(yyz=1, xxy=1),
    "g": _f(xxz=1, yyy=1),
    "h": _f(xyz=1, xxx=1, yyy=1),
}

DESCRIPTIONS = {
    "a": "triple line", "b": "double and single line", "c": "three concurrent lines",
    "d": "three general lines", "e": "conic and secant line", "f": "conic and tangent line",
    "g": "cuspidal cubic", "h": "nodal cubic",
}

_EXPECTED: dict[str, tuple[Callable[[int], int], int]] = {
    "a": (lambda q: q ** 2 * (q ** 2 - 1) * (q ** 2 - q), 6),
    "b": (lambda q: q ** 2 * (q - 1) ** 2, 4),
    "c": (lambda q: 6 * q ** 2 * (q - 1), 3),
    "d": (lambda q: 6 * (q - 1) ** 2, 2),
    "e": (lambda q: 2 * (q - 1), 1),
    "f": (lambda q: q * (q - 1), 2),
    "g": (lambda q: q - 1, 1),
    "h": (lambda q: 6, 0),
}


def expected_stabilizer(case: str, q: int) -> tuple[int, int]:
    if case not in _EXPECTED:
        raise KeyError(f"unknown case {case!r}")
    require_good_field(q)
    order, dim = _EXPECTED[case]
    return order(q), dim


def parametrized_elements(case: str, q: int) -> list:
    """Explicit stabilizer elements from the standard parametrizations."""
    F = Fq(q)
    out = []
    if case == "e":
        for t in F.units():
            out.append([[t, 0, 0], [0, F.inv(t), 0], [0, 0, 1]])
        out.append([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    elif case == "f":
        for a in F.units():
            for b in F.elements():
                out.append([[a, -a * b % q, 0], [0, a * a % q, 0], [2 * b % q, -b * b % q, 1]])
    elif case == "g":
        for t in F.units():
            out.append([[pow(t, 3, q), 0, 0], [0, t * t % q, 0], [0, 0, 1]])
    elif case == "h":
        for z in F.roots_of_unity(3):
            out.append([[z, 0, 0], [0, z * z % q, 0], [0, 0, 1]])
        out.append([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    elif case == "d":
        for a, b in product(F.units(), repeat=2):
            out.append([[a, 0, 0], [0, b, 0], [0, 0, 1]])
        for perm in ((1, 0, 2), (0, 2, 1), (2, 1, 0)):
            out.append([[int(perm[i] == j) for j in range(3)] for i in range(3)])
    return out


@dataclass
class CaseRow:
    case: str
    form: str
    expected_order: int
    counted_order: int
    expected_dim: int
    lie_dim: int
    parametrization_ok: bool | None = None

    @property
    def status(self) -> str:
        ok = self.expected_order == self.counted_order and self.expected_dim == self.lie_dim
        ok = ok and self.parametrization_ok is not False
        return "pass" if ok else "fail"


@dataclass
class StabilizerReport:
    q: int
    rows: list[CaseRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.rows) and all(r.status == "pass" for r in self.rows)


def verify_case(case: str, q: int, allow_large: bool = False) -> CaseRow:
    f = STANDARD_FORMS[case]
    order, dim = expected_stabilizer(case, q)
    params = parametrized_elements(case, q)
    pok = all(stabilizes(f, A, q) for A in params) if params else None
    return CaseRow(case, str(f), order, stabilizer_order(f, q, allow_large), dim, lie_stab_dim(f, q), pok)


def verify_appendix(q: int, cases: Sequence[str] | None = None, allow_large: bool = False) -> StabilizerReport:
    require_good_field(q)
    cases = list(cases) if cases else sorted(STANDARD_FORMS)
    return StabilizerReport(q, [verify_case(c, q, allow_large) for c in cases])


# --- j-invariant family ---------------------------------------------------------

@dataclass
class JRow:
    t: int
    discriminant: int
    j: int

    @property
    def ok(self) -> bool:
        return self.discriminant != 0 and self.j == self.t


@dataclass
class JReport:
    q: int
    rows: list[JRow]

    @property
    def ok(self) -> bool:
        return bool(self.rows) and all(r.ok for r in self.rows)

    @property
    def failures(self) -> list[int]:
        return [r.t for r in self.rows if not r.ok]


def weierstrass_j(a1, a2, a3, a4, a6, q: int) -> tuple[int, int]:
    """(discriminant, j) of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q."""
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    disc = (-b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6) % q
    if disc == 0:
        return 0, 0
    return disc, c4 ** 3 * pow(disc, -1, q) % q


def j_family_check(q: int) -> JReport:
    """Curves y^2 + xy = x^3 - 36/(t - 1728) x - 1/(t - 1728) have j = t."""
    F = require_good_field(q)
    bad = 1728 % q
    rows = []
    for t in F.elements():
        if t == 0 or t == bad:
            continue
        u = F.inv(t - 1728)
        disc, j = weierstrass_j(1, 0, 0, -36 * u % q, -u % q, q)
        rows.append(JRow(t, disc, j))
    return JReport(q, rows)
