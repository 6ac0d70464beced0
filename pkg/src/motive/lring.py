"""Exact arithmetic in Z[L] localized at L and at every cyclotomic polynomial.

Elements are stored as ``num / (L^a * prod Phi_d^m)`` with the denominator kept
factored.  Reduction only ever performs exact divisions by ``L`` and by the
cyclotomic factors already present in the denominator, so canonical forms are
cheap and structural equality is value equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

IntPoly = tuple  # tuple[int, ...], index i = coefficient of L^i, no trailing zeros


class NotAUnit(ArithmeticError):
    pass


class PoleAtQ(ZeroDivisionError):
    pass


# --- integer polynomials ---------------------------------------------------

def poly(coeffs: Iterable[int]) -> IntPoly:
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a: IntPoly, b: IntPoly) -> IntPoly:
    n = max(len(a), len(b))
    return poly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def pneg(a: IntPoly) -> IntPoly:
    return tuple(-x for x in a)


def psub(a: IntPoly, b: IntPoly) -> IntPoly:
    return padd(a, pneg(b))


def pmul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly(out)


def ppow(a: IntPoly, e: int) -> IntPoly:
    out: IntPoly = (1,)
    for _ in range(e):
        out = pmul(out, a)
    return out


def pdivmod_monic(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Division by a polynomial with leading coefficient +-1."""
    if not b or abs(b[-1]) != 1:
        raise ValueError("divisor must have unit leading coefficient")
    rem = list(a)
    db = len(b) - 1
    if len(rem) <= db:
        return (), poly(rem)
    quo = [0] * (len(rem) - db)
    lead = b[-1]
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] * lead  # lead is +-1, so this is rem[k] / lead
        if c:
            quo[k - db] = c
            for j, y in enumerate(b):
                rem[k - db + j] -= c * y
    return poly(quo), poly(rem)


def pexact_div(a: IntPoly, b: IntPoly) -> IntPoly | None:
    q, r = pdivmod_monic(a, b)
    return q if not r else None


def peval(a: IntPoly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly:
    """Phi_d(L), obtained from L^d - 1 by dividing out Phi_e for proper divisors e."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    num: IntPoly = poly([-1] + [0] * (d - 1) + [1])
    for e in divisors(d)[:-1]:
        q = pexact_div(num, cyclotomic(e))
        assert q is not None
        num = q
    return num


def xn_minus_1_factors(n: int) -> dict[int, int]:
    """Cyclotomic factorization of L^n - 1 as {d: 1}."""
    return {d: 1 for d in divisors(n)}


# --- factored denominators -------------------------------------------------

@dataclass(frozen=True)
class CycloDenom:
    """L^l_power * prod Phi_d^m over the sorted pairs in ``cyclo``."""

    l_power: int = 0
    cyclo: tuple[tuple[int, int], ...] = ()

    @classmethod
    def make(cls, l_power: int = 0, cyclo: Mapping[int, int] | None = None) -> "CycloDenom":
        if l_power < 0:
            raise ValueError("negative power of L in denominator")
        items = []
        for d, m in sorted((cyclo or {}).items()):
            if d < 1 or m < 0:
                raise ValueError(f"bad cyclotomic factor {d}^{m}")
            if m:
                items.append((d, m))
        return cls(l_power, tuple(items))

    @property
    def mult(self) -> dict[int, int]:
        return dict(self.cyclo)

    def is_one(self) -> bool:
        return self.l_power == 0 and not self.cyclo

    def expand(self) -> IntPoly:
        out: IntPoly = poly([0] * self.l_power + [1])
        for d, m in self.cyclo:
            out = pmul(out, ppow(cyclotomic(d), m))
        return out

    def times(self, other: "CycloDenom") -> "CycloDenom":
        m = self.mult
        for d, k in other.cyclo:
            m[d] = m.get(d, 0) + k
        return CycloDenom.make(self.l_power + other.l_power, m)

    def lcm(self, other: "CycloDenom") -> "CycloDenom":
        m = self.mult
        for d, k in other.cyclo:
            m[d] = max(m.get(d, 0), k)
        return CycloDenom.make(max(self.l_power, other.l_power), m)

    def over(self, other: "CycloDenom") -> "CycloDenom":
        """self / other, which must divide self factor by factor."""
        m = self.mult
        for d, k in other.cyclo:
            if m.get(d, 0) < k:
                raise ValueError("denominator does not divide")
            m[d] -= k
        if other.l_power > self.l_power:
            raise ValueError("denominator does not divide")
        return CycloDenom.make(self.l_power - other.l_power, m)

    def evaluate(self, q) -> int:
        return peval(self.expand(), q)

    def __str__(self) -> str:
        parts = []
        if self.l_power == 1:
            parts.append("L")
        elif self.l_power > 1:
            parts.append(f"L^{self.l_power}")
        for d, m in self.cyclo:
            parts.append(f"Phi_{d}" + (f"^{m}" if m > 1 else ""))
        return " * ".join(parts) if parts else "1"


def reduce(num: Sequence[int], den: CycloDenom) -> "LClass":
    num = poly(num)
    if not num:
        return LClass((), CycloDenom())
    a = den.l_power
    while a and num[0] == 0:
        num = num[1:]
        a -= 1
    mult = den.mult
    for d in list(mult):
        phi = cyclotomic(d)
        while mult[d]:
            q = pexact_div(num, phi)
            if q is None:
                break
            num = q
            mult[d] -= 1
    return LClass(num, CycloDenom.make(a, mult))


# --- the ring element ------------------------------------------------------

@dataclass(frozen=True)
class LClass:
    """An element of Z[L] localized at L and the cyclotomic polynomials.

    Construct through :func:`reduce` (or the helpers below); the two fields are
    expected to already satisfy the canonical-form invariants.
    """

    num: IntPoly
    den: CycloDenom = CycloDenom()

    @staticmethod
    def const(n: int) -> "LClass":
        return LClass(poly([n]))

    @staticmethod
    def from_poly(coeffs: Sequence[int]) -> "LClass":
        return LClass(poly(coeffs))

    def is_zero(self) -> bool:
        return not self.num

    def _lift(self, other) -> "LClass":
        if isinstance(other, LClass):
            return other
        if isinstance(other, int):
            return LClass.const(other)
        return NotImplemented

    def __add__(self, other) -> "LClass":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        den = self.den.lcm(other.den)
        a = pmul(self.num, den.over(self.den).expand())
        b = pmul(other.num, den.over(other.den).expand())
        return reduce(padd(a, b), den)

    __radd__ = __add__

    def __neg__(self) -> "LClass":
        return LClass(pneg(self.num), self.den)

    def __sub__(self, other) -> "LClass":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LClass":
        return (-self) + other

    def __mul__(self, other) -> "LClass":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return reduce(pmul(self.num, other.num), self.den.times(other.den))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LClass":
        if e < 0:
            return invert(self) ** (-e)
        out = ONE
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, other) -> "LClass":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * invert(other)

    def __rtruediv__(self, other) -> "LClass":
        return self._lift(other) * invert(self)

    def specialize(self, q) -> Fraction:
        return specialize(self, q)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"LClass({render(self)!r})"


ZERO = LClass(())
ONE = LClass((1,))
L = LClass((0, 1))


def lpoly(*coeffs: int) -> LClass:
    """Shorthand: lpoly(c0, c1, ...) = c0 + c1 L + ..."""
    return LClass(poly(coeffs))


def phi(d: int) -> LClass:
    return LClass(cyclotomic(d))


def invert(a: LClass) -> LClass:
    """Reciprocal, provided the numerator is +-L^k times cyclotomic factors."""
    if a.is_zero():
        raise NotAUnit("0 is not invertible")
    num = a.num
    k = 0
    while num[0] == 0:
        num = num[1:]
        k += 1
    peeled: dict[int, int] = {}
    deg = len(num) - 1
    # phi(d) >= sqrt(d/2), so any cyclotomic factor of degree <= deg has d <= 2 deg^2
    d = 1
    while deg > 0 and d <= max(2, 2 * deg * deg):
        if euler_phi(d) <= deg:
            c = cyclotomic(d)
            while True:
                q = pexact_div(num, c)
                if q is None:
                    break
                num = q
                deg = len(num) - 1
                peeled[d] = peeled.get(d, 0) + 1
        d += 1
    if num not in ((1,), (-1,)):
        raise NotAUnit(f"{render(a)} has a non-cyclotomic factor")
    sign = num[0]
    return reduce(pmul((sign,), a.den.expand()), CycloDenom.make(k, peeled))


def specialize(a: LClass, q) -> Fraction:
    den = a.den.evaluate(q)
    if den == 0:
        raise PoleAtQ(f"{render(a)} has a pole at L = {q}")
    return Fraction(peval(a.num, q)) / den


# --- text form -------------------------------------------------------------

def render_poly(p: IntPoly, var: str = "L") -> str:
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    return " ".join(terms)


def render(a: LClass) -> str:
    """e.g. ``(L^2 + L + 1) / L * Phi_1 * Phi_2``."""
    top = render_poly(a.num)
    if a.den.is_one():
        return top
    if sum(1 for c in a.num if c) > 1:
        top = f"({top})"
    return f"{top} / {a.den}"


_TERM = re.compile(r"^(\d+)?\*?(L(?:\^(\d+))?)?$")
_FACTOR = re.compile(r"^(L|Phi_(\d+))(?:\^(\d+))?$")


def _parse_poly(text: str) -> IntPoly:
    s = text.replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict[int, int] = {}
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        m = _TERM.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"cannot parse term {body!r}")
        c = int(m.group(1)) if m.group(1) else 1
        e = 0 if m.group(2) is None else int(m.group(3) or 1)
        coeffs[e] = coeffs.get(e, 0) + (c if sign == "+" else -c)
    if "".join(sign + body for sign, body in re.findall(r"([+-])([^+-]+)", s)) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    top = max(coeffs)
    return poly(coeffs.get(i, 0) for i in range(top + 1))


def parse(text: str) -> LClass:
    """Inverse of :func:`render`; the result is brought to canonical form."""
    if " / " in text:
        top, bottom = text.split(" / ", 1)
    else:
        top, bottom = text, "1"
    num = _parse_poly(top)
    a = 0
    mult: dict[int, int] = {}
    if bottom.strip() != "1":
        for factor in bottom.split("*"):
            m = _FACTOR.match(factor.strip())
            if not m:
                raise ValueError(f"cannot parse denominator factor {factor!r}")
            e = int(m.group(3) or 1)
            if m.group(1) == "L":
                a += e
            else:
                d = int(m.group(2))
                mult[d] = mult.get(d, 0) + e
    return reduce(num, CycloDenom.make(a, mult))
