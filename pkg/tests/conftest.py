from pathlib import Path

import pytest
import sympy

from motive.lring import LClass

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
Lsym = sympy.Symbol("L")


def to_sympy(c: LClass):
    """Independent rendering of a class as a sympy rational function."""
    num = sum(a * Lsym ** i for i, a in enumerate(c.num))
    den = Lsym ** c.den.l_power
    for d, m in c.den.cyclo:
        den *= sympy.cyclotomic_poly(d, Lsym) ** m
    return sympy.cancel(num / den)


def same(a, b) -> bool:
    return sympy.simplify(a - b) == 0


@pytest.fixture
def n3_fixture_path():
    return FIXTURES / "resolution_n3.json"
