import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from motive import lring
from motive.burnside import (BurnsidePoly, MissingAssignment, all_ones, invert_qs, lambda_power,
                             lambda_powers, lambda_powers_from_marks, pushforward, qs_torus_class,
                             sigma_marks_series, symmetric_power, symmetric_power_set)
from motive.lring import L, invert
from motive.marks import GSet, group_by_name, symmetric_group

MAX_SIZE = 7


def orbit_lengths(E, H):
    """Orbits of H on E, computed directly from the element permutations."""
    seen, out = set(), []
    for x in range(E.size):
        if x in seen:
            continue
        orb, stack = {x}, [x]
        while stack:
            y = stack.pop()
            for h in H:
                z = E.element_action[h][y]
                if z not in orb:
                    orb.add(z)
                    stack.append(z)
        seen |= orb
        out.append(len(orb))
    return out


def gset_from(G, ks):
    T = G.subgroup_table
    E = None
    for k in ks:
        part = GSet.cosets(G, sorted(T.reps[k % len(T)]))
        E = part if E is None else E.disjoint_union(part)
    return E


def random_gsets(count, seed=1):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        G = group_by_name(rng.choice(["s2", "s3", "s4"]))
        T = G.subgroup_table
        ks = [rng.randrange(len(T)) for _ in range(rng.randint(1, 3))]
        if sum(len(G) // len(T.reps[k]) for k in ks) <= MAX_SIZE:
            out.append(gset_from(G, ks))
    return out


GSETS = random_gsets(50)


def expected_mark_poly(E, H):
    p = (1,)
    for w in orbit_lengths(E, H):
        p = lring.pmul(p, (-1,) + (0,) * (w - 1) + (1,))
    return p


@pytest.mark.parametrize("idx", range(len(GSETS)))
def test_qs_marks_formula(idx):
    E = GSETS[idx]
    p = qs_torus_class(E)
    for k, H in enumerate(E.group.subgroup_table.reps):
        assert p.mark_poly(k) == expected_mark_poly(E, H)


@pytest.mark.parametrize("idx", range(len(GSETS)))
def test_lambda_routes_agree(idx):
    E = GSETS[idx]
    assert lambda_powers(E, E.size) == lambda_powers_from_marks(E)


@pytest.mark.parametrize("idx", range(0, len(GSETS), 5))
def test_lambda_vanishes_above_size(idx):
    E = GSETS[idx]
    lam = lambda_powers(E, E.size + 1)
    assert lam[E.size + 1].is_zero()
    assert lam[1] == symmetric_power(E, 1)


def test_symmetric_power_sizes():
    E = GSet.natural(symmetric_group(3))
    assert [symmetric_power_set(E, i).size for i in range(5)] == [1, 3, 6, 10, 15]


def test_sigma_marks_are_fixed_multisets():
    G = symmetric_group(2)
    E = GSet.natural(G)
    # the swap fixes a^j b^(i-j) only when j = i - j
    assert sigma_marks_series(E, 0, 4) == [1, 2, 3, 4, 5]
    assert sigma_marks_series(E, 1, 4) == [1, 0, 1, 0, 1]


def test_lambda_of_natural_s2():
    G = symmetric_group(2)
    E = GSet.natural(G)
    T = G.subgroup_table
    # lambda^2 of two swapped points is the sign set: [G/e] - 1
    assert lambda_power(E, 2) == T.basis(0) - T.unit()


@pytest.mark.parametrize("idx", range(0, len(GSETS), 3))
def test_invert_qs_marks(idx):
    E = GSETS[idx]
    inv = invert_qs(E)
    for k, H in enumerate(E.group.subgroup_table.reps):
        f = lring.LClass.from_poly(expected_mark_poly(E, H))
        assert inv.mark_class(k) == invert(f)


def test_class_b_dual_n2_string():
    G = symmetric_group(2)
    E2 = GSet.natural(G)
    E1 = GSet.trivial(G, 1)
    dual = qs_torus_class(E1)
    inv = invert_qs(E2)
    assert str(inv) == "(l + [G/H0] - 1) / Phi_1^2 * Phi_2"
    from motive.burnside import LocBurnsidePoly
    from motive.lring import CycloDenom

    val = pushforward(LocBurnsidePoly(dual, CycloDenom()) * inv, all_ones(G.subgroup_table))
    assert val == L / (L ** 2 - 1)


def test_pushforward_polynomial_and_missing():
    G = symmetric_group(2)
    T = G.subgroup_table
    p = BurnsidePoly.make(T, [T.basis(0), T.unit()])
    assert pushforward(p, all_ones(T)) == L + 1
    with pytest.raises(MissingAssignment):
        pushforward(p, {1: lring.ONE})


def test_trivial_set_inverse_is_one_over_l_minus_one():
    G = symmetric_group(3)
    E = GSet.trivial(G, 1)
    assert pushforward(invert_qs(E), all_ones(G.subgroup_table)) == 1 / (L - 1)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["s2", "s3"]), st.lists(st.integers(0, 3), min_size=1, max_size=2))
def test_qs_times_inverse_pushes_to_one(name, ks):
    G = group_by_name(name)
    E = gset_from(G, ks)
    assume(E.size <= MAX_SIZE)
    from motive.burnside import LocBurnsidePoly
    from motive.lring import CycloDenom

    prod = LocBurnsidePoly(qs_torus_class(E), CycloDenom()) * invert_qs(E)
    assert pushforward(prod, all_ones(G.subgroup_table)) == lring.ONE
