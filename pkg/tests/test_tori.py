import json

import pytest

from motive import lring
from motive.burnside import all_ones, pushforward
from motive.lring import L
from motive.marks import GSet, symmetric_group
from motive.tori import (GLattice, InvalidResolution, TorusResolution, class_B_dual, class_T, fixture_n2,
                         load_resolution, norm_one_lattice, save_resolution, search_resolution,
                         theorem_b_check, verify_resolution)


def with_changes(r, **kw):
    d = dict(group=r.group, e1=r.e1, e2=r.e2, target=r.target, embed=r.embed, project=r.project)
    d.update(kw)
    return TorusResolution(**d)


def test_fixture_n2_passes():
    rep = verify_resolution(fixture_n2())
    assert rep.ok
    assert rep.passed[-1] == "equivariance"


def test_bad_projection_fails_composite():
    r = with_changes(fixture_n2(), project=[[1, 0]])
    rep = verify_resolution(r)
    assert not rep.ok and rep.failed == "composite zero"


def test_trivial_target_fails_equivariance():
    r = fixture_n2()
    r = with_changes(r, target=GLattice(r.group, 1, [[[1]]]))
    rep = verify_resolution(r)
    assert not rep.ok and rep.failed == "equivariance"


def test_non_saturated_embedding_fails():
    rep = verify_resolution(with_changes(fixture_n2(), embed=[[2], [-2]]))
    assert rep.failed == "embed injective with saturated image"


def test_glattice_rejects_non_unimodular():
    G = symmetric_group(2)
    with pytest.raises(ValueError):
        GLattice(G, 1, [[[2]]])


def test_glattice_rejects_broken_relations():
    G = symmetric_group(3)
    with pytest.raises(ValueError):
        # the transposition must square to 1
        GLattice(G, 1, [[[1]], [[-1]]])


def test_norm_one_character():
    G = symmetric_group(3)
    X = norm_one_lattice(3, G)
    nat = GSet.natural(G)
    assert X.character() == [nat.fixed_points([g]) - 1 for g in range(len(G))]


def test_class_b_dual_n2_pushforward():
    assert pushforward(class_B_dual(fixture_n2()), all_ones(symmetric_group(2).subgroup_table)) == L / (L ** 2 - 1)


def test_class_t_and_dual_are_inverse_marks():
    r = fixture_n2()
    a, b = class_B_dual(r), class_T(r)
    for k in range(len(r.group.subgroup_table)):
        assert a.mark_class(k) * b.mark_class(k) == lring.ONE


def test_identity_resolution_gives_one():
    G = symmetric_group(2)
    E = GSet.natural(G)
    r = TorusResolution(G, E, E, GLattice(G, 0, [[]]), [[], []], [[1, 0], [0, 1]])
    assert verify_resolution(r).ok
    assert pushforward(class_B_dual(r), all_ones(G.subgroup_table)) == lring.ONE


def test_theorem_b_n2():
    rep = theorem_b_check(2, fixture_n2())
    assert rep.ok and rep.actual == L ** 2 / ((L ** 2 - 1) * L)


def test_theorem_b_n3_fixture(n3_fixture_path):
    r = load_resolution(n3_fixture_path)
    assert verify_resolution(r).ok
    rep = theorem_b_check(3, r)
    assert rep.ok
    assert rep.actual == L ** 3 / ((L ** 2 - 1) * (L ** 3 - 1))


def test_theorem_b_rejects_wrong_group():
    with pytest.raises(InvalidResolution):
        theorem_b_check(3, fixture_n2())


def test_search_n2_and_n3(tmp_path):
    for n in (2, 3):
        G = symmetric_group(n)
        r = search_resolution(G, norm_one_lattice(n, G))
        assert verify_resolution(r).ok
        assert theorem_b_check(n, r).ok
        p = tmp_path / f"r{n}.json"
        save_resolution(r, p)
        assert load_resolution(p).to_json() == r.to_json()


def test_fixture_round_trip_json(n3_fixture_path):
    data = json.loads(n3_fixture_path.read_text())
    assert TorusResolution.from_json(data).to_json() == data


def test_malformed_fixture(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"group": {"degree": 2}}))
    with pytest.raises(InvalidResolution):
        load_resolution(p)
