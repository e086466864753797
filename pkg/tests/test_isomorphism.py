import pytest

from sfgroups import isomorphism as iso
from sfgroups.acceptance import noncommutative_order8
from sfgroups.group import SemifieldGroup
from sfgroups.semifield import check_presemifield, make_field, opposite


def test_semifield_route_on_order16(cat16):
    reps = cat16.representatives
    for i, F in enumerate(reps):
        for j, H in enumerate(reps):
            assert iso.groups_isomorphic_semifield(F, H).holds == (i == j)
        assert iso.groups_isomorphic_semifield(F, opposite(F)).holds


def test_brute_force_small():
    G = SemifieldGroup(make_field(2, 2))
    v = iso.brute_force_isomorphic(G, G)
    assert v.holds and v.images.shape == (4, 6)
    assert not iso.brute_force_isomorphic(SemifieldGroup(make_field(2, 1)), G).holds
    # D8 versus the Heisenberg group of order 27
    assert not iso.brute_force_isomorphic(SemifieldGroup(make_field(2, 1)), SemifieldGroup(make_field(3, 1))).holds


def test_brute_force_rejects_big_groups():
    with pytest.raises(ValueError):
        iso.brute_force_isomorphic(SemifieldGroup(make_field(2, 4)), SemifieldGroup(make_field(2, 4)))


def test_brute_force_opposite_order512():
    F = noncommutative_order8()
    assert check_presemifield(F) and not F.is_commutative()
    v = iso.brute_force_isomorphic(SemifieldGroup(F), SemifieldGroup(opposite(F)))
    assert v.holds
    assert iso.groups_isomorphic_semifield(F, opposite(F)).holds


def test_brute_force_quotients_of_gf8():
    from sfgroups import linalg

    F = make_field(2, 3)
    A = SemifieldGroup(F, linalg.subspace_canonical([[1, 0, 0]], 2, 3))
    B = SemifieldGroup(noncommutative_order8(), linalg.subspace_canonical([[0, 1, 1]], 2, 3))
    v = iso.brute_force_isomorphic(A, B)
    assert v.holds and v.images.shape == (6, 9)
