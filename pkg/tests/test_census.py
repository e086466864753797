import numpy as np
import pytest

from sfgroups import census as cs
from sfgroups import linalg
from sfgroups.acceptance import _multiplication_table
from sfgroups.group import SemifieldGroup
from sfgroups.semifield import make_field, principal_isotope, seminuclei


def brute_census(G):
    """Count n-dim W whose preimage is abelian, using only the multiplication table."""
    E, T, idx = _multiplication_table(G)
    n2 = 2 * G.n
    C = G.center_elements()
    count = 0
    for W in linalg.all_subspaces(n2, G.p):
        if W.dim != G.n:
            continue
        pts = W.elements()
        X = np.concatenate([np.repeat(pts, C.shape[0], 0), np.tile(C, (pts.shape[0], 1))], axis=1)
        ids = idx(X)
        sub = T[np.ix_(ids, ids)]
        count += bool(np.array_equal(sub, sub.T))
    return count


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2)])
def test_census_against_table_oracle(p, n):
    G = SemifieldGroup(make_field(p, n))
    c = cs.abelian_census(G, "enumerate")
    assert c.count == brute_census(G) == p**n + 1
    assert c.candidates == linalg.gaussian_binomial(2 * n, n, p)


def test_gf8_census():
    c = cs.abelian_census(SemifieldGroup(make_field(2, 3)), "enumerate")
    assert c.count == 9 and c.h == 3
    assert c.intersection_profile == {0: 36}


def test_graph_and_enumerate_agree(cat16, cat27):
    for S in cat16.representatives + cat27.representatives:
        G = SemifieldGroup(S)
        a = cs.abelian_census(G, "enumerate")
        b = cs.abelian_census(G, "graph")
        assert a.subspaces == b.subspaces
        assert a.intersection_profile == b.intersection_profile


def test_proper_order16_census_is_two(cat16):
    counts = sorted(cs.abelian_census(SemifieldGroup(S)).count for S in cat16.representatives)
    assert counts == [2, 2, 17]


def test_census_invariant_under_principal_isotopy(cat27):
    for S in cat27.representatives:
        want = cs.abelian_census(SemifieldGroup(S), "graph").count
        for e in S.elements()[1::7]:
            assert cs.abelian_census(SemifieldGroup(principal_isotope(S, e)), "graph").count == want


def test_commutative_27_census_is_one_plus_mid(cat27):
    for S in cat27.representatives:
        c = cs.abelian_census(SemifieldGroup(S)).count
        assert c == 1 + seminuclei(S).mid.order


def test_graph_method_rejects_quotient():
    F = make_field(2, 3)
    G = SemifieldGroup(F, linalg.subspace_canonical([[1, 0, 0]], 2, 3))
    with pytest.raises(ValueError):
        cs.abelian_census(G, "graph")
    with pytest.raises(ValueError):
        cs.abelian_census(G, "bogus")
    assert cs.abelian_census(G).method == "enumerate"


def test_census_relative_and_hiranime():
    G = SemifieldGroup(make_field(2, 3))
    c = cs.abelian_census(G)
    assert all(cs.census_relative(G, c, i) == 8 for i in range(c.count))
    for A in c.subspaces[:3]:
        for B in c.subspaces[:3]:
            assert cs.check_hiranime_criterion(G, A, B)
    with pytest.raises(ValueError):
        cs.census_relative(G, c, linalg.subspace_canonical(np.eye(6, dtype=np.int64)[[0, 1, 3]], 2, 6))


def test_relative_count_nonfield(cat16):
    for S in cat16.representatives:
        G = SemifieldGroup(S)
        c = cs.abelian_census(G)
        for i in range(c.count):
            assert cs.is_power_of(cs.census_relative(G, c, i), 2)


def test_is_power_of():
    assert cs.is_power_of(1, 3) and cs.is_power_of(27, 3)
    assert not cs.is_power_of(6, 2) and not cs.is_power_of(0, 2)


def test_zv_analysis_order27(cat27):
    for S in cat27.representatives:
        z = cs.zv_analysis(SemifieldGroup(S))
        assert z.holds
        assert z.m % 3**z.r == 1 % 3**z.r


def test_zv_field_members_are_census():
    F = make_field(3, 2)
    G = SemifieldGroup(F)
    z = cs.zv_analysis(G)
    c = cs.abelian_census(G)
    assert z.r == 2 and z.m == c.count == 10
    assert sorted(S.rows for S, _ in z.members) == [S.rows for S in c.subspaces]


def test_zv_rejects_bad_inputs():
    with pytest.raises(ValueError):
        cs.zv_analysis(SemifieldGroup(make_field(2, 2)))


def test_census_json():
    c = cs.abelian_census(SemifieldGroup(make_field(3, 2)))
    obj = c.to_json_obj()
    assert obj["count"] == 10 and obj["h"] == 2 and obj["intersections"] == [[0, 45]]
