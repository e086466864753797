import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfgroups import classify as cl
from sfgroups import linalg
from sfgroups.semifield import PreSemifield, check_presemifield, make_field, opposite, principal_isotope


def random_invertible(rng, n, p):
    while True:
        M = rng.integers(0, p, (n, n))
        if linalg.mat_rank(M, p) == n:
            return M.astype(np.int64)


def twist(F, A, B, C):
    """``u o v = C(A^-1 u * B^-1 v)``, so that ``C(x * y) = A x o B y``."""
    p, n = F.p, F.n
    Ai, Bi = linalg.mat_inverse(A, p), linalg.mat_inverse(B, p)
    eye = np.eye(n, dtype=np.int64)
    U = (Ai @ eye).T[:, None, :]
    V = (Bi @ eye).T[None, :, :]
    cube = (F.multiply(U, V) @ C.T) % p
    return PreSemifield(p, cube, "twisted")


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=15, deadline=None)
def test_random_isotope_detected_with_witness(seed):
    rng = np.random.default_rng(seed)
    F = make_field(2, 3) if seed % 2 else make_field(3, 2)
    A, B, C = (random_invertible(rng, F.n, F.p) for _ in range(3))
    F2 = twist(F, A, B, C)
    assert check_presemifield(F2)
    for method in ("spread", "exhaustive"):
        w = cl.are_isotopic(F, F2, method)
        assert w is not None and w.verify(F, F2)


def test_twisted_catalog_members_isotopic(cat16):
    rng = np.random.default_rng(5)
    for S in cat16.representatives:
        A, B, C = (random_invertible(rng, 4, 2) for _ in range(3))
        T = twist(S, A, B, C)
        assert cl.are_isotopic(S, T).verify(S, T)
        assert cl.are_isotopic(T, S).verify(T, S)


def test_distinct_classes_not_isotopic(cat16):
    reps = cat16.representatives
    for i in range(len(reps)):
        for j in range(len(reps)):
            got = cl.are_isotopic(reps[i], reps[j])
            assert (got is not None) == (i == j)
    # the oracle agrees on one proper pair
    assert cl.are_isotopic(reps[1], reps[2], "exhaustive") is None


def test_opposite_is_anti_isotopic(cat16, cat27):
    for S in cat16.representatives + cat27.representatives:
        w = cl.are_anti_isotopic(S, opposite(S))
        assert w is not None and w.direction == "anti" and w.verify(S, opposite(S))


def test_order_mismatch_rejected():
    with pytest.raises(ValueError):
        cl.are_isotopic(make_field(2, 2), make_field(2, 3))
    with pytest.raises(ValueError):
        cl.are_isotopic(make_field(2, 2), make_field(2, 2), "psychic")


def test_isotopy_is_transitive_on_isotopes(cat16):
    S = cat16.representatives[-1]
    e = S.elements()
    A, B = principal_isotope(S, e[3], e[5]), principal_isotope(S, e[9], e[2])
    assert cl.are_isotopic(S, A) and cl.are_isotopic(S, B) and cl.are_isotopic(A, B)


def conj_classes_brute(n, p, seed=0):
    """Conjugacy classes of root-free matrices by union-find under a generating set of GL."""
    codes = np.arange(p ** (n * n), dtype=np.int64)
    mats = linalg.decode(codes, n, p)
    charfree = []
    eye = np.eye(n, dtype=np.int64)
    for lam in range(p):
        charfree.append(linalg.batch_rank((mats - lam * eye) % p, p) == n)
    keep = np.all(charfree, axis=0)
    parent = np.arange(codes.size)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rng = np.random.default_rng(seed)
    gens = [random_invertible(rng, n, p) for _ in range(6)]
    for g in gens:
        gi = linalg.mat_inverse(g, p)
        img = linalg.encode(np.einsum("ij,mjk,kl->mil", g, mats, gi) % p, p)
        for a, b in zip(codes[keep], img[keep]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    return len({find(c) for c in codes[keep]})


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_rational_canonical_reps_count(n, p):
    reps = cl.rational_canonical_reps(n, p)
    assert len(reps) == conj_classes_brute(n, p)
    eye = np.eye(n, dtype=np.int64)
    for R in reps:
        assert all(linalg.mat_rank((R - lam * eye) % p, p) == n for lam in range(p))


def test_centralizer_commutes():
    R = cl.rational_canonical_reps(4, 2)[0]
    C = cl.centralizer(R, 2)
    assert all(np.array_equal((c @ R) % 2, (R @ c) % 2) for c in C)


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 3)])
def test_search_leaves_are_spread_sets(p, n):
    leaves, stats = cl.spread_set_search(p, n)
    assert stats["complete"] and leaves
    table = linalg.invertibility_table(n, p)
    for basis in leaves:
        span = linalg.span_elements(basis, p).reshape(-1, n, n)
        codes = linalg.encode(span, p)
        assert table[codes[1:]].all() or table[codes[codes != 0]].all()


def test_partition_prefilter_and_oracle_agree_on_order8():
    leaves, _ = cl.spread_set_search(2, 3)
    from sfgroups.semifield import semifield_from_matrix_space

    cands = [semifield_from_matrix_space(b, 2) for b in leaves]
    ref = cl.partition_classes(cands, "exhaustive")
    assert cl.partition_classes(cands, "spread") == ref
    assert cl.partition_classes(cands, "spread", prefilter=True) == ref


@pytest.mark.slow
def test_partition_prefilter_and_oracle_agree_on_order16():
    """Prefilter by seminuclei and graph dimension loses no merges at order 16."""
    from sfgroups.semifield import semifield_from_matrix_space

    leaves, _ = cl.spread_set_search(2, 4)
    cands = [semifield_from_matrix_space(b, 2) for b in leaves]
    iso_s, m_s = cl.partition_classes(cands, "spread")
    assert (iso_s, m_s) == cl.partition_classes(cands, "spread", prefilter=True)
    assert len(iso_s) == 3 and len(m_s) == 3


def test_isotopy_invariants_are_invariant(cat16):
    rng = np.random.default_rng(2)
    for S in cat16.representatives:
        A, B, C = (random_invertible(rng, 4, 2) for _ in range(3))
        T = cl._semifield_with_maps(twist(S, A, B, C))[0]
        assert cl.isotopy_invariants(T) == cl.isotopy_invariants(S)


def test_commutative_detection(cat16, cat27):
    assert [cl.isotopic_to_commutative(S) for S in cat27.representatives] == [True, True]
    flags = [cl.isotopic_to_commutative(S) for S in cat16.representatives]
    assert sorted(flags) == [False, False, True]


@pytest.mark.parametrize("p,n,want", [(2, 2, (1, 1, 1)), (3, 2, (1, 1, 1)), (2, 3, (1, 1, 1)), (3, 3, (2, 2, 2))])
def test_small_enumerations(p, n, want):
    rep = cl.enumerate_semifields(p, n)
    assert rep.complete and rep.counts() == want
    assert rep.representatives[0].is_associative()
    assert [S.label for S in rep.representatives] == [f"sf_p{p}_n{n}_{k}" for k in range(len(rep.representatives))]


def test_order16_counts(cat16):
    assert cat16.counts() == (3, 3, 1)
    assert cat16.complete


def test_enumeration_deterministic(cat27):
    again = cl.enumerate_semifields(3, 3)
    assert [S.cube.tolist() for S in again.representatives] == [S.cube.tolist() for S in cat27.representatives]
    assert cl.catalog_index(again) == cl.catalog_index(cat27)


def test_unsupported_orders():
    with pytest.raises(ValueError, match="long-run"):
        cl.check_supported(2, 5)
    cl.check_supported(2, 5, long_run=True)
    with pytest.raises(ValueError, match="not supported"):
        cl.check_supported(5, 4, long_run=True)
    with pytest.raises(ValueError):
        cl.enumerate_semifields(2, 6)


def test_tiny_budget_reports_incomplete():
    rep = cl.enumerate_semifields(2, 4, budget_secs=1e-6)
    assert not rep.complete


def test_catalog_roundtrip_and_corruption(tmp_path, cat27):
    path = cl.write_catalog(cat27, tmp_path)
    index, reps = cl.read_catalog(path)
    assert index["isotopism_class_count"] == 2
    assert [S.cube.tolist() for S in reps] == [S.cube.tolist() for S in cat27.representatives]
    idx = json.loads((path / "index.json").read_text())
    idx["isotopism_class_count"] = 7
    (path / "index.json").write_text(json.dumps(idx))
    with pytest.raises(cl.CatalogError):
        cl.read_catalog(path)
    (path / "index.json").write_text("{")
    with pytest.raises(cl.CatalogError):
        cl.read_catalog(path)


def test_discarded_candidates_are_isotopic_to_a_representative(cat16):
    from sfgroups.semifield import semifield_from_matrix_space

    leaves, _ = cl.spread_set_search(2, 4)
    rng = np.random.default_rng(0)
    for k in rng.choice(len(leaves), size=8, replace=False):
        F = semifield_from_matrix_space(leaves[k], 2)
        hits = [cl.are_isotopic(F, S) is not None for S in cat16.representatives]
        assert sum(hits) == 1


def test_partition_small_catalogs(cat16):
    S = cat16.representatives[1]
    assert cl.partition_classes([S]) == ([[0]], [[0]])
    iso, merged = cl.partition_classes([S, opposite(S)])
    assert len(iso) in (1, 2) and merged == [[0, 1]]
    K = make_field(2, 4)
    assert cl.are_anti_isotopic(K, K).direction == "anti"
    with pytest.raises(ValueError):
        cl.partition_classes([S], method="nope")


def test_spread_profile_is_isotopy_invariant(cat16):
    rng = np.random.default_rng(4)
    keys = [cl.spread_profile(S).key for S in cat16.representatives]
    assert len(set(keys)) == 3
    for S, key in zip(cat16.representatives, keys):
        A, B, C = (random_invertible(rng, 4, 2) for _ in range(3))
        T = cl._semifield_with_maps(twist(S, A, B, C))[0]
        assert cl.spread_profile(T).key == key
