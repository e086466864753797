import cmath

import numpy as np
import pytest

from sfgroups import characters as ch
from sfgroups import linalg
from sfgroups.acceptance import _multiplication_table
from sfgroups.group import SemifieldGroup, class_count
from sfgroups.semifield import make_field


def numeric(T):
    w = cmath.exp(2j * cmath.pi / T.p)
    return T.coef * np.power(w, T.expo)


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 3)])
def test_orthogonality_exact_and_numeric(p, n):
    G = SemifieldGroup(make_field(p, n))
    T = ch.character_table(G)
    assert T.first_orthogonality() and T.second_orthogonality()
    X = numeric(T)
    gram = (X * T.class_sizes) @ X.conj().T
    assert np.allclose(gram, G.order * np.eye(T.size))
    assert int(np.sum(T.degrees**2)) == G.order
    assert ch.table_row_count_matches(G, T)


def test_characters_are_class_functions_by_brute_force():
    """Sum of chi over the group, computed element by element, is 0 for nontrivial chi."""
    G = SemifieldGroup(make_field(3, 2))
    T = ch.character_table(G)
    X = numeric(T)
    E, _, _ = _multiplication_table(G)
    # map each element to its class column
    n2 = 4
    col = np.empty(E.shape[0], dtype=int)
    cent = {tuple(r[n2:]): k for k, r in enumerate(T.class_reps[:9])}
    Vcols = {tuple(r[:n2]): k for k, r in enumerate(T.class_reps) if r[:n2].any()}
    for i, e in enumerate(E):
        col[i] = Vcols[tuple(e[:n2])] if e[:n2].any() else cent[tuple(e[n2:])]
    sums = X[:, col].sum(axis=1)
    assert np.allclose(sums[1:], 0) and np.isclose(sums[0], G.order)
    assert len(set(col.tolist())) == class_count(G)


def test_counts_to_integers():
    assert ch.counts_to_integers(np.array([5, 2, 2])) == 3
    with pytest.raises(ArithmeticError):
        ch.counts_to_integers(np.array([1, 0, 2]))


def test_quotient_tables():
    F = make_field(2, 3)
    for rows in ([[1, 0, 0]], [[1, 0, 0], [0, 1, 0]]):
        G = SemifieldGroup(F, linalg.subspace_canonical(rows, 2, 3))
        T = ch.character_table(G)
        assert T.first_orthogonality() and T.second_orthogonality()
        assert T.size == G.abelianization_order + G.derived_order - 1


def test_char_tables_equal(cat27, cat16):
    G = [SemifieldGroup(S) for S in cat27.representatives]
    assert ch.char_tables_equal(G[0], G[1]).holds
    H = SemifieldGroup(make_field(3, 3), linalg.subspace_canonical([[1, 0, 0]], 3, 3))
    assert not ch.char_tables_equal(G[0], H).holds
    K = [SemifieldGroup(S) for S in cat16.representatives]
    assert ch.char_tables_equal(K[0], K[2]).holds


def test_brauer_pair(cat27):
    G = [SemifieldGroup(S) for S in cat27.representatives]
    v = ch.brauer_pair(G[0], G[1])
    assert v.holds and v.checks["non_isomorphic"]
    with pytest.raises(ValueError):
        ch.brauer_pair(G[0], G[0])
    assert not ch.brauer_pair(G[0], G[0], non_isomorphic=False).holds
    with pytest.raises(ValueError):
        ch.brauer_pair(SemifieldGroup(make_field(2, 2)), SemifieldGroup(make_field(2, 2)), True)
