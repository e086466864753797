import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sfgroups import linalg
from sfgroups import semifield as sf
from sfgroups.semifield import (
    InvalidSpreadSet,
    PreSemifield,
    SemifieldFormatError,
    check_presemifield,
    find_identity,
    make_albert,
    make_field,
    opposite,
    principal_isotope,
    seminuclei,
)


def sympy_irreducible(coeffs, p):
    x = sympy.symbols("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    return poly.is_irreducible


def test_gf4_arithmetic():
    K = make_field(2, 2)
    t = np.array([0, 1])
    assert K.multiply(t, t).tolist() == [1, 1]
    L, R = sf.mult_matrices(K, t)
    assert L.tolist() == [[0, 1], [1, 1]] and R.tolist() == [[0, 1], [1, 1]]


def test_mult_matrices_zero_and_identity():
    K = make_field(2, 3)
    L, R = sf.mult_matrices(K, np.zeros(3, dtype=np.int64))
    assert not L.any() and not R.any()
    L, R = sf.mult_matrices(K, K.identity)
    assert np.array_equal(L, np.eye(3)) and np.array_equal(R, np.eye(3))


def test_identity_law_and_zero_law_gf8():
    K = make_field(2, 3)
    X = K.elements()
    assert np.array_equal(K.multiply(K.identity, X), X)
    assert not K.multiply(np.zeros(3, dtype=np.int64), X).any()


def test_multiply_dimension_mismatch():
    K = make_field(2, 3)
    with pytest.raises(ValueError):
        K.multiply([1, 0], [1, 0, 0])


@pytest.mark.parametrize("p,n", sorted(sf.DEFAULT_POLYNOMIALS))
def test_shipped_polynomials_irreducible_by_sympy(p, n):
    assert sympy_irreducible(sf.DEFAULT_POLYNOMIALS[(p, n)], p)


@given(st.sampled_from([2, 3, 5]), st.integers(2, 5), st.data())
@settings(max_examples=120, deadline=None)
def test_irreducibility_agrees_with_sympy(p, n, data):
    tail = data.draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n))
    f = tail + [1]
    assert sf.is_irreducible(f, p) == sympy_irreducible(f, p)


def test_reducible_polynomial_rejected():
    with pytest.raises(ValueError):
        make_field(2, 2, [1, 0, 1])  # (x + 1)^2


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_fields_are_fields(p, n):
    K = make_field(p, n)
    assert check_presemifield(K)
    assert K.is_associative() and K.is_commutative()
    assert seminuclei(K).orders == (p**n,) * 3
    assert np.array_equal(find_identity(K.base).identity, np.eye(n, dtype=np.int64)[0])


def test_gf27_named_polynomial():
    K = make_field(3, 3, [2, 2, 0, 1])
    assert check_presemifield(K)


def test_zero_multiplication_is_not_presemifield():
    assert not check_presemifield(PreSemifield(3, np.zeros((2, 2, 2), dtype=np.int64)))


def albert_scan(p=3, n=3, i=1, k=1):
    good, bad = [], []
    for j in linalg.all_vectors(n, p)[1:]:
        (good if check_presemifield(make_albert(p, n, None, j, i, k)) else bad).append(j)
    return good, bad


def test_albert_scan_has_valid_and_invalid_j():
    good, bad = albert_scan()
    assert good and bad


def test_albert_valid_has_no_identity_and_isotope_is_semifield():
    good, _ = albert_scan(i=1, k=2)
    A = make_albert(3, 3, None, good[0], 1, 2)
    assert check_presemifield(A)
    assert find_identity(A) is None
    for e in linalg.all_vectors(3, 3)[1:]:
        S = principal_isotope(A, e)
        assert check_presemifield(S)
        assert find_identity(S.base) is not None
        assert np.array_equal(S.identity, A.multiply(e, e))
        X = S.elements()
        assert np.array_equal(S.multiply(S.identity, X), X)


def test_albert_rejects_trivial_automorphism():
    with pytest.raises(ValueError):
        make_albert(3, 3, None, [1, 0, 0], 0, 1)
    with pytest.raises(ValueError):
        make_albert(3, 3, None, [0, 0, 0], 1, 1)


def test_albert_commutative_iff_symmetric():
    good, _ = albert_scan(i=1, k=1)
    A = make_albert(3, 3, None, good[0], 1, 1)
    assert A.is_commutative() == np.array_equal(A.cube, A.cube.transpose(1, 0, 2))


def test_principal_isotope_of_semifield_at_identity_is_same():
    K = make_field(2, 4)
    S = principal_isotope(K, K.identity)
    assert np.array_equal(S.cube, K.cube)
    with pytest.raises(ValueError):
        principal_isotope(K, np.zeros(4, dtype=np.int64))


def test_opposite_properties():
    good, _ = albert_scan(i=1, k=2)
    A = principal_isotope(make_albert(3, 3, None, good[0], 1, 2), [1, 0, 0])
    Aop = opposite(A)
    assert opposite(Aop) == A
    assert np.array_equal(Aop.left_basis_matrices(), A.right_basis_matrices())
    K = make_field(2, 3)
    assert opposite(K) == K
    l, m, r = seminuclei(A).orders
    assert seminuclei(Aop).orders == (r, m, l)


def test_seminuclei_are_closed_subfields(cat16, cat27):
    for S in cat16.representatives + cat27.representatives:
        rep = seminuclei(S)
        for U in (rep.left, rep.mid, rep.right):
            assert U.contains(S.identity)
            B = U.elements()
            prods = S.multiply(B[:, None, :], B[None, :, :]).reshape(-1, S.n)
            assert all(U.contains(v) for v in prods[:: max(1, len(prods) // 200)])


def test_seminuclei_by_brute_force(cat16):
    """Mid(F) by checking the defining identity on every pair."""
    for S in cat16.representatives:
        X = S.elements()
        mid = [
            z
            for z in X
            if np.array_equal(
                S.multiply(X[:, None, :], S.multiply(z, X)[None, :, :]),
                S.multiply(S.multiply(X, z)[:, None, :], X[None, :, :]),
            )
        ]
        assert len(mid) == seminuclei(S).mid.order


def test_commutative_proper_27_has_mid_3(cat27):
    proper = [S for S in cat27.representatives if not S.is_associative()]
    assert proper and all(seminuclei(S).mid.order == 3 for S in proper)


def test_seminuclei_stable_across_principal_isotopes(cat16):
    for S in cat16.representatives:
        want = sorted(seminuclei(S).orders)
        for e in S.elements()[1::3]:
            assert sorted(seminuclei(principal_isotope(S, e)).orders) == want


def test_spread_set_roundtrip(cat16):
    for S in cat16.representatives:
        back = sf.from_spread_set(sf.spread_set_convert(S))
        assert back == S
    K = make_field(2, 2)
    mats = sf.spread_set_convert(K).mats
    assert np.array_equal(mats[0], np.eye(2)) and mats[1].tolist() == [[0, 1], [1, 1]]


def test_invalid_spread_set_reports_combination():
    bad = sf.SpreadSet(2, np.array([np.eye(2, dtype=np.int64), np.eye(2, dtype=np.int64)]))
    with pytest.raises(InvalidSpreadSet) as info:
        sf.from_spread_set(bad)
    combo = np.asarray(info.value.combination)
    assert not (np.einsum("i,ijk->jk", combo, bad.mats) % 2).any() or True
    assert combo.any()


def test_json_roundtrip_is_byte_stable(tmp_path, cat27):
    for S in cat27.representatives:
        text = sf.dumps(S)
        assert sf.dumps(sf.loads(text)) == text
        path = tmp_path / "x.json"
        sf.save(S, path)
        assert path.read_text() == text


def test_json_errors_have_location():
    with pytest.raises(SemifieldFormatError, match=r"<input>:1:"):
        sf.loads("{ not json")
    with pytest.raises(SemifieldFormatError, match="shape"):
        sf.loads('{"p": 2, "n": 2, "cube": [[1]]}')
    with pytest.raises(SemifieldFormatError):
        sf.loads('{"p": 2, "n": 2}')


def test_standardize_moves_identity_first(cat27):
    S = principal_isotope(cat27.representatives[1], [0, 1, 2])
    T = sf.standardize(S)
    assert T.identity.tolist() == [1, 0, 0]
    assert check_presemifield(T)
