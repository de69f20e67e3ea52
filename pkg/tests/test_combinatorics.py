import pytest
from hypothesis import given, settings, strategies as st

from polyrep.combinatorics import (NonzeroFirstColumn, PrefixMatrix, SetFamily, bit_changes,
                                   check_I, check_I_fast, check_I_prime, check_J, check_J_fast,
                                   check_J_prime, check_J_prime_rows, check_K, check_K_prime,
                                   covers_all, from_prefix, simplify_family, staircase, to_prefix)

REFLECTED3 = [[1, 3, 5, 7], [2, 6], [4]]


def fam(m, sets):
    return SetFamily.from_sets(m, sets)


def naive_I(m, sets):
    return all(any(len(set(S) & set(range(a, b + 1))) % 2 for S in sets)
               for a in range(1, m + 1) for b in range(a, m + 1))


def naive_J(m, sets):
    return all(any(len(set(S) & set(range(a, b + 1))) % 2 and a - 1 not in S and b + 1 not in S
                   for S in sets)
               for a in range(1, m + 1) for b in range(a, m + 1))


@st.composite
def families(draw, max_m=8, max_n=5):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(0, max_n))
    sets = [sorted(draw(st.sets(st.integers(1, m)))) for _ in range(n)]
    return m, sets


def test_check_I_examples():
    assert check_I(fam(2, [[1], [1, 2]])) is None
    assert check_I(fam(2, [[1, 2]])) == (1, 2)
    assert check_I(staircase(5)) is None


def test_check_J_examples():
    assert check_J(fam(2, [[1], [1, 2]])) == (2, 2)
    assert check_J(staircase(5)) is None
    assert check_J(fam(1, [[1]])) is None


def test_check_K_examples():
    F = fam(7, REFLECTED3)
    assert check_K(F, 4) is None
    assert check_K(F, 3) == 1
    assert check_K(SetFamily(3, ()), 1) is None


def test_to_prefix_examples():
    assert to_prefix(fam(2, [[1], [1, 2]])).rows == ((0, 1, 1), (0, 1, 0))
    assert to_prefix(fam(3, [[2]])).rows == ((0, 0, 1, 1),)
    M = to_prefix(SetFamily(1, ()))
    assert M.n == 0 and M.m == 1 and M.rows == ()


def test_from_prefix_examples():
    M = PrefixMatrix(2, 2, ((0, 1, 1), (0, 1, 0)))
    assert from_prefix(M).members == [(1,), (1, 2)]
    assert from_prefix(PrefixMatrix(2, 3, ((0,) * 4,) * 2)).members == [(), ()]
    stair = PrefixMatrix(3, 3, tuple(tuple(int(j >= i) for j in range(4)) for i in range(1, 4)))
    assert from_prefix(stair).members == [(1,), (2,), (3,)]
    with pytest.raises(NonzeroFirstColumn):
        from_prefix(PrefixMatrix(1, 1, ((1, 0),)))


def test_repeated_column_fails_I_prime():
    M = PrefixMatrix.from_strings(["0110", "0010"])
    assert not check_I_prime(M)


def test_simplify_family():
    assert simplify_family(2, [[1, 1, 2]]).members == [(2,)]
    assert simplify_family(2, [[1, 2]]).members == [(1, 2)]
    assert simplify_family(2, [[1, 1], [1]]).members == [(1,)]


def test_covers_all():
    assert covers_all(fam(7, REFLECTED3))
    assert not covers_all(fam(2, [[1]]))


def test_from_sets_rejects_bad_members():
    with pytest.raises(ValueError):
        fam(3, [[1, 1]])
    with pytest.raises(ValueError):
        fam(3, [[4]])


def test_json_round_trip():
    F = fam(7, REFLECTED3)
    assert SetFamily.from_json(F.to_json()) == F


@settings(max_examples=300, deadline=None)
@given(families())
def test_direct_checks_match_naive(data):
    m, sets = data
    F = fam(m, sets)
    assert (check_I(F) is None) == naive_I(m, sets)
    assert (check_J(F) is None) == naive_J(m, sets)
    assert check_I_fast(F) == check_I(F)
    assert check_J_fast(F) == check_J(F)


@settings(max_examples=300, deadline=None)
@given(families(), st.integers(1, 8))
def test_prefix_equivalences(data, k):
    m, sets = data
    F = fam(m, sets)
    M = to_prefix(F)
    assert from_prefix(M) == F
    assert check_I_prime(M) == (check_I(F) is None)
    assert check_J_prime(M) == (check_J(F) is None)
    assert check_J_prime_rows(M) == check_J_prime(M)
    assert check_K_prime(M, k) == (check_K(F, k) is None)
    assert bit_changes(M) == [len(S) for S in sets]


def test_strings_round_trip():
    M = to_prefix(fam(7, REFLECTED3))
    assert PrefixMatrix.from_strings(M.to_strings()) == M
