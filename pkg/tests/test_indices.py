import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ohnolab.indices import (
    IndexError_,
    compositions,
    dual,
    enumerate_admissible,
    format_index,
    format_index_sum,
    harmonic_single,
    hoffman_dual,
    index_shuffle,
    is_admissible,
    minus_last,
    oplus,
    parse_index,
    parse_index_sum,
    shuffle_sums,
    weak_compositions,
)
from ohnolab.linear import LinComb


def brute_compositions(n):
    """Compositions of n from binary cut patterns (independent of compositions())."""
    out = []
    for cuts in itertools.product((0, 1), repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(tuple(parts))
    return out


def comma_plus_dual(k):
    """Hoffman dual by swapping ',' and '+' in the 1+1+... expansion of k."""
    symbols = []
    for i, p in enumerate(k):
        if i:
            symbols.append(",")
        symbols.extend(["+"] * (p - 1))
    swapped = ["+" if s == "," else "," for s in symbols]
    parts, run = [], 1
    for s in swapped:
        if s == ",":
            parts.append(run)
            run = 1
        else:
            run += 1
    parts.append(run)
    return tuple(parts)


def all_indices(max_weight):
    return [k for n in range(1, max_weight + 1) for k in brute_compositions(n)]


def admissible_upto(max_weight):
    return [k for k in all_indices(max_weight) if k[-1] >= 2]


@pytest.mark.parametrize("k, expected", [((2,), (2,)), ((3,), (1, 2)), ((1, 3, 2), (2, 1, 3))])
def test_dual_examples(k, expected):
    assert dual(k) == expected


@pytest.mark.parametrize("k, expected", [((1,), (1,)), ((2, 1), (1, 2)), ((1, 2), (2, 1))])
def test_hoffman_dual_examples(k, expected):
    assert hoffman_dual(k) == expected


def test_dual_involution_and_weight_depth():
    for k in admissible_upto(12):
        d = dual(k)
        assert dual(d) == k
        assert sum(d) == sum(k)
        assert len(k) + len(d) == sum(k)


def test_hoffman_dual_against_comma_plus_oracle():
    for k in all_indices(12):
        kv = hoffman_dual(k)
        assert kv == comma_plus_dual(k)
        assert hoffman_dual(kv) == k
        assert len(k) + len(kv) == sum(k) + 1


def test_duals_reject_bad_input():
    with pytest.raises(IndexError_):
        dual((2, 1))
    with pytest.raises(IndexError_):
        dual(())
    with pytest.raises(IndexError_):
        hoffman_dual(())
    with pytest.raises(IndexError_):
        minus_last((1,))


@pytest.mark.parametrize("k, expected", [((2,), (1,)), ((1, 3, 2), (1, 3, 1)), ((1, 1, 2), (1, 1, 1))])
def test_minus_last(k, expected):
    assert minus_last(k) == expected


def test_oplus():
    assert oplus((1, 3, 2), (0, 1, 0)) == (1, 4, 2)
    assert oplus((1, 3, 2), (0, 0, 0)) == (1, 3, 2)
    assert oplus((2,), (3,)) == (5,)
    with pytest.raises(IndexError_):
        oplus((1, 2), (1,))


def test_enumerate_admissible_small():
    assert enumerate_admissible(2) == [(2,)]
    assert enumerate_admissible(3) == [(3,), (1, 2)]
    with pytest.raises(IndexError_):
        enumerate_admissible(1)


def test_enumerate_admissible_matches_brute_force():
    for n in range(2, 17):
        got = enumerate_admissible(n)
        assert len(got) == 2 ** (n - 2)
        assert set(got) == {k for k in brute_compositions(n) if k[-1] >= 2}
        # depth first, then lexicographic
        assert got == sorted(got, key=lambda k: (len(k), k))
    assert len(enumerate_admissible(6)) == 16


def test_compositions_count():
    for n in range(1, 12):
        assert sorted(compositions(n)) == sorted(brute_compositions(n))


def test_weak_compositions():
    from math import comb
    for m in range(6):
        for r in range(1, 5):
            es = list(weak_compositions(m, r))
            assert len(es) == comb(m + r - 1, m) == len(set(es))
            assert all(sum(e) == m and len(e) == r for e in es)


def test_index_shuffle_examples():
    a, b, c = 7, 8, 9
    assert index_shuffle((a,), (b, c)) == LinComb.from_keys([(a, b, c), (b, a, c), (b, c, a)])
    assert index_shuffle((2,), ()) == LinComb.single((2,))
    assert index_shuffle((2,), (1, 2)) == LinComb({(2, 1, 2): 1, (1, 2, 2): 2})


def test_harmonic_single_examples():
    assert harmonic_single(2, (3,)) == LinComb.from_keys([(2, 3), (3, 2), (5,)])
    assert harmonic_single(1, (1, 2)) == LinComb.from_keys(
        [(1, 1, 2), (1, 1, 2), (1, 2, 1), (2, 2), (1, 3)])
    with pytest.raises(IndexError_):
        harmonic_single(2, ())


def test_harmonic_single_term_count():
    for l in all_indices(6):
        r = len(l)
        assert sum(harmonic_single(3, l).values()) == (r + 1) + r


small_index = st.lists(st.integers(1, 4), min_size=0, max_size=3).map(tuple)


@given(small_index, small_index)
def test_shuffle_commutative(k, l):
    assert index_shuffle(k, l) == index_shuffle(l, k)


@given(small_index, small_index, small_index)
def test_shuffle_associative(k, l, m):
    left = shuffle_sums(index_shuffle(k, l), LinComb.single(m))
    right = shuffle_sums(LinComb.single(k), index_shuffle(l, m))
    assert left == right


def test_text_formats_round_trip():
    assert format_index((1, 3, 2)) == "1,3,2"
    assert parse_index("1,3,2") == (1, 3, 2)
    s = LinComb({(2, 1, 2): 1, (1, 2, 2): 2, (3,): Fraction(-1, 2)})
    text = format_index_sum(s)
    assert text == "-1/2·(3) +2·(1,2,2) +1·(2,1,2)"
    assert parse_index_sum(text) == s
    assert parse_index_sum(format_index_sum(LinComb())) == LinComb()


def test_admissibility():
    assert is_admissible((1, 2))
    assert not is_admissible((2, 1))
    assert not is_admissible(())
