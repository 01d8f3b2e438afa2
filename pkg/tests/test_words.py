import itertools

import pytest

from ohnolab.indices import dual, enumerate_admissible, oplus, weak_compositions
from ohnolab.linear import LinComb
from ohnolab.words import (
    WordError,
    duplex_words,
    holder_rho,
    index_of_word,
    is_duplex_word,
    left_y,
    reverse_T,
    right_x,
    s_conj,
    s_conj_inverse,
    sigma_compose_check,
    sigma_m,
    swap,
    tau,
    word_of_index,
)


def words_upto(n):
    return ["".join(p) for L in range(n + 1) for p in itertools.product("xy", repeat=L)]


def admissible_upto(w):
    return [k for n in range(2, w + 1) for k in enumerate_admissible(n)]


@pytest.mark.parametrize("k, w", [((2,), "yx"), ((1, 2), "yyx"), ((1, 3, 2), "yyxxyx")])
def test_word_of_index(k, w):
    assert word_of_index(k) == w
    assert index_of_word(w) == k


def test_index_of_word_rejects_x_start():
    with pytest.raises(WordError):
        index_of_word("xy")


def test_admissible_iff_y_x_ends():
    for k in admissible_upto(8):
        w = word_of_index(k)
        assert w[0] == "y" and w[-1] == "x"
    assert word_of_index((2, 1))[-1] == "y"


def test_tau_examples():
    assert tau("yx") == LinComb.single("yx")
    assert tau("yyx") == LinComb.single("yxx")


def test_tau_matches_dual():
    for k in admissible_upto(12):
        assert tau(word_of_index(k)) == LinComb.single(word_of_index(dual(k)))


def test_involutions_and_factorisation():
    for w in words_upto(10):
        v = LinComb.single(w)
        assert tau(tau(v)) == v
        assert reverse_T(reverse_T(v)) == v
        assert tau(v) == reverse_T(swap(v)) == swap(reverse_T(v))


def test_reverse_examples():
    assert reverse_T("yx") == LinComb.single("xy")
    assert reverse_T("yyx") == LinComb.single("xyy")
    assert reverse_T("") == LinComb.single("")


def test_sigma_examples():
    assert sigma_m(1, "yx") == LinComb.single("yxx")
    assert sigma_m(1, "yyx") == LinComb.from_keys(["yxyx", "yyxx"])
    v = LinComb({"yx": 2, "yyx": -1})
    assert sigma_m(0, v) == v


def test_sigma_equals_index_lifting():
    for k in admissible_upto(8):
        for m in range(4):
            direct = LinComb.from_keys(word_of_index(oplus(k, e))
                                       for e in weak_compositions(m, len(k)))
            assert sigma_m(m, word_of_index(k)) == direct


def test_sigma_commute_and_double_lifting():
    for k in admissible_upto(8):
        w = word_of_index(k)
        for m1 in range(4):
            for m2 in range(4):
                a = sigma_m(m1, sigma_m(m2, w))
                assert a == sigma_m(m2, sigma_m(m1, w))
                direct = LinComb.from_keys(
                    word_of_index(oplus(oplus(k, e1), e2))
                    for e1 in weak_compositions(m1, len(k))
                    for e2 in weak_compositions(m2, len(k)))
                assert a == direct


def test_is_duplex_word():
    assert is_duplex_word("yx")
    assert is_duplex_word("yyxxyx")
    assert not is_duplex_word("yxx")
    assert not is_duplex_word("yxyxx")


def test_duplex_words_enumeration():
    found = duplex_words(10)
    assert set(found) == {w for w in words_upto(10) if is_duplex_word(w)}
    assert len(found) == len(set(found))
    assert len(found) == 1 + 2 + 4 + 8 + 16


def test_duplex_family_index_shape():
    # ({2}^n0, 1, {2}^n1, 3, {2}^n2) family members are duplex
    for n0, n1, n2 in itertools.product(range(3), repeat=3):
        k = (2,) * n0 + (1,) + (2,) * n1 + (3,) + (2,) * n2
        assert is_duplex_word(word_of_index(k))
    assert is_duplex_word(word_of_index((2, 2, 2)))
    assert not is_duplex_word(word_of_index((3,)))


def test_sigma_compose_examples():
    assert sigma_compose_check(1, 1, "yx")
    assert sigma_compose_check(1, 2, "yyxxyx")
    for L in range(2, 9, 2):
        w = ("yx" * L)[:L]
        for m1 in range(4):
            for m2 in range(4):
                assert sigma_compose_check(m1, m2, w)


def test_sigma_compose_rejects_non_duplex():
    with pytest.raises(WordError):
        sigma_compose_check(1, 1, "yxx")


def test_sigma_tau_commutation_fails_off_family():
    # the identity is special to duplex words; yxx = I(3) is a witness
    w = "yxx"
    lhs = sigma_m(1, tau(sigma_m(1, tau(w))))
    rhs = tau(sigma_m(1, tau(sigma_m(1, w))))
    assert lhs != rhs


def test_letter_operators():
    assert left_y("x") == LinComb.single("yx")
    assert right_x("y") == LinComb.single("yx")
    assert s_conj("x", "yx") == LinComb.single("xy")
    v = LinComb({"yyx": 1, "xyx": 3})
    assert s_conj_inverse("x", s_conj("x", v)) == v
    with pytest.raises(WordError):
        s_conj("x", "xy")


def test_holder_rho():
    assert holder_rho("x") == "y"
    assert holder_rho("yx") == "yx"
    assert holder_rho("yxx") == "yyx"
    assert holder_rho("xy") == "xy"
    for w in words_upto(8):
        assert holder_rho(holder_rho(w)) == w
