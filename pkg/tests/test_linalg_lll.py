import random
from fractions import Fraction

import numpy as np
import pytest

from ohnolab.linalg import combine, independent_subset, rank, span_membership
from ohnolab.lll import LatticeError, is_lll_reduced, lll_reduce


def as_vec(row):
    return {i: Fraction(x) for i, x in enumerate(row) if x}


def test_rank_matches_numpy():
    rng = random.Random(7)
    for _ in range(30):
        n, m = rng.randint(1, 6), rng.randint(1, 7)
        rows = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(n)]
        if rng.random() < 0.5 and n > 2:
            rows[-1] = [a - 2 * b for a, b in zip(rows[0], rows[1])]
        assert rank([as_vec(r) for r in rows]) == np.linalg.matrix_rank(np.array(rows))


def test_span_membership_certificate():
    gens = [{"a": Fraction(1), "b": Fraction(1, 2)}, {"b": Fraction(3), "c": Fraction(-1)}]
    target = {"a": Fraction(2), "b": Fraction(-2), "c": Fraction(1)}
    ok, cert = span_membership(target, gens)
    assert ok
    assert combine(cert, gens) == target
    assert cert == [Fraction(2), Fraction(-1)]
    ok, cert = span_membership({"a": Fraction(1)}, gens)
    assert not ok and cert is None


def test_zero_vector_in_any_span():
    ok, cert = span_membership({}, [{"x": Fraction(1)}])
    assert ok and cert == [Fraction(0)]


def test_independent_subset():
    vs = [{0: 1}, {1: 1}, {0: 2, 1: -1}, {2: 5}]
    assert independent_subset(vs) == [0, 1, 3]


def test_lll_recovers_integer_relation():
    # 3*x0 - 2*x1 + x2 = 0 hidden in scaled real data
    x = [1.4142135623730951, 2.718281828459045]
    x.append(-3 * x[0] + 2 * x[1])
    C = 10 ** 12
    basis = [[1 if i == j else 0 for j in range(3)] + [round(C * x[i])] for i in range(3)]
    red = lll_reduce(basis)
    assert is_lll_reduced(red)
    short = min(red, key=lambda r: sum(v * v for v in r))
    assert short[:3] in ([3, -2, 1], [-3, 2, -1])


def test_lll_random_lattices_reduced():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(2, 6)
        while True:
            b = [[rng.randint(-50, 50) for _ in range(n)] for _ in range(n)]
            if round(abs(np.linalg.det(np.array(b, dtype=float)))) != 0:
                break
        red = lll_reduce(b)
        assert is_lll_reduced(red)
        # unimodular change of basis keeps the determinant up to sign
        assert round(abs(np.linalg.det(np.array(red, dtype=float)))) == \
            round(abs(np.linalg.det(np.array(b, dtype=float))))


def test_lll_rejects_dependent_and_bad_delta():
    with pytest.raises(LatticeError):
        lll_reduce([[1, 2], [2, 4]])
    with pytest.raises(LatticeError):
        lll_reduce([[1, 0], [0, 1]], delta=Fraction(1, 5))
