"""LLL reduction of integer lattices in exact integer arithmetic.

This is the integral variant (Cohen, *A Course in Computational Algebraic
Number Theory*, Algorithm 2.6.7): the Gram-Schmidt data is kept as the
integers ``d_i`` and ``lambda_ij = d_j mu_ij``, so no rationals or floats
appear and the result does not depend on the platform.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class LatticeError(ValueError):
    pass


def _dot(u: list[int], v: list[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(99, 100)) -> list[list[int]]:
    """LLL-reduce the rows of ``basis`` (which must be linearly independent)."""
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta <= 1:
        raise LatticeError("delta must lie in (1/4, 1]")
    b = [[int(x) for x in row] for row in basis]
    n = len(b)
    if n <= 1:
        return b
    dp, dq = delta.numerator, delta.denominator

    # 1-based bookkeeping: d[0] = 1, d[i] = Gram determinant of b_1..b_i
    d = [1] + [0] * n
    lam = [[0] * (n + 1) for _ in range(n + 1)]

    def B(i):
        return b[i - 1]

    def redi(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l]:
            q = (2 * lam[k][l] + d[l]) // (2 * d[l])
            bk, bl = B(k), B(l)
            for t in range(len(bk)):
                bk[t] -= q * bl[t]
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swapi(k: int, kmax: int) -> None:
        b[k - 1], b[k - 2] = b[k - 2], b[k - 1]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        Bn = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lm * t) // d[k - 1]
            lam[i][k - 1] = (Bn * t + lm * lam[i][k]) // d[k]
        d[k - 1] = Bn

    d[1] = _dot(B(1), B(1))
    if d[1] == 0:
        raise LatticeError("basis vectors are linearly dependent")
    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = _dot(B(k), B(j))
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    d[k] = u
            if d[k] == 0:
                raise LatticeError("basis vectors are linearly dependent")
        redi(k, k - 1)
        lm = lam[k][k - 1]
        if dq * d[k] * d[k - 2] < dp * d[k - 1] ** 2 - dq * lm * lm:
            swapi(k, kmax)
            k = max(2, k - 1)
        else:
            for l in range(k - 2, 0, -1):
                redi(k, l)
            k += 1
    return b


def is_lll_reduced(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(99, 100)) -> bool:
    """Check size reduction and the Lovász condition with exact rationals."""
    b = [[Fraction(x) for x in row] for row in basis]
    n = len(b)
    bstar: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = list(b[i])
        for j in range(i):
            mu[i][j] = sum(x * y for x, y in zip(b[i], bstar[j])) / norms[j]
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(sum(x * x for x in v))
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for i in range(1, n):
        if norms[i] < (Fraction(delta) - mu[i][i - 1] ** 2) * norms[i - 1]:
            return False
    return True
