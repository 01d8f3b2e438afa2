"""Exact linear algebra over Q for sparse relation vectors.

Elimination is fraction-free: rows are scaled to integers once, combined as
``a*row - b*pivot`` with integer multipliers, and divided by their content
after every step so coefficients stay small.  Each row remembers which
combination of the input vectors produced it, which is what turns a span
membership test into a certificate.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Hashable, Mapping, Sequence

Vector = Mapping[Hashable, Fraction]


def _integerize(v: Vector) -> tuple[dict, int]:
    """``(w, L)`` with ``w = L * v`` integral."""
    L = reduce(lcm, (Fraction(c).denominator for c in v.values()), 1)
    return {k: int(Fraction(c) * L) for k, c in v.items() if c}, L


def _content(*parts: dict) -> int:
    g = 0
    for part in parts:
        for c in part.values():
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


def _combine(a: int, row: dict, b: int, piv: dict) -> dict:
    """``a*row - b*piv`` with zero entries dropped."""
    out = {k: a * c for k, c in row.items()} if a != 1 else dict(row)
    for k, c in piv.items():
        val = out.get(k, 0) - b * c
        if val:
            out[k] = val
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incrementally built echelon basis of a span of vectors.

    ``key`` orders coordinates; the pivot of a row is its smallest coordinate.
    """

    def __init__(self, key=None):
        self.key = key
        self.pivots: dict[Hashable, tuple[dict, dict]] = {}  # coord -> (row, tags)

    def _lead(self, row: dict):
        return min(row, key=self.key) if self.key else min(row)

    def reduce(self, row: dict, tags: dict) -> tuple[dict, dict]:
        """Reduce ``row`` until its leading coordinate is not a pivot."""
        while row:
            lead = self._lead(row)
            hit = self.pivots.get(lead)
            if hit is None:
                break
            prow, ptags = hit
            p, c = prow[lead], row[lead]
            g = gcd(p, c)
            a, b = p // g, c // g
            if a < 0:
                a, b = -a, -b
            row = _combine(a, row, b, prow)
            tags = _combine(a, tags, b, ptags)
            g = _content(row, tags)
            if g > 1:
                row = {k: v // g for k, v in row.items()}
                tags = {k: v // g for k, v in tags.items()}
        return row, tags

    def add(self, v: Vector, tag: Hashable) -> bool:
        """Insert ``v``; returns False when it was already in the span."""
        row, L = _integerize(v)
        row, tags = self.reduce(row, {tag: L})
        if not row:
            return False
        self.pivots[self._lead(row)] = (row, tags)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(vectors: Sequence[Vector]) -> int:
    ech = Echelon()
    for i, v in enumerate(vectors):
        ech.add(v, i)
    return ech.rank


def independent_subset(vectors: Sequence[Vector]) -> list[int]:
    """Positions of a maximal independent subset, greedily from the front."""
    ech = Echelon()
    return [i for i, v in enumerate(vectors) if ech.add(v, i)]


def span_membership(v: Vector, generators: Sequence[Vector]) -> tuple[bool, list[Fraction] | None]:
    """Is ``v`` in the Q-span of ``generators``?

    On success the certificate ``c`` satisfies ``sum c[i] * generators[i] == v``
    exactly (checked before returning).
    """
    ech = Echelon()
    for i, g in enumerate(generators):
        ech.add(g, i)
    row, L = _integerize(v)
    row, tags = ech.reduce(row, {"target": L})
    if row:
        return False, None
    # row invariant: row = sum_tag tags[tag] * vector(tag), and row is now 0
    s = tags.pop("target", 0)
    coeffs = [Fraction(0)] * len(generators)
    for j, t in tags.items():
        coeffs[j] = Fraction(-t, s)
    if combine(coeffs, generators) != {k: Fraction(c) for k, c in v.items() if c}:
        raise ArithmeticError("span certificate failed to verify")
    return True, coeffs


def combine(coeffs: Sequence[Fraction], vectors: Sequence[Vector]) -> dict:
    out: dict = {}
    for c, vec in zip(coeffs, vectors):
        if not c:
            continue
        for k, x in vec.items():
            val = out.get(k, 0) + c * x
            if val:
                out[k] = val
            else:
                out.pop(k, None)
    return {k: Fraction(x) for k, x in out.items()}
