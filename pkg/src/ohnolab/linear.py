"""Finite formal sums with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping


class LinComb(Mapping):
    """Immutable map ``key -> Fraction`` with no zero coefficients.

    Used for formal sums of indices, of words and of zeta / Ohno symbols.
    Supports ``+``, ``-``, scalar ``*`` and equality with other combinations.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, coeff in items:
                c = acc.get(key, 0) + Fraction(coeff)
                if c:
                    acc[key] = c
                else:
                    acc.pop(key, None)
        self._terms = acc
        self._hash = None

    @classmethod
    def single(cls, key: Hashable, coeff=1) -> "LinComb":
        return cls([(key, coeff)])

    @classmethod
    def from_keys(cls, keys: Iterable[Hashable]) -> "LinComb":
        """Sum of ``keys`` with multiplicity."""
        return cls((k, 1) for k in keys)

    def __getitem__(self, key):
        return self._terms[key]

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        return LinComb(list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-1) * other

    def __neg__(self) -> "LinComb":
        return (-1) * self

    def __mul__(self, scalar) -> "LinComb":
        s = Fraction(scalar)
        return LinComb((k, c * s) for k, c in self._terms.items())

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def map_keys(self, f: Callable) -> "LinComb":
        """Apply ``f`` to every key; colliding images are merged."""
        return LinComb((f(k), c) for k, c in self._terms.items())

    def map_linear(self, f: Callable[[Hashable], "LinComb"]) -> "LinComb":
        """Extend ``f: key -> LinComb`` linearly."""
        out: list = []
        for k, c in self._terms.items():
            out.extend((kk, c * cc) for kk, cc in f(k).items())
        return LinComb(out)

    def l1_norm(self) -> Fraction:
        return sum((abs(c) for c in self._terms.values()), Fraction(0))

    def sorted_items(self, key=None) -> list:
        return sorted(self._terms.items(), key=(lambda kv: key(kv[0])) if key else None)

    def __repr__(self) -> str:
        return f"LinComb({self._terms!r})"


def sum_combs(combs: Iterable[LinComb]) -> LinComb:
    out: list = []
    for c in combs:
        out.extend(c.items())
    return LinComb(out)


def format_coeff(c: Fraction) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    return f"{sign}{a.numerator}" if a.denominator == 1 else f"{sign}{a.numerator}/{a.denominator}"
