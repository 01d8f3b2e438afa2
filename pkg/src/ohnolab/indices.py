"""Indices of multiple zeta values and the index-level operators.

An index is a plain ``tuple`` of positive integers.  ``()`` is allowed as a
value (it is the unit for the index shuffle) but is rejected by the
dualities and by :func:`minus_last`.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

from .linear import LinComb, format_coeff

Index = tuple


class IndexError_(ValueError):
    """Raised for an index outside the domain of an operator."""


def make_index(parts: Iterable[int]) -> Index:
    k = tuple(int(p) for p in parts)
    if any(p < 1 for p in k):
        raise IndexError_(f"index parts must be >= 1: {k}")
    return k


def weight(k: Sequence[int]) -> int:
    return sum(k)


def depth(k: Sequence[int]) -> int:
    return len(k)


def is_admissible(k: Sequence[int]) -> bool:
    return len(k) > 0 and k[-1] >= 2


def _require_admissible(k) -> None:
    if not is_admissible(k):
        raise IndexError_(f"admissible index required, got {tuple(k)}")


def _blocks(k: Index) -> list[tuple[int, int]]:
    """Split an admissible index into ``(a, b)`` with block ``({1}^(a-1), b+1)``."""
    blocks = []
    ones = 0
    for p in k:
        if p == 1:
            ones += 1
        else:
            blocks.append((ones + 1, p - 1))
            ones = 0
    return blocks


def dual(k: Sequence[int]) -> Index:
    """The dual index; ``zeta(k) == zeta(dual(k))``."""
    k = tuple(k)
    _require_admissible(k)
    out: list[int] = []
    for a, b in reversed(_blocks(k)):
        out.extend([1] * (b - 1))
        out.append(a + 1)
    return tuple(out)


def hoffman_dual(k: Sequence[int]) -> Index:
    """Hoffman's dual: exchanges the roles of commas and plus signs."""
    k = tuple(k)
    if not k:
        raise IndexError_("Hoffman dual of the empty index is undefined")
    # all blocks but the last end in a part >= 2; the last one ends in k[-1]
    blocks = _blocks(k[:-1] + (2,))
    a_last, _ = blocks[-1]
    blocks[-1] = (a_last, k[-1])
    out: list[int] = []
    for i, (a, b) in enumerate(blocks):
        out.append(a if i == 0 else a + 1)
        out.extend([1] * (b - 1))
    return tuple(out)


def minus_last(k: Sequence[int]) -> Index:
    k = tuple(k)
    _require_admissible(k)
    return k[:-1] + (k[-1] - 1,)


def oplus(k: Sequence[int], e: Sequence[int]) -> Index:
    """Componentwise sum of an index with a vector of non-negative integers."""
    if len(k) != len(e):
        raise IndexError_(f"length mismatch: {tuple(k)} vs {tuple(e)}")
    if any(x < 0 for x in e):
        raise IndexError_(f"shift vector must be non-negative: {tuple(e)}")
    return tuple(a + b for a, b in zip(k, e))


def weak_compositions(m: int, r: int) -> Iterator[tuple[int, ...]]:
    """All ``e`` in Z_{>=0}^r with ``|e| = m``; there are C(m+r-1, m) of them."""
    if r == 0:
        if m == 0:
            yield ()
        return
    for bars in itertools.combinations(range(m + r - 1), r - 1):
        prev = -1
        e = []
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(m + r - 2 - prev)
        yield tuple(e)


def compositions(n: int) -> Iterator[Index]:
    """All indices of weight ``n`` (no admissibility condition)."""
    if n == 0:
        yield ()
        return
    for r in range(1, n + 1):
        for e in weak_compositions(n - r, r):
            yield tuple(x + 1 for x in e)


def index_sort_key(k: Sequence[int]):
    """Basis order: by depth, then lexicographic on parts."""
    return (len(k), tuple(k))


def enumerate_admissible(n: int) -> list[Index]:
    """All admissible indices of weight ``n`` in basis order (2^(n-2) of them)."""
    if n < 2:
        raise IndexError_(f"weight must be >= 2, got {n}")
    ks = [k + (last,) for last in range(2, n + 1) for k in compositions(n - last)]
    return sorted(ks, key=index_sort_key)


def enumerate_indices(n: int) -> list[Index]:
    """All nonempty indices of weight ``n`` in basis order."""
    return sorted(compositions(n), key=index_sort_key)


def index_shuffle(k: Sequence[int], l: Sequence[int]) -> LinComb:
    """Sum of all interleavings of ``k`` and ``l`` (with multiplicity)."""
    k, l = tuple(k), tuple(l)
    n = len(k) + len(l)
    terms = []
    for pos in itertools.combinations(range(n), len(k)):
        out = [0] * n
        it_k, it_l = iter(k), iter(l)
        posset = set(pos)
        for i in range(n):
            out[i] = next(it_k) if i in posset else next(it_l)
        terms.append(tuple(out))
    return LinComb.from_keys(terms)


def shuffle_sums(a: LinComb, b: LinComb) -> LinComb:
    """Bilinear extension of :func:`index_shuffle`."""
    out = []
    for k, c in a.items():
        for l, d in b.items():
            out.extend((w, c * d * m) for w, m in index_shuffle(k, l).items())
    return LinComb(out)


def harmonic_single(k: int, l: Sequence[int]) -> LinComb:
    """Harmonic (stuffle) product of the depth-one index ``(k)`` with ``l``."""
    l = tuple(l)
    if not l:
        raise IndexError_("harmonic_single needs a nonempty right factor")
    merged = [l[:i] + (l[i] + k,) + l[i + 1:] for i in range(len(l))]
    return index_shuffle((k,), l) + LinComb.from_keys(merged)


def repeat(block: Sequence[int], n: int) -> Index:
    """``{block}^n``."""
    return tuple(block) * n


def shuffle_term_count(k: Sequence[int], l: Sequence[int]) -> int:
    return comb(len(k) + len(l), len(k))


# text formats -------------------------------------------------------------

def format_index(k: Sequence[int]) -> str:
    return ",".join(str(p) for p in k)


def parse_index(text: str) -> Index:
    text = text.strip().strip("()")
    if not text:
        return ()
    try:
        return make_index(int(p) for p in text.split(","))
    except ValueError as exc:
        raise IndexError_(f"cannot parse index {text!r}") from exc


def format_index_sum(s: LinComb) -> str:
    """Terms ``±c·(parts)`` joined by spaces, in basis order."""
    if not s:
        return "0"
    return " ".join(
        f"{format_coeff(c)}·({format_index(k)})" for k, c in s.sorted_items(key=index_sort_key)
    )


_TERM = re.compile(r"([+-])(\d+)(?:/(\d+))?·\(([\d,]*)\)")


def parse_index_sum(text: str) -> LinComb:
    text = text.strip()
    if text == "0":
        return LinComb()
    terms = []
    for tok in text.split():
        m = _TERM.fullmatch(tok)
        if m is None:
            raise IndexError_(f"cannot parse term {tok!r}")
        sign, num, den, parts = m.groups()
        c = Fraction(int(num), int(den or 1)) * (-1 if sign == "-" else 1)
        terms.append((parse_index(parts), c))
    return LinComb(terms)
