"""Ohno sums and the generators of relations among them.

Two levels of formal objects appear here, both stored as
:class:`~ohnolab.linear.LinComb` keyed by admissible indices:

* a *zeta combination* ``sum c_k zeta(k)`` (all terms of one weight);
* an *Ohno-symbol combination* ``sum c_k O(k)``, a power-series identity that
  is checked one coefficient at a time with :func:`expand_symbols`.

Every ``gen_*`` function returns the zeta combination ``LHS - RHS`` at a
given Ohno coefficient, which is expected to evaluate to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .indices import (
    IndexError_,
    dual,
    index_shuffle,
    is_admissible,
    oplus,
    repeat,
    weak_compositions,
)
from .linear import LinComb
from .words import index_of_word, is_duplex_word, sigma_m, word_of_index


class RelationError(ValueError):
    pass


def combo_weight(c: LinComb) -> int | None:
    ws = {sum(k) for k in c}
    if len(ws) > 1:
        raise RelationError(f"mixed weights {sorted(ws)}")
    return ws.pop() if ws else None


def _check_admissible(k) -> tuple:
    k = tuple(k)
    if not is_admissible(k):
        raise IndexError_(f"admissible index required, got {k}")
    return k


# Ohno sums -----------------------------------------------------------------

def ohno_expand(k: Sequence[int], m: int) -> LinComb:
    """``O_m(k) = sum_{|e|=m} zeta(k + e)`` as a formal zeta combination."""
    k = _check_admissible(k)
    if m < 0:
        raise RelationError("m must be >= 0")
    return LinComb.from_keys(oplus(k, e) for e in weak_compositions(m, len(k)))


def ohno_expand_words(k: Sequence[int], m: int) -> LinComb:
    """Same as :func:`ohno_expand`, computed as ``sigma_m(I(k))`` on words."""
    k = _check_admissible(k)
    return sigma_m(m, word_of_index(k)).map_keys(index_of_word)


def expand_symbols(symbols: LinComb, m: int) -> LinComb:
    """The coefficient of ``X^m`` of ``sum c_k O(k)``."""
    return symbols.map_linear(lambda k: ohno_expand(k, m))


def ohno_symbol(k) -> LinComb:
    return LinComb.single(_check_admissible(k))


# Ohno's relation -------------------------------------------------------------

def ohno_symbols(k) -> LinComb:
    """``O(k) - O(k^dagger)``."""
    k = _check_admissible(k)
    return LinComb([(k, 1), (dual(k), -1)])


def gen_ohno(k, m: int) -> LinComb:
    return expand_symbols(ohno_symbols(k), m)


# double Ohno relation --------------------------------------------------------

def is_duplex_index(k) -> bool:
    return len(k) > 0 and is_duplex_word(word_of_index(k))


def _check_duplex(k) -> tuple:
    k = _check_admissible(k)
    if not is_duplex_index(k):
        raise RelationError(f"{k} is not in the ({{2}}^n0,1,{{2}}^n1,3,...) family")
    return k


def _double_lift(k: tuple, m1: int, m2: int) -> LinComb:
    terms = []
    for e1 in weak_compositions(m1, len(k)):
        base = oplus(k, e1)
        terms.extend(oplus(base, e2) for e2 in weak_compositions(m2, len(k)))
    return LinComb.from_keys(terms)


def gen_double_ohno(k, m1: int, m2: int) -> LinComb:
    """Double Ohno relation at the split ``(m1, m2)``."""
    k = _check_duplex(k)
    return _double_lift(k, m1, m2) - _double_lift(dual(k), m1, m2)


def double_ohno_symbols(k, m: int) -> LinComb:
    """``sum_{|e|=m} O(k+e) - sum_{|e'|=m} O(k^dagger+e')``."""
    k = _check_duplex(k)
    return ohno_expand(k, m) - ohno_expand(dual(k), m)


# F and D ---------------------------------------------------------------------

def _as_index_sum(k) -> LinComb:
    if isinstance(k, LinComb):
        for term in k:
            _check_admissible(term)
        return k
    return ohno_symbol(k)


def F_symbols(s: int, k) -> LinComb:
    """``F(s; k) = O((s) sha k) - O((s) sha k^dagger)``, linear in ``k``."""
    if s < 2:
        raise RelationError("F(s; k) needs s >= 2")
    ks = _as_index_sum(k)
    return ks.map_linear(lambda l: index_shuffle((s,), l) - index_shuffle((s,), dual(l)))


def F_m(s: int, k, m: int) -> LinComb:
    return expand_symbols(F_symbols(s, k), m)


def D_symbols(s: int, t: int) -> LinComb:
    if s < 2 or t < 2:
        raise RelationError("D(s, t) needs s, t >= 2")
    return F_symbols(s, (t + 1,)) - F_symbols(t, (s + 1,))


def gen_D(s: int, t: int, m: int) -> LinComb:
    """``D_m(s, t) = F_m(s; (t+1)) - F_m(t; (s+1))``."""
    return expand_symbols(D_symbols(s, t), m)


def lemma_fm_rhs(s: int, t: int, m: int) -> LinComb:
    """Closed expression for ``F_m(s; (t+1))`` obtained from the harmonic product."""
    if s < 2 or t < 1 or m < 0:
        raise RelationError("needs s >= 2, t >= 1, m >= 0")
    out = LinComb.single((s + t + 1 + m,), -(m + 1))
    for m1 in range(m + 1):
        m2 = m - m1
        for i in range(t - 1):
            k = repeat((1,), i) + (s + m1 + 1,) + repeat((1,), t - 2 - i) + (2,)
            out = out + ohno_expand(k, m2)
        out = out + ohno_expand(repeat((1,), t - 1) + (s + m1 + 2,), m2)
    return out


def lemma_harmonic_rhs(s: int, t: int, m1: int, e: Sequence[int]) -> LinComb:
    """Right side of the expansion of ``(s+m1) * ((t+1)^dagger + e)``."""
    base = oplus(dual((t + 1,)), e)
    out = index_shuffle((s + m1,), base)
    for i in range(t - 1):
        k = repeat((1,), i) + (s + m1 + 1,) + repeat((1,), t - 2 - i) + (2,)
        out = out + LinComb.single(oplus(k, e))
    return out + LinComb.single(oplus(repeat((1,), t - 1) + (s + m1 + 2,), e))


# the relations written out in the introduction ---------------------------------

EQ_1_1 = LinComb({(1, 2, 3): 1, (1, 3, 2): 1, (3, 1, 2): 1, (2, 4): -1, (3, 3): -3})
EQ_1_2 = LinComb({(1, 2, 4): 1, (1, 4, 2): 1, (4, 1, 2): 1, (2, 5): -1, (3, 4): -2, (4, 3): -2})
EQ_1_3 = LinComb({(2, 3, 2): 1, (1, 4, 2): 1, (1, 3, 3): 1,
                  (3, 1, 3): -1, (2, 2, 3): -1, (2, 1, 4): -1})

NAMED_RELATIONS = {"eq1.1": EQ_1_1, "eq1.2": EQ_1_2, "eq1.3": EQ_1_3}


# conjectural families ----------------------------------------------------------

def _bounded_compositions(total: int, lower: Sequence[int]):
    """Tuples ``a`` with ``sum(a) == total`` and ``a[i] >= lower[i]``."""
    free = total - sum(lower)
    if free < 0:
        return
    for e in weak_compositions(free, len(lower)):
        yield tuple(x + lo for x, lo in zip(e, lower))


def _pairs(total: int, amin: int, bmin: int):
    return _bounded_compositions(total, (amin, bmin))


def conj41_symbols(s: int, m: int, n: int) -> LinComb:
    if s < 2 or m < 0 or n < 0:
        raise RelationError("conj4.1 needs s >= 2 and m, n >= 0")
    two = lambda c: repeat((2,), c)
    lhs = (index_shuffle((s,), two(m) + (1,) + two(n + 1))
           - index_shuffle((s,), two(n) + (3,) + two(m)))
    rhs = []
    for a, b in _pairs(s + 3, 2, 3):
        for i in range(m + 1):
            rhs.append((two(i) + (a,) + two(n) + (b,) + two(m - i), 1))
        for i in range(m):
            rhs.append((two(i) + (a,) + two(n + 1) + (b,) + two(m - 1 - i), -1))
    return lhs - LinComb(rhs)


def conj42_symbols(s: int, n: int) -> LinComb:
    if s < 3 or n < 0:
        raise RelationError("conj4.2 needs s >= 3 and n >= 0")
    lhs = index_shuffle((s,), repeat((3,), n))
    rhs = []
    onetwo = lambda c: repeat((1, 2), c)
    for j in range(n + 1):
        sign = (-1) ** j
        for i in range(n - j + 1):
            kk = n - j - i
            for a in _bounded_compositions(s + 3 * j, (2,) * j + (3,)):
                rhs.append((onetwo(i) + a + onetwo(kk), sign))
        for i in range(n - j):
            kk = n - 1 - j - i
            for a in _bounded_compositions(s + 3 * j, (2,) * (j + 1)):
                rhs.append((onetwo(i) + (1,) + a + (2,) + onetwo(kk), sign))
    return lhs - LinComb(rhs)


def conj43_symbols(s: int) -> LinComb:
    if s < 2:
        raise RelationError("conj4.3 needs s >= 2")
    lhs = index_shuffle((s,), (1, 1, 3)) - index_shuffle((s,), (1, 4))
    rhs = [((a, b, 2), -1) for a, b in _pairs(s + 3, 1, 3)]
    rhs += [((a, 1, b), 1) for a, b in _pairs(s + 4, 2, 3)]
    rhs += [((a, b, 3), 1) for a, b in _pairs(s + 2, 2, 2)]
    return lhs - LinComb(rhs)


def conj44_symbols(s: int) -> LinComb:
    if s < 2:
        raise RelationError("conj4.4 needs s >= 2")
    lhs = index_shuffle((s,), (4, 2)) - index_shuffle((s,), (2, 1, 1, 2))
    rhs = [((a, b, 2, 2), 1) for a, b in _pairs(s + 2, 1, 1)]
    rhs += [((a, 2, b, 2), -1) for a, b in _pairs(s + 2, 2, 2)]
    rhs += [((2, a, 1, b), -1) for a, b in _pairs(s + 3, 2, 2)]
    rhs += [((a, b, 1, 2), -1) for a, b in _pairs(s + 3, 2, 3)]
    rhs += [((a, 1, 2, b), 1) for a, b in _pairs(s + 3, 3, 2)]
    rhs += [((a, b, 2), -1) for a, b in _pairs(s + 4, 2, 3)]
    rhs += [((3, 2, s + 1), 1), ((s + 1, 2, 3), -1)]
    return lhs - LinComb(rhs)


def conj45_symbols(s: int, t: int, m: int) -> LinComb:
    if s < 2 or t < 2 or m < 0:
        raise RelationError("conj4.5 needs s, t >= 2 and m >= 0")
    twos = repeat((2,), m)
    return (F_symbols(s, index_shuffle(twos, (t + 1,)))
            - F_symbols(t, index_shuffle(twos, (s + 1,))))


# registry ---------------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    id: str
    params: tuple[str, ...]
    symbols: Callable[..., LinComb] | None
    conjectural: bool = False
    note: str = ""


FAMILIES = {
    "ohno": Family("ohno", ("k",), lambda k: ohno_symbols(k)),
    "double-ohno": Family("double-ohno", ("k", "m"), double_ohno_symbols),
    "thm1.8": Family("thm1.8", ("s", "t"), D_symbols),
    "conj4.1": Family("conj4.1", ("s", "m", "n"), conj41_symbols, True),
    "conj4.2": Family("conj4.2", ("s", "n"), conj42_symbols, True,
                      note="n=0 reads both sides as O((s) sha ()) = O((s))"),
    "conj4.3": Family("conj4.3", ("s",), conj43_symbols, True),
    "conj4.4": Family("conj4.4", ("s",), conj44_symbols, True),
    "conj4.5": Family("conj4.5", ("s", "t", "m"), conj45_symbols, True),
}
FAMILIES.update({name: Family(name, (), (lambda c=c: c)) for name, c in NAMED_RELATIONS.items()})


@dataclass
class Relation:
    """One generated relation at one Ohno coefficient."""

    family: str
    params: dict
    coefficient: int
    combo: LinComb
    conjectural: bool = False
    notes: list[str] = field(default_factory=list)


def gen_conjecture(family: str, params: dict, coefficient: int) -> Relation:
    """LHS - RHS of a conjectural family at Ohno coefficient ``coefficient``."""
    fam = FAMILIES.get(family)
    if fam is None or not fam.conjectural:
        raise RelationError(f"unknown conjecture {family!r}")
    return generate(family, params, coefficient)


def generate(family: str, params: dict, coefficient: int) -> Relation:
    fam = FAMILIES.get(family)
    if fam is None:
        raise RelationError(f"unknown family {family!r}")
    missing = [p for p in fam.params if p not in params]
    if missing:
        raise RelationError(f"{family}: missing parameters {missing}")
    symbols = fam.symbols(*(params[p] for p in fam.params))
    notes = []
    if family == "conj4.2" and params["n"] == 0:
        notes.append(fam.note)
    return Relation(family, dict(params), coefficient, expand_symbols(symbols, coefficient),
                    fam.conjectural, notes)
