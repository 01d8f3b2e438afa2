"""Finite multiple zeta values modulo primes.

``zeta_A(k)`` is the truncated harmonic sum ``sum_{0<m_1<...<m_r<p} prod m_i^-k_i``
reduced mod ``p``.  An identity in ``A = prod F_p / (+) F_p`` is checked
componentwise over a finite window of primes.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .indices import (
    IndexError_,
    compositions,
    hoffman_dual,
    minus_last,
    oplus,
    weak_compositions,
)
from .relations import is_duplex_index

log = logging.getLogger(__name__)


class PrimeError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes ``p`` with ``lo <= p <= hi``."""
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


@dataclass(frozen=True)
class ModResidue:
    value: int
    prime: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.prime)

    def __add__(self, other: "ModResidue") -> "ModResidue":
        self._same(other)
        return ModResidue(self.value + other.value, self.prime)

    def __sub__(self, other: "ModResidue") -> "ModResidue":
        self._same(other)
        return ModResidue(self.value - other.value, self.prime)

    def __mul__(self, other) -> "ModResidue":
        if isinstance(other, ModResidue):
            self._same(other)
            other = other.value
        return ModResidue(self.value * other, self.prime)

    def _same(self, other: "ModResidue") -> None:
        if self.prime != other.prime:
            raise PrimeError(f"residues mod {self.prime} and mod {other.prime} do not mix")


def batch_inverses(p: int) -> list[int]:
    """``inv[a] = a^-1 mod p`` for ``1 <= a < p`` with a single modular inversion."""
    prefix = [1] * p
    for a in range(1, p):
        prefix[a] = prefix[a - 1] * a % p
    inv_all = pow(prefix[p - 1], -1, p)
    inv = [0] * p
    for a in range(p - 1, 0, -1):
        inv[a] = inv_all * prefix[a - 1] % p
        inv_all = inv_all * a % p
    return inv


def fmzv_batch(indices: Iterable[Sequence[int]], p: int) -> dict[tuple, int]:
    """``zeta_A(k) mod p`` for every nonempty ``k`` (values in ``[0, p)``)."""
    if not is_prime(p):
        raise PrimeError(f"{p} is not prime")
    needed = sorted({tuple(k) for k in indices})
    if any(not k for k in needed):
        raise IndexError_("finite MZVs need nonempty indices")
    inv = np.array(batch_inverses(p), dtype=np.int64)
    maxpart = max((max(k) for k in needed), default=1)
    invpow = {1: inv}
    for e in range(2, maxpart + 1):
        invpow[e] = invpow[e - 1] * inv % p

    # stack[j] = (prefix, H) with H[n] = sum_{m_1<...<m_j<=n} prod m_i^-k_i mod p, n = 0..p-1
    ones = np.ones(p, dtype=np.int64)
    stack = [((), ones)]
    out = {}
    for k in needed:
        while len(stack) > 1 and stack[-1][0] != k[:len(stack[-1][0])]:
            stack.pop()
        for j in range(len(stack) - 1, len(k)):
            prev = stack[-1][1]
            terms = np.zeros(p, dtype=np.int64)
            terms[1:] = prev[:-1] * invpow[k[j]][1:] % p
            stack.append((k[:j + 1], np.cumsum(terms) % p))
        out[k] = int(stack[-1][1][p - 1])
    return out


def fmzv_eval(k: Sequence[int], p: int) -> ModResidue:
    k = tuple(k)
    if not k:
        raise IndexError_("finite MZVs need a nonempty index")
    if not is_prime(p):
        raise PrimeError(f"{p} is not prime")
    if p <= len(k):
        log.warning("p=%d <= depth %d: empty sum", p, len(k))
        return ModResidue(0, p)
    return ModResidue(fmzv_batch([k], p)[k], p)


# Ohno-type identities --------------------------------------------------------

def ohno_type_sides(k: Sequence[int], m: int) -> tuple[list[tuple], list[tuple]]:
    """Index lists of the two sides of the Ohno-type relation for finite MZVs."""
    k = tuple(k)
    if not k:
        raise IndexError_("needs a nonempty index")
    kv = hoffman_dual(k)
    lhs = [oplus(k, e) for e in weak_compositions(m, len(k))]
    rhs = [hoffman_dual(oplus(kv, e)) for e in weak_compositions(m, len(kv))]
    return lhs, rhs


def double_ohno_sides(k: Sequence[int], m1: int, m2: int) -> tuple[list[tuple], list[tuple]]:
    k = tuple(k)
    if not is_duplex_index(k):
        raise IndexError_(f"{k} is not in the double Ohno family")
    km = minus_last(k)
    kv = hoffman_dual(km)
    lhs, rhs = [], []
    for e1 in weak_compositions(m1, len(km)):
        lhs.extend(oplus(oplus(km, e1), e2) for e2 in weak_compositions(m2, len(km)))
    for e1 in weak_compositions(m1, len(kv)):
        rhs.extend(hoffman_dual(oplus(oplus(kv, e1), e2)) for e2 in weak_compositions(m2, len(kv)))
    return lhs, rhs


def _compare(lhs: list, rhs: list, p: int) -> bool:
    vals = fmzv_batch(lhs + rhs, p)
    return sum(vals[k] for k in lhs) % p == sum(vals[k] for k in rhs) % p


def check_ohno_type(k: Sequence[int], m: int, p: int) -> bool:
    return _compare(*ohno_type_sides(k, m), p)


def check_double_ohno_fmzv(k: Sequence[int], m1: int, m2: int, p: int) -> bool:
    return _compare(*double_ohno_sides(k, m1, m2), p)


@dataclass
class FmzvReport:
    theorem: str
    weight_max: int
    m_max: int
    p_max: int
    checks: int = 0
    primes: list[int] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    small_prime_failures: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_theorem(theorem: str, weight_max: int = 6, m_max: int = 3, p_max: int = 500,
                   margin: int = 2) -> FmzvReport:
    """Check theorem ``"2.5"`` or ``"2.6"`` for every prime up to ``p_max``.

    A case of weight ``w`` at total lift ``m`` is gating for primes
    ``p >= w + m + margin``; failures below that are only reported.
    """
    if theorem not in ("2.5", "2.6"):
        raise ValueError(f"unknown theorem {theorem!r}")
    t0 = time.perf_counter()
    rep = FmzvReport(theorem, weight_max, m_max, p_max)
    cases = []
    for w in range(1, weight_max + 1):
        for k in compositions(w):
            if theorem == "2.5":
                for m in range(m_max + 1):
                    cases.append(((k, m), ohno_type_sides(k, m), w + m))
            elif k[-1] >= 2 and is_duplex_index(k):
                for m in range(m_max + 1):
                    for m1 in range(m + 1):
                        cases.append(((k, m1, m - m1), double_ohno_sides(k, m1, m - m1), w + m))
    rep.primes = primes_between(2, p_max)
    for p in rep.primes:
        live = [c for c in cases if p > max(len(x) for x in c[1][0] + c[1][1])]
        vals = fmzv_batch([x for c in live for side in c[1] for x in side], p)
        for params, (lhs, rhs), wt in live:
            rep.checks += 1
            if sum(vals[x] for x in lhs) % p != sum(vals[x] for x in rhs) % p:
                rec = {"params": params, "p": p}
                (rep.failures if p >= wt + margin else rep.small_prime_failures).append(rec)
    rep.seconds = time.perf_counter() - t0
    return rep
