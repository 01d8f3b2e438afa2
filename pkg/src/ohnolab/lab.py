"""Relation spaces among Ohno sums: exact spans and numerical discovery.

Vectors live either over zeta symbols or over Ohno symbols of one weight,
with coordinates ordered as in :func:`~ohnolab.indices.enumerate_admissible`.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .bigfixed import BigFixed
from .indices import IndexError_, dual, enumerate_admissible, weak_compositions
from .linalg import independent_subset, rank as exact_rank, span_membership as _span_membership
from .linear import LinComb
from .lll import lll_reduce
from .mzv import ValueCache, ZetaEvaluator
from .relations import (
    D_symbols,
    EQ_1_1,
    double_ohno_symbols,
    gen_double_ohno,
    gen_ohno,
    is_duplex_index,
    ohno_symbols,
)

log = logging.getLogger(__name__)

ZETA, OHNO = "zeta", "ohno"


class PrecisionError(RuntimeError):
    """Residuals fell in the ambiguous band; the run needs more digits."""


@dataclass(frozen=True)
class RelationVector:
    """Exact rational coordinates over the weight-``weight`` basis."""

    coords: LinComb
    weight: int
    kind: str

    def __post_init__(self):
        if self.kind not in (ZETA, OHNO):
            raise ValueError(f"unknown kind {self.kind!r}")
        for k in self.coords:
            if sum(k) != self.weight or k[-1] < 2:
                raise IndexError_(f"{k} is not an admissible index of weight {self.weight}")

    @classmethod
    def of(cls, combo: LinComb, kind: str, weight: int | None = None) -> "RelationVector":
        if weight is None:
            weight = sum(next(iter(combo))) if combo else 0
        return cls(combo, weight, kind)

    def dense(self) -> list[Fraction]:
        return [self.coords.coeff(k) for k in enumerate_admissible(self.weight)]

    def height(self) -> Fraction:
        return max((abs(c) for c in self.coords.values()), default=Fraction(0))


def _check_compatible(vectors: Iterable[RelationVector]) -> None:
    sig = {(v.weight, v.kind) for v in vectors}
    if len(sig) > 1:
        raise ValueError(f"vectors of different weight/kind: {sorted(sig)}")


def rank(vectors: Sequence[RelationVector]) -> int:
    _check_compatible(vectors)
    return exact_rank([v.coords for v in vectors])


def span_membership(v: RelationVector, generators: Sequence[RelationVector]
                    ) -> tuple[bool, list[Fraction] | None]:
    _check_compatible([v, *generators])
    return _span_membership(v.coords, [g.coords for g in generators])


# generator families at one weight ------------------------------------------------

def ohno_span_dim(n: int) -> int:
    """Dimension of the span of ``O(k) - O(k^dagger)`` at weight ``n``.

    Each generator involves one dual pair, so the dimension is the number
    of pairs ``{k, k^dagger}`` with ``k != k^dagger``.
    """
    if n < 2:
        raise IndexError_(f"weight must be >= 2, got {n}")
    basis = enumerate_admissible(n)
    self_dual = sum(1 for k in basis if dual(k) == k)
    return (len(basis) - self_dual) // 2


def ohno_symbol_generators(n: int) -> list[RelationVector]:
    out = []
    for k in enumerate_admissible(n):
        c = ohno_symbols(k)
        if c:
            out.append(RelationVector(c, n, OHNO))
    return out


def ohno_zeta_generators(n: int) -> list[RelationVector]:
    """``gen_ohno(k, m)`` for every admissible ``k`` with ``|k| + m = n``."""
    out = []
    for w in range(2, n + 1):
        for k in enumerate_admissible(w):
            c = gen_ohno(k, n - w)
            if c:
                out.append(RelationVector(c, n, ZETA))
    return out


def duplex_indices(max_weight: int) -> list[tuple]:
    return [k for w in range(2, max_weight + 1) for k in enumerate_admissible(w)
            if is_duplex_index(k)]


def double_ohno_zeta_vectors(n: int) -> list[tuple[tuple, RelationVector]]:
    """``((k, m1, m2), vector)`` for duplex ``k`` with ``|k| + m1 + m2 = n``."""
    out = []
    for k in duplex_indices(n):
        m = n - sum(k)
        for m1 in range(m + 1):
            c = gen_double_ohno(k, m1, m - m1)
            if c:
                out.append(((k, m1, m - m1), RelationVector(c, n, ZETA)))
    return out


def proved_symbol_vectors(n: int) -> dict[str, list[RelationVector]]:
    """Ohno-symbol vectors of every proved family at weight ``n``."""
    fams: dict[str, list[RelationVector]] = {"ohno": ohno_symbol_generators(n)}
    fams["double-ohno"] = [RelationVector(c, n, OHNO)
                           for k in duplex_indices(n)
                           if (c := double_ohno_symbols(k, n - sum(k)))]
    fams["thm1.8"] = [RelationVector(c, n, OHNO)
                      for s in range(2, n - 2) if (t := n - 1 - s) >= 2
                      if (c := D_symbols(s, t))]
    return fams


def eq11_vector() -> RelationVector:
    return RelationVector(EQ_1_1, 6, OHNO)


# numerical Ohno sums ----------------------------------------------------------

def ohno_values(basis: Sequence[tuple], ms: Sequence[int], evaluator: ZetaEvaluator
                ) -> dict[tuple[int, tuple], BigFixed]:
    """``O_m(k)`` for all ``m`` in ``ms`` and ``k`` in ``basis``."""
    plan = {(m, k): [tuple(a + b for a, b in zip(k, e)) for e in weak_compositions(m, len(k))]
            for m in ms for k in basis}
    zs = evaluator.zeta_many(x for terms in plan.values() for x in terms)
    scale = max(v.scale for v in zs.values())
    mant = {x: v.rescale(scale).mantissa for x, v in zs.items()}
    digits = evaluator.digits
    return {key: BigFixed(sum(mant[x] for x in terms), digits, scale - digits)
            for key, terms in plan.items()}


@dataclass
class Discovered:
    coeffs: dict[tuple, int]
    height: int
    residual_log10: float
    stable_residual_log10: float
    out_of_sample_log10: float | None = None


@dataclass
class DiscoveryResult:
    weight: int
    digits: int
    rows: int
    relations: list[Discovered]
    scale_log10: int
    contains: dict[str, bool] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def count(self) -> int:
        return len(self.relations)

    def vectors(self) -> list[RelationVector]:
        return [RelationVector(LinComb(r.coeffs), self.weight, OHNO) for r in self.relations]


def _residuals(coeffs: Sequence[int], basis, ms, values) -> list[BigFixed]:
    out = []
    for m in ms:
        acc = None
        for c, k in zip(coeffs, basis):
            if c:
                term = values[(m, k)] * c
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else BigFixed(0, 0, 0))
    return out


def _max_log10(vals: Sequence[BigFixed]) -> float:
    return max((v.log10_abs() for v in vals), default=-math.inf)


def discover_relations(n: int, rows: int | None = None, digits: int = 60,
                       cache: ValueCache | None = None, out_of_sample: bool = True,
                       max_height: int = 10 ** 6) -> DiscoveryResult:
    """Integer relations ``sum c_k O(k) = 0`` at weight ``n`` found by LLL.

    The lattice has one row per basis index ``k``:
    ``[e_k | round(C * O_m(k)) for m < rows]`` with ``C = 10^(digits-5)``.
    Reduced rows whose relation holds to ``10^(-digits/2)`` for every ``m``
    and whose height is below ``max_height`` are kept.
    """
    t0 = time.perf_counter()
    basis = enumerate_admissible(n)
    N = len(basis)
    rows = rows or N + 8
    if rows < N + 8:
        raise ValueError(f"need at least {N + 8} coefficient rows at weight {n}")
    cache = cache if cache is not None else ValueCache()
    ms = list(range(rows))
    # values at digits+10 serve both the lattice (rounded) and the stability check
    hi = ohno_values(basis, ms, ZetaEvaluator(digits + 10, cache))
    lo = {key: v.rescale(digits) for key, v in hi.items()}
    lo = {key: BigFixed(v.mantissa, digits, 0) for key, v in lo.items()}
    scale_log10 = digits - 5
    lattice = []
    for i, k in enumerate(basis):
        ident = [1 if j == i else 0 for j in range(N)]
        # C * O_m(k) = mantissa * 10^(digits-5) / 10^digits
        numeric = [_round_div_pow10(lo[(m, k)].mantissa, 5) for m in ms]
        lattice.append(ident + numeric)
    reduced = lll_reduce(lattice)

    accept_log = -digits / 2
    abort_log = -digits / 4
    found = []
    for row in reduced:
        coeffs = row[:N]
        height = max(abs(c) for c in coeffs)
        res = _max_log10(_residuals(coeffs, basis, ms, lo))
        if res < accept_log and height < max_height:
            stable = _max_log10(_residuals(coeffs, basis, ms, hi))
            if stable >= accept_log:
                raise PrecisionError(f"relation unstable at {digits + 10} digits; raise D")
            found.append((coeffs, height, res, stable))
        elif accept_log <= res < abort_log:
            raise PrecisionError(f"residual 1e{res:.1f} is ambiguous at {digits} digits; raise D")

    keep = independent_subset([LinComb(zip(basis, c)) for c, *_ in found])
    relations = [Discovered({k: c for k, c in zip(basis, found[i][0]) if c}, *found[i][1:])
                 for i in keep]
    result = DiscoveryResult(n, digits, rows, relations, scale_log10)

    if out_of_sample and relations:
        extra = list(range(rows, rows + 5))
        vals = ohno_values(basis, extra, ZetaEvaluator(digits, cache))
        for r in relations:
            coeffs = [r.coeffs.get(k, 0) for k in basis]
            r.out_of_sample_log10 = _max_log10(_residuals(coeffs, basis, extra, vals))

    found_vecs = result.vectors()
    for fam, vecs in proved_symbol_vectors(n).items():
        result.contains[fam] = all(span_membership(v, found_vecs)[0] for v in vecs) \
            if found_vecs else not vecs
    result.seconds = time.perf_counter() - t0
    return result


def _round_div_pow10(a: int, e: int) -> int:
    q, r = divmod(a, 10 ** e)
    return q + 1 if 2 * r >= 10 ** e else q


# relation-count table --------------------------------------------------------------------------

@dataclass
class TableRow:
    weight: int
    ohno_span: int
    all_relations: int | None
    seconds: float = 0.0
    discovery: DiscoveryResult | None = None


REFERENCE_COUNTS = {
    "ohno_span": dict(zip(range(2, 14), (0, 1, 1, 4, 6, 16, 28, 64, 120, 256, 496, 1024))),
    "all_relations": dict(zip(range(2, 14), (0, 1, 1, 4, 7, 18, 35, 80, 162, 352, 723, 1530))),
}


def table1(weight_max: int = 6, digits: int = 60, rows: int | None = None,
           discover_max: int | None = None, cache: ValueCache | None = None,
           out_of_sample: bool = False) -> list[TableRow]:
    """Both rows of the relation-count table for weights ``2..weight_max``.

    Row 1 is exact for every weight; row 2 needs numerical discovery and is
    only attempted up to ``discover_max`` (default ``min(weight_max, 6)``).
    """
    discover_max = min(weight_max, 6) if discover_max is None else discover_max
    out = []
    for n in range(2, weight_max + 1):
        t0 = time.perf_counter()
        row = TableRow(n, ohno_span_dim(n), None)
        if n <= discover_max:
            r = None if rows is None else max(rows, 2 ** (n - 2) + 8)
            row.discovery = discover_relations(n, r, digits, cache, out_of_sample=out_of_sample)
            row.all_relations = row.discovery.count
        row.seconds = time.perf_counter() - t0
        out.append(row)
    return out
