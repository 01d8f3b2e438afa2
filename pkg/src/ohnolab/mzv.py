"""High-precision multiple zeta values.

``zeta(k)`` is computed from multiple polylogarithms at 1/2 through the
Hölder convolution

    zeta(w) = sum_{w = u v} Li_u(1/2) * Li_{rho(v)}(1/2),

where ``w = I(k)`` and ``rho`` reverses a word and swaps x and y.  The
polylogarithm series converge like ``2^-M`` so a few hundred terms give 60
digits.  Values are produced in batches: all polylogarithms a batch needs
are sorted lexicographically and computed with one shared prefix stack of
nested partial sums, so work on common prefixes is done once.
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from itertools import accumulate
import math
import os
import threading
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .bigfixed import BigFixed
from .indices import IndexError_, format_index, is_admissible, parse_index
from .linear import LinComb
from .words import tau_word, word_of_index

log = logging.getLogger(__name__)

DEFAULT_DIGITS = 50
CACHE_VERSION = "v1"
CACHE_ENV = "OHNOLAB_CACHE"


def truncation_terms(depth: int, digits: int, guard: int) -> int:
    """Smallest M with ``2 M^depth 2^-M < 10^-(digits + guard/2)``."""
    target = (digits + guard / 2) * math.log2(10) + 1
    m = max(8, depth + 1)
    while m - depth * math.log2(m) < target:
        m += 1
    return m


def default_guard(max_weight: int) -> int:
    return 10 + max_weight


def polylog_half_batch(indices: Iterable[Sequence[int]], digits: int, guard: int,
                       terms: int | None = None) -> dict[tuple, int]:
    """Mantissas (scale ``digits + guard``) of ``Li_c(1/2)`` for every ``c``.

    ``Li_c(1/2) = sum_{0<m_1<...<m_l} 2^-m_l / (m_1^c_1 ... m_l^c_l)``.
    """
    needed = sorted({tuple(c) for c in indices})
    if not needed:
        return {}
    if any(not c or min(c) < 1 for c in needed):
        raise IndexError_("polylog_half needs nonempty indices with parts >= 1")
    scale = digits + guard
    M = terms or truncation_terms(max(len(c) for c in needed), digits, guard)
    one = 10 ** scale
    maxpart = max(max(c) for c in needed)
    powers = {p: [0] + [n ** p for n in range(1, M + 1)] for p in range(1, maxpart + 1)}

    # stop_key[p][n] = n + p log2(n - 1): increasing in n, compared with a bit budget
    stop_key = {p: [n + p * math.log2(max(n - 1, 1)) for n in range(M + 1)] for p in powers}

    # stack[j] = (prefix of length j, H, Q) with
    # H[N] = sum_{m_1<...<m_j<=N} prod m_i^-c_i and Q[n] = H[n-1] / 2^n
    root = [one] * (M + 1)
    stack: list[tuple[tuple, list[int], list[int]]] = [((), root, _halved(root))]
    out: dict[tuple, int] = {}
    for c in needed:
        parent = c[:-1]
        while len(stack) > 1 and stack[-1][0] != parent[:len(stack[-1][0])]:
            stack.pop()
        for j in range(len(stack) - 1, len(parent)):
            prev = stack[-1][1]
            pw = powers[parent[j]]
            H = [0]
            H.extend(accumulate([a // b for a, b in zip(prev[:M], pw[1:])]))
            stack.append((parent[:j + 1], H, _halved(H)))
        _, prev, Q = stack[-1]
        p = c[-1]
        pw = powers[p]
        # terms beyond n_stop are below one unit in the last place in total
        n_stop = max(1, bisect_right(stop_key[p], prev[M].bit_length() + 2))
        out[c] = sum([q // d for q, d in zip(Q[1:n_stop + 1], pw[1:n_stop + 1])])
    return out


def _halved(H: list[int]) -> list[int]:
    """``Q[n] = H[n-1] >> n`` for ``n >= 1``."""
    return [0] + [h >> n for n, h in enumerate(H[:-1], start=1)]


def zeta_batch(indices: Iterable[Sequence[int]], digits: int, guard: int | None = None
               ) -> dict[tuple, BigFixed]:
    """``zeta(k)`` for every admissible ``k`` via the Hölder convolution."""
    ks = sorted({tuple(k) for k in indices})
    if not ks:
        return {}
    for k in ks:
        if not is_admissible(k):
            raise IndexError_(f"zeta needs an admissible index, got {k}")
    if guard is None:
        guard = default_guard(max(sum(k) for k in ks))
    plan = []
    memo: dict[str, tuple] = {}

    def index_cached(w: str) -> tuple:
        k = memo.get(w)
        if k is None:
            k = memo[w] = _index(w)
        return k

    for k in ks:
        w = word_of_index(k)
        splits = [(None, index_cached(tau_word(w)))]
        splits += [(index_cached(w[:i]), index_cached(tau_word(w[i:]))) for i in range(1, len(w))]
        splits.append((index_cached(w), None))
        plan.append((k, splits))
    need = set(memo.values())
    L = polylog_half_batch(need, digits, guard)
    scale = digits + guard
    one = 10 ** scale
    out = {}
    for k, splits in plan:
        acc = 0
        for a, b in splits:
            la = L[a] if a is not None else one
            lb = L[b] if b is not None else one
            acc += la * lb
        out[k] = BigFixed(acc // one, digits, guard)
    return out


def _index(w: str) -> tuple:
    # unchecked inverse of word_of_index for words built here
    return tuple(len(block) + 1 for block in w[1:].split("y"))


def polylog_half(c: Sequence[int], digits: int = DEFAULT_DIGITS, guard: int | None = None
                 ) -> BigFixed:
    c = tuple(c)
    if not c:
        raise IndexError_("polylog_half needs a nonempty index")
    guard = default_guard(sum(c)) if guard is None else guard
    return BigFixed(polylog_half_batch([c], digits, guard)[c], digits, guard)


# cache -----------------------------------------------------------------------

class ValueCache:
    """Map ``(index, digits) -> BigFixed`` with a line-oriented text file.

    File records are ``v1;<index>;<digits>;<decimal value>``.  Reads are
    lock-free; :meth:`commit` serialises writers.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path else None
        self.values: dict[tuple[tuple, int], BigFixed] = {}
        self._best: dict[tuple, BigFixed] = {}
        self.provenance = "holder-convolution at 1/2"
        self._lock = threading.Lock()
        self._dirty = False
        if self.path and self.path.exists():
            self.load(self.path)

    def get(self, k: tuple, digits: int) -> BigFixed | None:
        hit = self.values.get((k, digits))
        if hit is not None:
            return hit
        # a higher-precision entry serves a lower-precision request
        best = self._best.get(k)
        if best is not None and best.digits > digits:
            return BigFixed(best.mantissa, digits, best.scale - digits)
        return None

    def _put(self, k: tuple, v: BigFixed) -> None:
        self.values[(k, v.digits)] = v
        best = self._best.get(k)
        if best is None or v.digits > best.digits:
            self._best[k] = v

    def commit(self, values: Mapping[tuple, BigFixed]) -> None:
        with self._lock:
            for k, v in values.items():
                self._put(k, v)
            self._dirty = True

    def load(self, path) -> int:
        n = 0
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                version, idx, digits, value = line.split(";")
                if version != CACHE_VERSION:
                    raise ValueError(f"unsupported cache record version {version!r}")
                d = int(digits)
                self._put(parse_index(idx), BigFixed.from_string(value, d))
                n += 1
        return n

    def save(self, path=None) -> None:
        path = Path(path or self.path)
        with self._lock:
            records = sorted(self.values.items(), key=lambda kv: (kv[0][1], len(kv[0][0]), kv[0][0]))
            tmp = path.with_suffix(path.suffix + ".tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                fh.write(f"# ohnolab value cache; method: {self.provenance}\n")
                for (k, d), v in records:
                    fh.write(f"{CACHE_VERSION};{format_index(k)};{d};{v.exact_string()}\n")
            os.replace(tmp, path)
            self._dirty = False

    def flush(self) -> None:
        if self.path and self._dirty:
            self.save()

    def __len__(self) -> int:
        return len(self.values)


class ZetaEvaluator:
    """Evaluates zeta values and zeta combinations at a fixed precision."""

    def __init__(self, digits: int = DEFAULT_DIGITS, cache: ValueCache | None = None,
                 min_guard: int = 10):
        if digits < 1:
            raise ValueError("digits must be positive")
        self.digits = digits
        self.cache = cache if cache is not None else ValueCache()
        self.min_guard = min_guard

    def zeta_many(self, indices: Iterable[Sequence[int]]) -> dict[tuple, BigFixed]:
        ks = {tuple(k) for k in indices}
        out = {}
        missing = []
        for k in ks:
            hit = self.cache.get(k, self.digits)
            if hit is None:
                missing.append(k)
            else:
                out[k] = hit
        if missing:
            guard = max(self.min_guard, default_guard(max(sum(k) for k in missing)))
            log.debug("evaluating %d zeta values at %d+%d digits", len(missing), self.digits, guard)
            fresh = zeta_batch(missing, self.digits, guard)
            self.cache.commit(fresh)
            out.update(fresh)
        return out

    def zeta(self, k: Sequence[int]) -> BigFixed:
        k = tuple(k)
        return self.zeta_many([k])[k]

    def combo(self, c: LinComb) -> BigFixed:
        return self.combos([c])[0]

    def combos(self, combos: Sequence[LinComb]) -> list[BigFixed]:
        """Values of ``sum coeff * zeta(k)``, with one batched evaluation."""
        vals = self.zeta_many(k for c in combos for k in c)
        scale = max((v.scale for v in vals.values()), default=self.digits + self.min_guard)
        mants = {k: v.rescale(scale).mantissa for k, v in vals.items()}
        out = []
        for c in combos:
            acc = 0
            den = 1
            for k, q in c.items():
                if q.denominator != 1:
                    den = math.lcm(den, q.denominator)
            for k, q in c.items():
                acc += mants[k] * (q.numerator * (den // q.denominator))
            out.append(BigFixed(acc // den, self.digits, scale - self.digits))
        return out


def zeta_eval(k: Sequence[int], digits: int = DEFAULT_DIGITS) -> BigFixed:
    return ZetaEvaluator(digits).zeta(k)


def combo_eval(c: LinComb, digits: int = DEFAULT_DIGITS, evaluator: ZetaEvaluator | None = None
               ) -> BigFixed:
    return (evaluator or ZetaEvaluator(digits)).combo(c)


def open_cache(path: str | os.PathLike | None = None) -> ValueCache:
    """Cache at ``path``, else at ``$OHNOLAB_CACHE``, else in memory only."""
    return ValueCache(path or os.environ.get(CACHE_ENV) or None)
