"""Words over {x, y} and the linear maps acting on them.

A word is a ``str`` over the letters ``"x"`` and ``"y"``; the empty string is
the unit.  A word sum is a :class:`~ohnolab.linear.LinComb` keyed by words.
All maps below are linear; the ``*_word`` helpers act on a single word and
the unprefixed versions extend them to word sums.
"""

from __future__ import annotations

from typing import Sequence

from .indices import IndexError_, weak_compositions
from .linear import LinComb

X, Y = "x", "y"
_SWAP = str.maketrans("xy", "yx")


class WordError(ValueError):
    pass


def check_word(w: str) -> str:
    if any(ch not in "xy" for ch in w):
        raise WordError(f"not a word over {{x,y}}: {w!r}")
    return w


def as_sum(v) -> LinComb:
    return LinComb.single(check_word(v)) if isinstance(v, str) else v


def word_of_index(k: Sequence[int]) -> str:
    """``I(k1,...,kr) = y x^(k1-1) ... y x^(kr-1)``."""
    if not k:
        raise IndexError_("word_of_index needs a nonempty index")
    if any(p < 1 for p in k):
        raise IndexError_(f"index parts must be >= 1: {tuple(k)}")
    return "".join(Y + X * (p - 1) for p in k)


def index_of_word(w: str) -> tuple:
    if not w or w[0] != Y:
        raise WordError(f"word must start with y: {w!r}")
    check_word(w)
    return tuple(len(block) + 1 for block in w[1:].split(Y))


def index_sum_of_word_sum(v: LinComb) -> LinComb:
    return v.map_keys(index_of_word)


def word_sum_of_index_sum(s: LinComb) -> LinComb:
    return s.map_keys(word_of_index)


# letter maps ----------------------------------------------------------------

def swap_word(w: str) -> str:
    return w.translate(_SWAP)


def tau_word(w: str) -> str:
    """Anti-automorphism exchanging x and y."""
    return w[::-1].translate(_SWAP)


def tau(v) -> LinComb:
    return as_sum(v).map_keys(tau_word)


def reverse_T(v) -> LinComb:
    return as_sum(v).map_keys(lambda w: w[::-1])


def swap(v) -> LinComb:
    return as_sum(v).map_keys(swap_word)


def holder_rho(w: str) -> str:
    """Reverse then swap; the reflection used by the Hölder convolution."""
    return tau_word(check_word(w))


def left_y(v) -> LinComb:
    return as_sum(v).map_keys(lambda w: Y + w)


def right_x(v) -> LinComb:
    return as_sum(v).map_keys(lambda w: w + X)


def s_conj(u: str, v) -> LinComb:
    """``S_u(w u) = u w``: move the trailing letter ``u`` to the front."""
    v = as_sum(v)
    if any(not w.endswith(u) for w in v):
        raise WordError(f"every word must end with {u!r}")
    return v.map_keys(lambda w: u + w[:-1])


def s_conj_inverse(u: str, v) -> LinComb:
    v = as_sum(v)
    if any(not w.startswith(u) for w in v):
        raise WordError(f"every word must start with {u!r}")
    return v.map_keys(lambda w: w[1:] + u)


# sigma ---------------------------------------------------------------------

def sigma_m_word(m: int, w: str) -> LinComb:
    """Degree-``m`` part of ``sigma(y) = y (1 - x t)^(-1)``, ``sigma(x) = x``.

    Inserts ``m`` extra x's immediately after the y's in all ways.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return LinComb.single(w)
    ys = [i for i, ch in enumerate(w) if ch == Y]
    if not ys:
        return LinComb()
    terms = []
    for e in weak_compositions(m, len(ys)):
        out = []
        j = 0
        for ch in w:
            out.append(ch)
            if ch == Y:
                out.append(X * e[j])
                j += 1
        terms.append("".join(out))
    return LinComb.from_keys(terms)


def sigma_m(m: int, v) -> LinComb:
    return as_sum(v).map_linear(lambda w: sigma_m_word(m, w))


def is_duplex_word(w: str) -> bool:
    """True iff ``w = y u x`` with ``u`` a product of the blocks xy and yx."""
    if len(w) < 2 or w[0] != Y or w[-1] != X or len(w) % 2:
        return False
    u = w[1:-1]
    return all(u[i:i + 2] in ("xy", "yx") for i in range(0, len(u), 2))


def duplex_words(max_length: int) -> list[str]:
    """All duplex words of length <= ``max_length``."""
    out = []
    blocks = [""]
    while len(blocks[0]) + 2 <= max_length:
        out.extend(Y + u + X for u in blocks)
        blocks = [u + b for u in blocks for b in ("xy", "yx")]
    return out


def sigma_compose_check(m1: int, m2: int, w: str) -> bool:
    """Both sides of the sigma/tau commutation identity on a duplex word."""
    if not is_duplex_word(w):
        raise WordError(f"{w!r} is not of the form y(xy|yx)*x")
    lhs = sigma_m(m1, tau(sigma_m(m2, tau(w))))
    rhs = tau(sigma_m(m2, tau(sigma_m(m1, w))))
    return lhs == rhs
