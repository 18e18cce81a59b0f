"""
Formal Q-linear combinations of words and the two products on them.

The shuffle product is the interleaving product of iterated integrals.  The
stuffle product is the quasi-shuffle coming from multiplying nested series;
on increment-encoded indices ``(s|i)`` it is the ordinary quasi-shuffle with
``(s, i) <> (t, j) = (s + t, i + j mod N)``, which is exactly what the
exponent-shifting recursion on ``y``-words amounts to.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .words import (
    A,
    EMPTY,
    NotAdmissibleError,
    YFactor,
    as_level,
    format_word,
    index_to_word,
    is_in_A1,
    word_to_index,
)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LinComb(dict):
    """A finite Q-linear combination of words, ``{word: coefficient}``.

    Zero coefficients are never stored.
    """

    @classmethod
    def word(cls, w, coef=1):
        return cls({tuple(w): coef}) if coef else cls()

    @classmethod
    def coerce(cls, x):
        if isinstance(x, LinComb):
            return x
        if isinstance(x, dict):
            return cls({k: v for k, v in x.items() if v})
        return cls.word(x)

    def add_term(self, w, c):
        if not c:
            return
        c = self.get(w, 0) + c
        if c:
            self[w] = _norm(c)
        else:
            del self[w]

    def iadd(self, other, scale=1):
        for w, c in other.items():
            self.add_term(w, c * scale)
        return self

    def __add__(self, other):
        return LinComb(self).iadd(LinComb.coerce(other))

    def __sub__(self, other):
        return LinComb(self).iadd(LinComb.coerce(other), -1)

    def __neg__(self):
        return LinComb({w: -c for w, c in self.items()})

    def __mul__(self, scalar):
        if not isinstance(scalar, Rational):
            return NotImplemented
        if not scalar:
            return LinComb()
        return LinComb({w: _norm(c * scalar) for w, c in self.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / scalar)

    def weights(self):
        return {len(w) for w in self}

    def is_homogeneous(self):
        return len(self.weights()) <= 1

    def prefix(self, p):
        p = tuple(p)
        return LinComb({p + w: c for w, c in self.items()})

    def sorted_items(self):
        return sorted(self.items())

    def __repr__(self):
        if not self:
            return "0"
        parts = []
        for w, c in self.sorted_items():
            parts.append("%s*%s" % (c, format_word(w)))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# shuffle


@lru_cache(maxsize=None)
def _shuffle_words(u, v):
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out = {}
    for w, c in _shuffle_words(u[1:], v).items():
        w = (u[0],) + w
        out[w] = out.get(w, 0) + c
    for w, c in _shuffle_words(u, v[1:]).items():
        w = (v[0],) + w
        out[w] = out.get(w, 0) + c
    return out


def shuffle_words(u, v) -> dict:
    """Shuffle of two words; the returned dict is shared and must not be mutated."""
    return _shuffle_words(tuple(u), tuple(v))


def _bilinear(word_product, x, y):
    x, y = LinComb.coerce(x), LinComb.coerce(y)
    out = LinComb()
    for u, cu in x.items():
        for v, cv in y.items():
            c = cu * cv
            for w, cw in word_product(u, v).items():
                out.add_term(w, c * cw)
    return out


def shuffle(u, v) -> LinComb:
    """Bilinear shuffle product of words or linear combinations."""
    return _bilinear(shuffle_words, u, v)


def shuffle_power(x, n: int) -> LinComb:
    out = LinComb.word(EMPTY)
    for _ in range(n):
        out = shuffle(out, x)
    return out


# ---------------------------------------------------------------------------
# stuffle


@lru_cache(maxsize=None)
def _quasi_shuffle(N, u, v):
    # u, v: tuples of (s, i) increment pairs
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out = {}

    def acc(head, d):
        for w, c in d.items():
            w = (head,) + w
            out[w] = out.get(w, 0) + c

    acc(u[0], _quasi_shuffle(N, u[1:], v))
    acc(v[0], _quasi_shuffle(N, u, v[1:]))
    merged = (u[0][0] + v[0][0], (u[0][1] + v[0][1]) % N)
    acc(merged, _quasi_shuffle(N, u[1:], v[1:]))
    return out


def _pairs(w, N):
    s, i = word_to_index(w, N)
    return tuple(zip(s, i))


@lru_cache(maxsize=None)
def _stuffle_words(N, u, v):
    out = {}
    for pairs, c in _quasi_shuffle(N, _pairs(u, N), _pairs(v, N)).items():
        w = index_to_word([p[0] for p in pairs], [p[1] for p in pairs], N)
        out[w] = out.get(w, 0) + c
    return out


def stuffle_words(u, v, N: int) -> dict:
    """Stuffle of two words of ``A^1``; the result is shared, do not mutate."""
    u, v = tuple(u), tuple(v)
    if not (is_in_A1(u) and is_in_A1(v)):
        raise NotAdmissibleError("stuffle operands must lie in A^1 (end with a b-letter)")
    return _stuffle_words(N, u, v)


def stuffle(u, v, ctx) -> LinComb:
    N = as_level(ctx)
    return _bilinear(lambda x, y: stuffle_words(x, y, N), u, v)


def stuffle_power(x, n: int, ctx) -> LinComb:
    out = LinComb.word(EMPTY)
    for _ in range(n):
        out = stuffle(out, x, ctx)
    return out


def product(which: str, ctx=None):
    """Return the word-level product for ``"shuffle"`` or ``"stuffle"``."""
    if which == "shuffle":
        return shuffle_words
    if which == "stuffle":
        N = as_level(ctx)
        return lambda u, v: stuffle_words(u, v, N)
    raise ValueError(f"unknown product {which!r}")


def clear_caches():
    _shuffle_words.cache_clear()
    _quasi_shuffle.cache_clear()
    _stuffle_words.cache_clear()


# ---------------------------------------------------------------------------
# exponent shifting and the circle product


def tau_shift(j: int, w, ctx):
    """Shift every ``b``-residue of ``w`` by ``j``; ``a`` is left alone."""
    N = as_level(ctx)
    return tuple(x if x == A else (x - 1 + j) % N + 1 for x in w)


def circ_product(z, zp, ctx) -> YFactor:
    """``y_{s,i} o y_{t,j} = y_{s+t, i+j}``."""
    N = as_level(ctx)
    return YFactor(z[0] + zp[0], (z[1] + zp[1]) % N)
