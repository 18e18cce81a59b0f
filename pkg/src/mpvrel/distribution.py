"""
Finite and regularized distribution relations.

Words over ``X = {x_0} u {x_sigma}`` are represented by the same letter codes
as everywhere else: ``x_0`` is ``a`` and ``x_{mu^j}`` is ``b_j`` (so ``x_1`` is
``b_0``).  :func:`coeff_I` returns the coefficient of a word in the
group-like series whose convergent coefficients are the MPVs; it is a
linear combination of admissible words.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .algebra import LinComb, shuffle, shuffle_power
from .relations import Relation, dedup
from .words import A, EMPTY, as_level, b, format_word, is_admissible

X1 = b(0)


class DistributionParams(NamedTuple):
    d: int
    dp: int  # N / d


def divisor_params(N: int):
    """``(d, N/d)`` for every divisor ``d > 1`` of ``N``."""
    return [DistributionParams(d, N // d) for d in range(2, N + 1) if N % d == 0]


@lru_cache(maxsize=None)
def _coeff_I(w):
    if not w:
        return {EMPTY: 1}
    m = 0
    while m < len(w) and w[m] == X1:
        m += 1
    n = 0
    while n < len(w) - m and w[len(w) - 1 - n] == A:
        n += 1
    p = len(w) - m - n
    if p == 0 and m * n == 0:
        return {}
    if m == 0 and n == 0:
        return {w: 1}
    out = LinComb()
    if m > 0:
        rest = w[m:]
        head = (X1,) * (m - 1)
        for i in range(1, len(rest) + 1):
            out.iadd(_coeff_I(head + rest[:i] + (X1,) + rest[i:]))
        return dict(out * Fraction(-1, m))
    mid = w[: len(w) - n]
    tail = (A,) * (n - 1)
    for i in range(1, p + 1):
        out.iadd(_coeff_I(mid[: i - 1] + (A,) + mid[i - 1 :] + tail))
    return dict(out * Fraction(-1, n))


def coeff_I(x) -> LinComb:
    """Coefficient ``C(sigma_1..sigma_p)`` of a word in the regularized group-like series."""
    return LinComb(_coeff_I(tuple(x)))


def _power_letter(x, d, N):
    # x_sigma -> x_{sigma^d}
    return x if x == A else (d * (x - 1)) % N + 1


def _preimages(W, d, dp, N):
    """All words ``V`` over the level-``N`` alphabet with ``p^d(V) = W``."""
    choices = []
    for x in W:
        if x == A:
            choices.append((A,))
        else:
            r = ((x - 1) // d) % dp  # x = b_{r d}
            choices.append(tuple(b(r + k * dp) for k in range(d)))
    return itertools.product(*choices)


def _sub_alphabet(d, N):
    """Letters of ``X_{Gamma^d}``: ``a`` and ``b_{r d}`` for ``0 <= r < N/d``."""
    return [A] + [b(r * d) for r in range(N // d)]


def fdt_relation(W, d, N):
    """``Z(W) = d^{#a} sum_{p^d(V) = W} Z(V)`` for a convergent word ``W`` over ``Gamma^d``."""
    dp = N // d
    x = LinComb.word(W)
    scale = d ** sum(1 for c in W if c == A)
    for V in _preimages(W, d, dp, N):
        x.add_term(V, -scale)
    return Relation.from_lincomb(x, N, "FDT", {"d": d, "W": format_word(W)})


def gen_fdt(weight: int, ctx) -> list:
    N = as_level(ctx)
    out = []
    for d, dp in divisor_params(N):
        for W in itertools.product(_sub_alphabet(d, N), repeat=weight):
            if is_admissible(W):
                out.append(fdt_relation(W, d, N))
    return dedup(out)


def rdt_sides(W, d, N):
    """Both sides of the coefficient of ``W`` in ``p^d_*(I) = exp(sum Li_1(sigma) x_1) i_d^*(I)``."""
    dp = N // d
    lhs = LinComb()
    scale = d ** sum(1 for c in W if c == A)
    for V in _preimages(W, d, dp, N):
        lhs.iadd(coeff_I(V), scale)
    li1 = LinComb({(b(j * dp),): 1 for j in range(1, d)})
    rhs = LinComb()
    k = 0
    while True:
        term = shuffle(shuffle_power(li1, k), coeff_I(W[k:])) * Fraction(1, math.factorial(k))
        rhs.iadd(term)
        if k < len(W) and W[k] == X1:
            k += 1
        else:
            break
    return lhs, rhs


def rdt_relation(W, d, N):
    lhs, rhs = rdt_sides(W, d, N)
    return Relation.from_lincomb(lhs - rhs, N, "RDT", {"d": d, "W": format_word(W)})


def gen_rdt(weight: int, ctx) -> list:
    N = as_level(ctx)
    out = []
    for d, dp in divisor_params(N):
        for W in itertools.product(_sub_alphabet(d, N), repeat=weight):
            out.append(rdt_relation(W, d, N))
    return dedup(out)
