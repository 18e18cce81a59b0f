"""
High-precision values of MPVs at roots of unity.

Every value is an iterated integral ``Z(w)`` over ``[0, 1]`` with singular
points ``0`` and ``mu^{-i}``.  The path is split at an interior point ``p``
(Hoelder convolution) so both halves become multiple polylogarithm series
whose arguments all have modulus well below one::

    Z(w_1..w_n) = (-1)^depth * sum_k (-1)^k G(1-c_k, .., 1-c_1; 1-p) G(c_{k+1}, .., c_n; p)

where ``c = 0`` for the letter ``a`` and ``c = mu^{-i}`` for ``b_i``.  For an
admissible word no half ever has a trailing zero argument, so no divergent
piece needs regularizing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from .words import A, DivergentIndexError, MpvIndex, as_level, format_word, is_admissible, word_from_mpv


class PrecisionError(ArithmeticError):
    """The requested precision was not reached; ``achieved`` holds the error estimate."""

    def __init__(self, msg, achieved):
        super().__init__(msg)
        self.achieved = achieved


@dataclass(frozen=True)
class EvalConfig:
    precision: int = 30  # decimal digits
    split: float = 0.5
    # a split whose slowest series ratio exceeds this is replaced by the balanced split
    max_ratio: float = 0.75
    guard: int = 10
    verify: bool = False

    @property
    def dps(self):
        return self.precision + self.guard


def _terms_needed(ratio, depth, digits):
    """Smallest M with M^(depth-1) ratio^M / (1 - ratio) < 10^-digits (tail bound)."""
    target = -digits * math.log(10)
    lr = math.log(ratio)
    M = 1
    while True:
        est = (depth - 1) * math.log(M) + M * lr - math.log(1 - ratio)
        # also need the bound to be decreasing from M on
        if est < target and (depth - 1) / M + lr < 0:
            return M
        M += max(1, M // 8)


def _mpl_series(ms, xs, M):
    """Truncated ``Li_{m_1..m_k}(x_1..x_k) = sum_{n_1>..>n_k>0} prod x_j^n_j / n_j^m_j``."""
    k = len(ms)
    # innermost sum first; partial[n] = sum over n' < n of the previous layer
    prev = None
    for j in range(k - 1, -1, -1):
        x, m = xs[j], ms[j]
        layer = [mpmath.mpc(0)] * (M + 1)
        p = mpmath.mpc(1)
        acc = mpmath.mpc(0)
        for n in range(1, M + 1):
            p *= x
            t = p / mpmath.mpf(n) ** m
            if prev is not None:
                t *= acc
                acc += prev[n]
            layer[n] = t
        prev = layer
    return mpmath.fsum(prev[1:])


def _G(args, y, digits):
    """``G(c_1..c_n; y)`` for a non-empty list without trailing zero, all ``|c| > |y|``."""
    if not args:
        return mpmath.mpc(1)
    ms, cs = [], []
    m = 1
    for c in args:
        if c == 0:
            m += 1
        else:
            ms.append(m)
            cs.append(c)
            m = 1
    if m != 1:
        raise ValueError("trailing zero argument in G")
    xs = [y / cs[0]] + [cs[j - 1] / cs[j] for j in range(1, len(cs))]
    ratio = float(abs(y) / min(abs(c) for c in cs))
    if ratio >= 1:
        raise ValueError("G series does not converge (ratio %.3f)" % ratio)
    M = _terms_needed(ratio, sum(ms), digits)
    val = _mpl_series(ms, xs, M)
    return -val if len(cs) % 2 else val


def _letters_to_args(word, N):
    mu = mpmath.expjpi(mpmath.mpf(2) / N)
    out = []
    for x in word:
        if x == A:
            out.append(mpmath.mpc(0))
        else:
            i = (x - 1) % N
            out.append(mpmath.mpc(1) if i == 0 else mu ** (-i))
    return out


def _min_shifted(word, N):
    """Smallest ``|1 - c|`` over letters of the word (``a`` gives 1, ``b_0`` none)."""
    vals = [1.0]
    for x in word:
        if x != A and (x - 1) % N:
            vals.append(2 * math.sin(math.pi * ((x - 1) % N) / N))
    return min(vals)


def split_point(word, N, cfg: EvalConfig) -> float:
    m = _min_shifted(word, N)
    p = cfg.split
    if max(p, (1 - p) / m) <= cfg.max_ratio:
        return p
    # balances p against (1 - p) / m
    return 1 / (1 + m)


def _eval_word(word, N, dps, split):
    with mpmath.workdps(dps):
        args = _letters_to_args(word, N)
        p = mpmath.mpf(split)
        q = 1 - p
        depth = sum(1 for x in word if x != A)
        total = mpmath.mpc(0)
        digits = dps + 5
        for k in range(len(word) + 1):
            left = [1 - c for c in reversed(args[:k])]
            right = args[k:]
            gl = _G(left, q, digits) if left else mpmath.mpc(1)
            gr = _G(right, p, digits) if right else mpmath.mpc(1)
            total += -gl * gr if k % 2 else gl * gr
        return -total if depth % 2 else total


@lru_cache(maxsize=None)
def _eval_word_cached(word, N, dps, split):
    return _eval_word(word, N, dps, split)


def eval_word(word, ctx, cfg: EvalConfig = EvalConfig()):
    """``Z(word)`` for an admissible word, as an mpmath complex number."""
    N = as_level(ctx)
    word = tuple(word)
    if not is_admissible(word):
        raise DivergentIndexError(f"word {format_word(word)} is not admissible")
    if not word:
        return mpmath.mpc(1)
    split = split_point(word, N, cfg)
    val = _eval_word_cached(word, N, cfg.dps, split)
    if cfg.verify:
        other = _eval_word_cached(word, N, cfg.dps + 15, split)
        err = abs(val - other)
        if err > mpmath.mpf(10) ** (-cfg.precision):
            raise PrecisionError(
                "precision %d not reached for %s" % (cfg.precision, format_word(word)), err
            )
    return val


def eval_mpv(idx: MpvIndex, ctx, cfg: EvalConfig = EvalConfig()):
    """``L_N(s|i)`` to ``cfg.precision`` digits."""
    return eval_word(word_from_mpv(idx, ctx), ctx, cfg)


def eval_lincomb(x, ctx, cfg: EvalConfig = EvalConfig()):
    with mpmath.workdps(cfg.dps):
        return mpmath.fsum(c * eval_word(w, ctx, cfg) for w, c in sorted(x.items()))


def residual(relation, ctx=None, cfg: EvalConfig = EvalConfig()):
    """``|sum coef * Z(word)|`` for a relation (or any ``{word: coef}`` mapping)."""
    terms = getattr(relation, "terms", relation)
    if ctx is None:
        ctx = relation.level
    if not terms:
        return mpmath.mpf(0)
    with mpmath.workdps(cfg.dps):
        return abs(
            mpmath.fsum(
                mpmath.mpf(c.numerator) / c.denominator * eval_word(w, ctx, cfg)
                if hasattr(c, "denominator")
                else c * eval_word(w, ctx, cfg)
                for w, c in sorted(terms.items())
            )
        )
