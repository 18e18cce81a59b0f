"""
Letters, words and MPV indices at level ``N``.

A word is a plain tuple of small integers: ``0`` is the letter ``a = dt/t``
and ``j + 1`` is ``b_j = mu^j dt / (1 - mu^j t)``.  With this encoding the
tuple order is the canonical lexicographic order ``a < b_0 < ... < b_{N-1}``
used for every matrix column in the package.

The generator ``y_{s,i}`` is the word ``a^{s-1} b_i``; a word in ``A^1``
(ending with a ``b``-letter) factors uniquely into such generators.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

A = 0

Word = tuple  # tuple[int, ...]
EMPTY: Word = ()


class DivergentIndexError(ValueError):
    """Raised for an MPV index with ``(s_1, i_1) = (1, 0)``."""


class NotAdmissibleError(ValueError):
    pass


def b(i: int) -> int:
    """Letter code of ``b_i`` (``i`` already reduced mod ``N``)."""
    return i + 1


def residue(letter: int) -> int:
    if letter == A:
        raise ValueError("the letter a carries no residue")
    return letter - 1


@dataclass(frozen=True)
class LevelContext:
    N: int

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 1:
            raise ValueError(f"level must be a positive integer, got {self.N!r}")

    def mu(self):
        """The primitive root ``exp(2 pi i / N)`` at the current mpmath precision."""
        import mpmath

        return mpmath.expjpi(mpmath.mpf(2) / self.N)

    def letters(self) -> tuple:
        return (A,) + tuple(b(i) for i in range(self.N))


def as_level(ctx) -> int:
    """Accept either a :class:`LevelContext` or a bare integer level."""
    if isinstance(ctx, LevelContext):
        return ctx.N
    return LevelContext(ctx).N


class YFactor(NamedTuple):
    """The generator ``y_{s,i} = a^{s-1} b_i``."""

    s: int
    i: int

    def word(self) -> Word:
        return (A,) * (self.s - 1) + (b(self.i),)


@dataclass(frozen=True)
class MpvIndex:
    """``L_N(s_1..s_l | i_1..i_l)``; the ``i`` are increments, not partial sums."""

    s: tuple
    i: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        object.__setattr__(self, "i", tuple(int(x) for x in self.i))
        if len(self.s) != len(self.i):
            raise ValueError("s and i must have the same length")
        if any(x < 1 for x in self.s):
            raise ValueError("exponents must be positive")

    @property
    def weight(self) -> int:
        return sum(self.s)

    @property
    def depth(self) -> int:
        return len(self.s)

    def reduced(self, N: int) -> "MpvIndex":
        return MpvIndex(self.s, tuple(x % N for x in self.i))

    def is_convergent(self, N: int) -> bool:
        return not self.s or not (self.s[0] == 1 and self.i[0] % N == 0)

    def text(self, N: int) -> str:
        idx = self.reduced(N)
        return "L[%s|%s]@N=%d" % (
            ",".join(map(str, idx.s)),
            ",".join(map(str, idx.i)),
            N,
        )


def is_in_A1(w: Sequence[int]) -> bool:
    """True for words not ending with ``a`` (the empty word included)."""
    return not w or w[-1] != A


def is_admissible(w: Sequence[int]) -> bool:
    """Not beginning with ``b_0`` and not ending with ``a``."""
    if not w:
        return True
    return w[0] != b(0) and w[-1] != A


def depth(w: Sequence[int]) -> int:
    return sum(1 for x in w if x != A)


def y_factors(w: Sequence[int]) -> list:
    """Split a word of ``A^1`` into its ``y_{s,i}`` generators."""
    if not is_in_A1(w):
        raise NotAdmissibleError(f"word {format_word(w)} ends with a")
    out = []
    s = 1
    for x in w:
        if x == A:
            s += 1
        else:
            out.append(YFactor(s, x - 1))
            s = 1
    return out


def word_from_y(factors: Iterable) -> Word:
    out = []
    for s, i in factors:
        out.extend((A,) * (s - 1))
        out.append(b(i))
    return tuple(out)


def word_from_mpv(idx: MpvIndex, ctx) -> Word:
    """``L_N(s|i) = Z(y_{s_1,i_1} y_{s_2,i_1+i_2} ...)``."""
    N = as_level(ctx)
    if not idx.is_convergent(N):
        raise DivergentIndexError(
            f"{idx.text(N)} diverges: (s_1, i_1) = (1, 0) mod {N}"
        )
    return index_to_word(idx.s, idx.i, N)


def index_to_word(s: Sequence[int], i: Sequence[int], N: int) -> Word:
    """Partial-sum encoding without the convergence check (valid on all of ``A^1``)."""
    out = []
    acc = 0
    for sk, ik in zip(s, i):
        acc = (acc + ik) % N
        out.extend((A,) * (sk - 1))
        out.append(acc + 1)
    return tuple(out)


def word_to_index(w: Sequence[int], N: int) -> tuple:
    """Inverse of :func:`index_to_word` on ``A^1``; returns ``(s, i)`` tuples."""
    s, i = [], []
    prev = 0
    for f in y_factors(w):
        s.append(f.s)
        i.append((f.i - prev) % N)
        prev = f.i
    return tuple(s), tuple(i)


def mpv_from_word(w: Sequence[int], ctx) -> MpvIndex:
    N = as_level(ctx)
    if not is_admissible(w):
        raise NotAdmissibleError(f"word {format_word(w)} is not admissible")
    s, i = word_to_index(w, N)
    return MpvIndex(s, i)


def enumerate_admissible(weight: int, ctx) -> list:
    """All admissible words of the given weight in canonical order."""
    N = as_level(ctx)
    if weight < 0:
        raise ValueError("weight must be non-negative")
    if weight == 0:
        return [EMPTY]
    bs = [b(i) for i in range(N)]
    if weight == 1:
        return [(x,) for x in bs[1:]]
    first = [A] + bs[1:]
    middle = [A] + bs
    return [
        (f,) + mid + (l,)
        for f in first
        for mid in itertools.product(middle, repeat=weight - 2)
        for l in bs
    ]


def count_admissible(weight: int, N: int) -> int:
    if weight == 0:
        return 1
    if weight == 1:
        return N - 1
    return N * N * (N + 1) ** (weight - 2)


def enumerate_A1(weight: int, N: int, leading_b0=None) -> list:
    """Words of ``A^1`` of a given weight, optionally filtered on a leading ``b_0``."""
    if weight == 0:
        return [EMPTY] if not leading_b0 else []
    letters = [A] + [b(i) for i in range(N)]
    out = []
    for head in itertools.product(letters, repeat=weight - 1):
        for last in range(1, N + 1):
            w = head + (last,)
            if leading_b0 is None or (w[0] == b(0)) == leading_b0:
                out.append(w)
    return out


def leading_b0(w: Sequence[int]) -> int:
    n = 0
    for x in w:
        if x != b(0):
            break
        n += 1
    return n


# ---------------------------------------------------------------------------
# textual forms


def format_word(w: Sequence[int]) -> str:
    """``y(1,1)y(2,1)y(2,0)`` for words of ``A^1``; letter form otherwise."""
    if not w:
        return "1"
    if is_in_A1(w):
        return "".join("y(%d,%d)" % f for f in y_factors(w))
    return " ".join("a" if x == A else "b%d" % (x - 1) for x in w)


_Y_RE = re.compile(r"y\((\d+),(\d+)\)")
_IDX_RE = re.compile(r"^L\[([\d,]*)\|([\d,\-]*)\](?:@N=(\d+))?$")


def parse_word(text: str, N: int = None) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return EMPTY
    if text.startswith("y"):
        pos = 0
        factors = []
        for m in _Y_RE.finditer(text):
            if m.start() != pos:
                raise ValueError(f"cannot parse word {text!r}")
            s, i = int(m.group(1)), int(m.group(2))
            factors.append((s, i % N if N else i))
            pos = m.end()
        if pos != len(text):
            raise ValueError(f"cannot parse word {text!r}")
        return word_from_y(factors)
    out = []
    for tok in text.split():
        if tok == "a":
            out.append(A)
        elif tok.startswith("b"):
            i = int(tok[1:])
            out.append(b(i % N if N else i))
        else:
            raise ValueError(f"cannot parse letter {tok!r}")
    return tuple(out)


def parse_index(text: str) -> tuple:
    """Parse ``L[1,2,2|1,0,2]@N=3`` into ``(MpvIndex, N or None)``."""
    m = _IDX_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse index {text!r}")
    s = [int(x) for x in m.group(1).split(",") if x]
    i = [int(x) for x in m.group(2).split(",") if x]
    N = int(m.group(3)) if m.group(3) else None
    return MpvIndex(s, i), N
