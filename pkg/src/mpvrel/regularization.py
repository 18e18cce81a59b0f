"""
Shuffle and stuffle regularization.

Both ``(A^1, sha)`` and ``(A^1, *)`` are polynomial rings over the admissible
subalgebra in the single generator ``b_0``.  :func:`decompose` writes a word
as such a polynomial and renames ``b_0`` to ``T``; evaluating at ``T = 0``
gives ``reg``.  :func:`rho_map` applies the correction that carries the
stuffle-regularized polynomial to the shuffle-regularized one, with
``zeta(n)`` kept as the symbol ``a^{n-1} b_0``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .algebra import LinComb, product, shuffle, stuffle_power, shuffle_power
from .words import A, EMPTY, NotAdmissibleError, as_level, b, is_in_A1, leading_b0

B0 = b(0)


class TPolynomial:
    """Polynomial in ``T`` with :class:`LinComb` coefficients (index = power of ``T``)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = [LinComb.coerce(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = coeffs

    @classmethod
    def constant(cls, x):
        return cls([x])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else LinComb()

    def __eq__(self, other):
        return isinstance(other, TPolynomial) and self.coeffs == other.coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return TPolynomial([self[k] + other[k] for k in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return TPolynomial([self[k] - other[k] for k in range(n)])

    def scale(self, c):
        return TPolynomial([x * c for x in self.coeffs])

    def shift(self):
        """Multiply by ``T``."""
        return TPolynomial([LinComb()] + self.coeffs) if self.coeffs else TPolynomial()

    def multiply(self, other, mul):
        """Product of polynomials with ``mul`` (a bilinear LinComb product) on coefficients."""
        if not self.coeffs or not other.coeffs:
            return TPolynomial()
        out = [LinComb() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j].iadd(mul(x, y))
        return TPolynomial(out)

    def at_zero(self) -> LinComb:
        return LinComb(self[0])

    def __repr__(self):
        return "TPolynomial(%r)" % (self.coeffs,)


def _check_A1(x):
    for w in x:
        if not is_in_A1(w):
            raise NotAdmissibleError("regularization is defined on A^1 only")


@lru_cache(maxsize=None)
def _decompose_word(which, N, w):
    # returns a tuple of coefficient dicts
    r = leading_b0(w)
    if r == 0:
        return ({w: 1},)
    # b_0 . (b_0^{r-1} u) = (r) b_0^r u + rest  under the chosen product
    tail = w[1:]
    mul = product(which, N)
    prod = mul((B0,), tail)
    rest = LinComb()
    for v, c in prod.items():
        if v != w:
            rest.add_term(v, c)
    assert prod.get(w) == r, "leading-b_0 coefficient mismatch"
    out = TPolynomial(_decompose_word(which, N, tail)).shift()
    for v, c in rest.items():
        out = out - TPolynomial(_decompose_word(which, N, v)).scale(c)
    out = out.scale(Fraction(1, r))
    return tuple(dict(c) for c in out.coeffs)


def decompose(x, which: str, ctx=None) -> TPolynomial:
    """Write ``x`` in ``A^1`` as a polynomial in ``b_0`` over admissible words, ``b_0 -> T``."""
    N = as_level(ctx) if which == "stuffle" else (as_level(ctx) if ctx is not None else 0)
    x = LinComb.coerce(x)
    _check_A1(x)
    out = TPolynomial()
    for w, c in x.items():
        out = out + TPolynomial(_decompose_word(which, N, w)).scale(c)
    return out


def decompose_shuffle(x) -> TPolynomial:
    return decompose(x, "shuffle")


def decompose_stuffle(x, ctx) -> TPolynomial:
    return decompose(x, "stuffle", ctx)


def regularize(x, which: str = "shuffle", ctx=None) -> LinComb:
    """``reg``: decompose, then keep the constant coefficient."""
    return decompose(x, which, ctx).at_zero()


def reconstruct(p: TPolynomial, which: str, ctx=None) -> LinComb:
    """Substitute ``b_0`` back for ``T`` and expand with the matching product."""
    out = LinComb()
    for k, c in enumerate(p.coeffs):
        if which == "shuffle":
            power = shuffle_power(LinComb.word((B0,)), k)
            out.iadd(shuffle(c, power))
        else:
            from .algebra import stuffle

            power = stuffle_power(LinComb.word((B0,)), k, ctx)
            out.iadd(stuffle(c, power, ctx))
    return out


# ---------------------------------------------------------------------------
# symbolic products of Z-values and the rho correction


class SymbolicMpvPoly(dict):
    """Q-combination of formal products of Z-values.

    Keys are sorted tuples of admissible words (a multiset; ``()`` is the
    constant 1).
    """

    @classmethod
    def one(cls):
        return cls({(): 1})

    @classmethod
    def from_lincomb(cls, x):
        return cls({((w,) if w else ()): c for w, c in LinComb.coerce(x).items()})

    def add_term(self, mono, c):
        if not c:
            return
        c = self.get(mono, 0) + c
        if c:
            self[mono] = c
        else:
            del self[mono]

    def __add__(self, other):
        out = SymbolicMpvPoly(self)
        for m, c in other.items():
            out.add_term(m, c)
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymbolicMpvPoly({m: c * other for m, c in self.items()} if other else {})
        out = SymbolicMpvPoly()
        for m1, c1 in self.items():
            for m2, c2 in other.items():
                out.add_term(tuple(sorted(m1 + m2)), c1 * c2)
        return out

    __rmul__ = __mul__

    def weight(self):
        return {sum(len(w) for w in m) for m in self}

    def to_lincomb(self) -> LinComb:
        """Expand every product with the shuffle product (``Z`` is a shuffle morphism)."""
        out = LinComb()
        for mono, c in self.items():
            acc = LinComb.word(EMPTY)
            for w in mono:
                acc = shuffle(acc, w)
            out.iadd(acc, c)
        return out


def zeta_word(n: int):
    """The admissible word ``a^{n-1} b_0`` whose value is ``zeta(n)``."""
    return (A,) * (n - 1) + (B0,)


def rho_series(order: int) -> list:
    """Coefficients ``A_0..A_order`` of ``exp(sum_{n>=2} (-1)^n zeta(n) u^n / n)``."""
    S = [SymbolicMpvPoly() for _ in range(order + 1)]
    for n in range(2, order + 1):
        S[n] = SymbolicMpvPoly({(zeta_word(n),): Fraction((-1) ** n, n)})
    out = [SymbolicMpvPoly.one()]
    # k A_k = sum_n n S_n A_{k-n}
    for k in range(1, order + 1):
        acc = SymbolicMpvPoly()
        for n in range(2, k + 1):
            acc = acc + (S[n] * n) * out[k - n]
        out.append(acc * Fraction(1, k))
    return out


def rho_map(p: TPolynomial) -> list:
    """Apply ``rho``; returns the ``T``-coefficients as :class:`SymbolicMpvPoly`.

    ``rho(T^m) = sum_k m!/(m-k)! A_k T^(m-k)``.
    """
    m_max = p.degree
    if m_max < 0:
        return []
    A_ = rho_series(m_max)
    out = [SymbolicMpvPoly() for _ in range(m_max + 1)]
    for m, c in enumerate(p.coeffs):
        cs = SymbolicMpvPoly.from_lincomb(c)
        for k in range(0, m + 1):
            if not A_[k]:
                continue
            f = math.factorial(m) // math.factorial(m - k)
            out[m - k] = out[m - k] + (cs * A_[k]) * f
    return out


def rds_rho_relation(w, ctx) -> LinComb:
    """``Z(reg_sha(w)) - rho(Z^*(w))|_{T=0}`` expanded to a linear combination."""
    reg_sha = regularize(w, "shuffle")
    corrected = rho_map(decompose(w, "stuffle", ctx))
    const = corrected[0].to_lincomb() if corrected else LinComb()
    return reg_sha - const
