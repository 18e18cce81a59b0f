"""
Generators for the standard Q-linear relations among MPVs.

Each generator returns a list of :class:`Relation`; every relation asserts
``sum coef * Z(word) = 0`` over admissible words of one weight.  Families:

* ``FDS``  finite double shuffle ``Z(u sha v - u * v) = 0``
* ``RDS``  regularized double shuffle (``b_0^m * u`` and ``reg_sha(v sha u - v * u)``)
* ``SEED`` weight-one relations multiplied up to weight ``w``
* ``FDT``/``RDT`` finite / regularized distribution (see :mod:`mpvrel.distribution`)
* ``LIFT`` lower-weight relations multiplied by admissible words
* ``EXTRA`` numerically discovered non-standard relations (never counted as standard)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra import LinComb, shuffle, stuffle
from .regularization import regularize
from .words import (
    MpvIndex,
    as_level,
    b,
    enumerate_A1,
    enumerate_admissible,
    format_word,
    is_admissible,
    word_from_mpv,
    word_to_index,
)

log = logging.getLogger(__name__)

FAMILIES = ("FDS", "RDS", "SEED", "FDT", "RDT", "LIFT", "EXTRA")


@dataclass
class Relation:
    weight: int
    level: int
    terms: dict  # admissible word -> Fraction
    family: str
    params: dict = field(default_factory=dict)

    @classmethod
    def from_lincomb(cls, x, level, family, params=None, weight=None):
        """Build a relation, or return ``None`` when ``x`` is identically zero."""
        terms = {}
        for w, c in LinComb.coerce(x).items():
            if c:
                if not is_admissible(w):
                    raise ValueError(f"relation term {format_word(w)} is not admissible")
                terms[w] = Fraction(c)
        if not terms:
            return None
        weights = {len(w) for w in terms}
        if len(weights) != 1:
            raise ValueError(f"relation mixes weights {sorted(weights)}")
        (wt,) = weights
        if weight is not None and wt != weight:
            raise ValueError(f"expected weight {weight}, got {wt}")
        return cls(wt, level, terms, family, dict(params or {}))

    def normalized_terms(self) -> tuple:
        """Terms scaled so the first coefficient in canonical order is 1."""
        items = sorted(self.terms.items())
        lead = items[0][1]
        return tuple((w, c / lead) for w, c in items)

    def key(self):
        return (self.weight, self.level, self.normalized_terms())

    def integer_vector(self) -> dict:
        """Primitive integer multiple of the coefficient vector."""
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = {w: int(c * den) for w, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        return {w: v // g for w, v in ints.items()}

    def as_lincomb(self) -> LinComb:
        return LinComb(self.terms)

    def __str__(self):
        N = self.level
        parts = []
        for w, c in sorted(self.terms.items()):
            s, i = word_to_index(w, N)
            parts.append("%s*%s" % (c, MpvIndex(s, i).text(N)))
        return "%s: %s = 0" % (self.family, " + ".join(parts))


def dedup(relations):
    """Drop relations proportional to an earlier one, keeping first occurrences."""
    seen = set()
    out = []
    for r in relations:
        if r is None:
            continue
        k = r.key()
        if k in seen:
            continue
        seen.add(k)
        out.append(r)
    return out


def canonical_sort(relations):
    return sorted(relations, key=lambda r: (FAMILIES.index(r.family), r.normalized_terms()))


# ---------------------------------------------------------------------------
# double shuffle


def fds_pairs(weight: int, ctx, unordered: bool = True):
    """Pairs ``(u, v)`` of admissible words with ``|u| <= |v|`` and ``|u| + |v| = weight``.

    With ``unordered=False`` equal-weight pairs are listed in both orders,
    which is how FDS are counted in the literature.
    """
    N = as_level(ctx)
    for k in range(1, weight // 2 + 1):
        left = enumerate_admissible(k, N)
        right = enumerate_admissible(weight - k, N)
        for u in left:
            for v in right:
                if k == weight - k and unordered and v < u:
                    continue
                yield u, v


def fds_relation(u, v, ctx, family="FDS", params=None):
    N = as_level(ctx)
    x = shuffle(u, v) - stuffle(u, v, N)
    if params is None:
        params = {"u": format_word(u), "v": format_word(v)}
    return Relation.from_lincomb(x, N, family, params)


def gen_fds(weight: int, ctx) -> list:
    N = as_level(ctx)
    if weight < 2:
        return []
    return dedup(fds_relation(u, v, N) for u, v in fds_pairs(weight, N))


def rds_relations_v(weight: int, ctx):
    """``Z(reg_sha(b_0^m * u)) = 0`` for ``1 <= m < weight``, ``u`` admissible."""
    N = as_level(ctx)
    for m in range(1, weight):
        head = (b(0),) * m
        for u in enumerate_admissible(weight - m, N):
            if not u:
                continue
            x = regularize(stuffle(head, u, N), "shuffle")
            yield Relation.from_lincomb(
                x, N, "RDS", {"style": "v", "m": m, "u": format_word(u)}
            )


def rds_relations_iv(weight: int, ctx):
    """``Z(reg_sha(v sha u - v * u)) = 0`` for ``v`` in ``A^1`` starting with ``b_0``."""
    N = as_level(ctx)
    for k in range(1, weight):
        for v in enumerate_A1(k, N, leading_b0=True):
            for u in enumerate_admissible(weight - k, N):
                x = regularize(shuffle(v, u) - stuffle(v, u, N), "shuffle")
                yield Relation.from_lincomb(
                    x, N, "RDS", {"style": "iv", "w1": format_word(v), "w0": format_word(u)}
                )


def gen_rds(weight: int, ctx, styles=("v", "iv")) -> list:
    if weight < 2:
        return []
    out = []
    if "v" in styles:
        out.extend(rds_relations_v(weight, ctx))
    if "iv" in styles:
        out.extend(rds_relations_iv(weight, ctx))
    return dedup(out)


# ---------------------------------------------------------------------------
# weight one and seeded


def _L1(j, N):
    return (b(j % N),)


def gen_weight_one(ctx) -> list:
    """Symmetric and distribution relations among ``L_N(1|j) = -log(1 - mu^j)``."""
    N = as_level(ctx)
    if N < 3:
        log.warning("no weight-one relations are generated for level N=%d < 3", N)
        return []
    out = []
    base = LinComb.word(_L1(1, N)) - LinComb.word(_L1(N - 1, N))
    for j in range(2, (N + 1) // 2):
        if 2 * j >= N:
            break
        x = (LinComb.word(_L1(j, N)) - LinComb.word(_L1(N - j, N))) * (N - 2) - base * (N - 2 * j)
        out.append(Relation.from_lincomb(x, N, "SEED", {"kind": "symmetric", "j": j}))
    for d in range(2, N + 1):
        if N % d:
            continue
        dp = N // d
        for a in range(1, dp):
            x = LinComb()
            for j in range(d):
                x.add_term(_L1(a + j * dp, N), 1)
            x.add_term(_L1(a * d, N), -1)
            out.append(
                Relation.from_lincomb(x, N, "SEED", {"kind": "distribution", "d": d, "a": a})
            )
    return dedup(out)


def lift(relation: Relation, u, which: str, family="LIFT", params=None):
    """Multiply a relation by the admissible word ``u`` with either product."""
    N = relation.level
    x = LinComb(relation.terms)
    y = shuffle(x, u) if which == "shuffle" else stuffle(x, u, N)
    p = {"product": which, "by": format_word(u)}
    p.update(params or {})
    return Relation.from_lincomb(x=y, level=N, family=family, params=p)


def gen_seeded(weight: int, ctx, products=("stuffle", "shuffle")) -> list:
    N = as_level(ctx)
    if weight < 2 or N < 4:
        return []
    seeds = gen_weight_one(N)
    out = []
    for k, r in enumerate(seeds):
        for u in enumerate_admissible(weight - 1, N):
            for which in products:
                out.append(lift(r, u, which, "SEED", dict(r.params, seed=k)))
    return dedup(out)


def gen_lifted(weight: int, ctx, base_families=None, products=("shuffle", "stuffle")) -> list:
    """Relations of lower weight (RDS incl. FDS, and RDT by default) times admissible words."""
    from .distribution import gen_rdt

    N = as_level(ctx)
    if weight < 3:
        return []
    if base_families is None:
        base_families = {
            "RDS": lambda v: gen_fds(v, N) + gen_rds(v, N),
            "RDT": lambda v: gen_rdt(v, N),
        }
    out = []
    for v in range(2, weight):
        words = enumerate_admissible(weight - v, N)
        for fam, gen in base_families.items():
            for k, r in enumerate(gen(v)):
                for u in words:
                    for which in products:
                        out.append(lift(r, u, which, params={"base": fam, "base_weight": v, "base_index": k}))
    return dedup(out)


# ---------------------------------------------------------------------------
# non-standard relations found numerically


def _L(N, s, i):
    return word_from_mpv(MpvIndex(s, i), N)


def _wt2(N, pairs, singles):
    """``sum c L_N(1,1|i,j) + sum c L_N(2|j)`` from ``{(i, j): c}`` and ``{j: c}``."""
    x = LinComb()
    for (i, j), c in pairs.items():
        x.add_term(_L(N, (1, 1), (i, j)), c)
    for j, c in singles.items():
        x.add_term(_L(N, (2,), (j,)), c)
    return x


def extra_relations(weight: int, ctx) -> list:
    """Hard-coded non-standard relations at ``(w, N)`` in {(2,8), (2,10), (2,12), (3,4)}."""
    N = as_level(ctx)
    rels = []
    if (weight, N) == (2, 8):
        x = _wt2(
            8,
            {(1, 1): -37, (3, 1): 112, (3, 0): 11, (2, 6): -2, (7, 3): 3,
             (5, 7): -111, (7, 7): 38, (5, 5): -8},
            {5: 34, 1: 37},
        )
        rels.append(("conj2", x))
    elif (weight, N) == (2, 10):
        x = _wt2(
            10,
            {(5, 2): -7, (2, 5): -7, (4, 2): -467, (8, 6): 467, (5, 6): 14,
             (9, 8): 64, (9, 4): -164, (7, 9): 166, (8, 1): -260, (3, 9): -66,
             (6, 9): -7, (6, 5): 7},
            {1: 72, 7: 265},
        )
        rels.append(("conj3", x))
    elif (weight, N) == (2, 12):
        x1 = _wt2(
            12,
            {(8, 7): -1, (8, 10): 8, (10, 11): -6, (9, 11): -8, (10, 9): 1,
             (8, 1): -15, (9, 10): 5, (6, 1): 5, (1, 1): -1, (8, 11): 6,
             (6, 11): -11, (8, 3): 8, (11, 8): -1},
            {5: 5},
        )
        x2 = _wt2(
            12,
            {(8, 11): -60, (8, 7): 38, (10, 11): 348, (9, 11): 502, (10, 9): -492,
             (8, 1): 600, (9, 10): -552, (11, 10): -154, (6, 1): 20, (6, 11): 261,
             (8, 3): -502, (11, 8): 221, (8, 10): -319},
            {},
        )
        x3 = _wt2(
            12,
            {(1, 1): -221, (8, 10): 1854, (8, 7): 562, (10, 11): -1018,
             (9, 11): -2416, (10, 9): 319, (8, 1): -4270, (9, 10): 2293,
             (11, 10): 956, (6, 1): 1110, (8, 11): 2416, (6, 11): -3305,
             (8, 3): 2416},
            {},
        )
        rels.extend([("level12a", x1), ("level12b", x2), ("level12c", x3)])
    elif (weight, N) == (3, 4):
        terms = [
            (-5, (1, 2), (2, 3)),
            (46, (1, 1, 1), (1, 0, 0)),
            (-7, (1, 1, 1), (2, 2, 1)),
            (-13, (1, 1, 1), (1, 1, 1)),
            (13, (1, 2), (3, 1)),
            (-1, (1, 1, 1), (3, 2, 0)),
            (25, (1, 1, 1), (3, 0, 0)),
            (-8, (1, 1, 1), (1, 1, 2)),
            (18, (2, 1), (3, 0)),
        ]
        x = LinComb()
        for c, s, i in terms:
            x.add_term(_L(4, s, i), c)
        rels.append(("conj1", x))
    return [Relation.from_lincomb(x, N, "EXTRA", {"name": name}) for name, x in rels]
