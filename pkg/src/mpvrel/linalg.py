"""
Exact rank of sparse rational relation matrices and the dimension bounds.

Rows are reduced to integer vectors (content stripped) and inserted into a
semi-echelon basis one at a time; the pivot of a row is its lowest column.
Because rows are processed in order and the pivot rule is fixed, the basis is
a deterministic function of the input sequence.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

from sympy import primefactors, totient

from .algebra import LinComb, shuffle, stuffle
from .words import as_level, enumerate_admissible

log = logging.getLogger(__name__)

STANDARD_FAMILIES = ("fds", "rds", "seed", "fdt", "rdt", "lift")
# RDS rows used for bounds: the ``reg(b_0^m * u)`` form.  The ``v sha u - v * u``
# form spans more at weight >= 4 because it already contains lifted relations.
BOUND_RDS_STYLES = ("v",)
ALL_FAMILIES = STANDARD_FAMILIES + ("extra",)


def _primitive(row: dict) -> dict:
    """Integer multiple of a rational row with coprime entries and positive lead."""
    den = 1
    for c in row.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    ints = {k: int(c * den) for k, c in row.items() if c}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g == 0:
        return {}
    if ints[min(ints)] < 0:
        g = -g
    return {k: v // g for k, v in ints.items()}


def _strip_content(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g == 0:
        return {}
    return {k: v // g for k, v in row.items()}


class SparseRationalMatrix:
    """Rows are ``{column: Fraction}`` over a fixed ordered column list."""

    def __init__(self, columns: Iterable, rows: Iterable = ()):
        self.columns = list(columns)
        self.index = {c: k for k, c in enumerate(self.columns)}
        self.rows = []
        for r in rows:
            self.add_row(r)

    @classmethod
    def from_relations(cls, relations, columns):
        return cls(columns, (r.terms for r in relations))

    @property
    def shape(self):
        return len(self.rows), len(self.columns)

    def add_row(self, row):
        """Append a row given as ``{column_key: coef}``; zero entries are dropped."""
        out = {}
        for key, c in row.items():
            if c:
                out[self.index[key]] = Fraction(c)
        self.rows.append(out)

    def triplets(self):
        for i, row in enumerate(self.rows):
            for j in sorted(row):
                yield i, j, row[j]

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            for i, j, c in self.triplets():
                w.writerow([i, j, str(c)])

    @classmethod
    def from_csv(cls, path, columns):
        m = cls(columns)
        rows = {}
        with open(path, newline="") as fh:
            for i, j, c in csv.reader(fh):
                rows.setdefault(int(i), {})[int(j)] = Fraction(c)
        for i in range(max(rows) + 1 if rows else 0):
            m.rows.append(rows.get(i, {}))
        return m

    def rank(self) -> int:
        return rank(self.rows)


class EchelonBasis:
    """Incremental exact row space over integer-indexed columns."""

    def __init__(self):
        self.pivots = {}  # pivot column -> primitive integer row

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Integer row equivalent to ``row`` modulo the span, with no pivot leading."""
        row = _primitive(row)
        pivots = self.pivots
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                return row
            a, b = p[c], row[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            if fa != 1:
                row = {k: v * fa for k, v in row.items()}
            for k, v in p.items():
                nv = row.get(k, 0) - fb * v
                if nv:
                    row[k] = nv
                else:
                    del row[k]
            row = _strip_content(row)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True when the rank grew."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rows(self):
        return [self.pivots[c] for c in sorted(self.pivots)]


def rank(rows: Iterable[dict]) -> int:
    """Exact rank over Q of sparse rows with comparable column keys."""
    basis = EchelonBasis()
    for r in rows:
        basis.add(r)
    return basis.rank


# ---------------------------------------------------------------------------
# arithmetic functions and the Deligne-Goncharov bound


def euler_phi(N: int) -> int:
    return int(totient(N))


def nu(N: int) -> int:
    """Number of distinct prime factors."""
    return len(primefactors(N))


@dataclass(frozen=True)
class DGParams:
    N: int
    a: int
    b: int

    @classmethod
    def of(cls, ctx):
        N = as_level(ctx)
        if N < 3:
            raise ValueError("a, b are defined for N >= 3")
        return cls(N, euler_phi(N) // 2 + nu(N), nu(N) - 1)


def dg_series(w: int, ctx) -> list:
    """Coefficients ``D(0..w, N)`` of the generating series."""
    N = as_level(ctx)
    if N == 1:
        # (1 - t^2 - t^3)^-1
        out = [1]
        for k in range(1, w + 1):
            out.append((out[k - 2] if k >= 2 else 0) + (out[k - 3] if k >= 3 else 0))
        return out
    if N == 2:
        a, b = 1, -1
    else:
        p = DGParams.of(N)
        a, b = p.a, p.b
    out = [1, a]
    for k in range(2, w + 1):
        out.append(a * out[k - 1] - b * out[k - 2])
    return out[: w + 1]


def dg_bound(w: int, ctx) -> int:
    if w < 1:
        raise ValueError("weight must be >= 1")
    return dg_series(w, ctx)[w]


# ---------------------------------------------------------------------------
# the SR bound


def parse_families(spec) -> tuple:
    """``"fds,rds,lift"`` or an iterable -> validated tuple in canonical order."""
    if spec is None:
        return STANDARD_FAMILIES
    if isinstance(spec, str):
        spec = [s.strip().lower() for s in spec.split(",") if s.strip()]
    spec = set(spec)
    bad = spec - set(ALL_FAMILIES)
    if bad:
        raise ValueError("unknown families: %s" % ", ".join(sorted(bad)))
    return tuple(f for f in ALL_FAMILIES if f in spec)


def family_generators(weight: int, N: int, fam: str) -> list:
    """Relations of one family at exactly this weight (lifts excluded)."""
    from . import distribution, relations

    if fam == "fds":
        return relations.gen_fds(weight, N)
    if fam == "rds":
        return relations.gen_rds(weight, N, styles=BOUND_RDS_STYLES)
    if fam == "seed":
        return relations.gen_weight_one(N) if weight == 1 else relations.gen_seeded(weight, N)
    if fam == "fdt":
        return distribution.gen_fdt(weight, N) if weight >= 2 else []
    if fam == "rdt":
        return distribution.gen_rdt(weight, N) if weight >= 2 else []
    if fam == "extra":
        return relations.extra_relations(weight, N)
    raise ValueError(fam)


@dataclass
class BoundResult:
    weight: int
    level: int
    families: tuple
    mpvs: int
    rank: int
    increments: list = field(default_factory=list)  # [(family, rank gain)]

    @property
    def bound(self):
        return self.mpvs - self.rank

    def summary(self) -> dict:
        return {
            "w": self.weight,
            "N": self.level,
            "families": list(self.families),
            "mpvs": self.mpvs,
            "rank": self.rank,
            "SR": self.bound,
            "D": dg_bound(self.weight, self.level) if self.weight >= 1 else None,
            "increments": [{"family": f, "rank_gain": g} for f, g in self.increments],
        }


class RelationSpace:
    """Span of the selected relation families, weight by weight.

    The ``lift`` family multiplies a basis of the lower-weight spans by every
    admissible word of the complementary weight.  This has the same span as
    lifting each generator separately, since products are associative.
    Stuffle lifts are added only when ``fds`` is not selected; otherwise they
    agree with shuffle lifts modulo finite double shuffle relations.
    """

    def __init__(self, ctx, families=None):
        self.N = as_level(ctx)
        self.families = parse_families(families)
        self._results = {}
        self._bases = {}  # weight -> (columns, EchelonBasis)

    def _lift_products(self):
        return ("shuffle",) if "fds" in self.families else ("shuffle", "stuffle")

    def compute(self, weight: int) -> BoundResult:
        if weight in self._results:
            return self._results[weight]
        N = self.N
        columns = enumerate_admissible(weight, N)
        col = {w: k for k, w in enumerate(columns)}
        basis = EchelonBasis()
        incr = []

        def feed(name, rows):
            before = basis.rank
            for r in rows:
                basis.add({col[w]: c for w, c in r.items()})
            incr.append((name, basis.rank - before))
            log.debug("w=%d N=%d %s: +%d", weight, N, name, basis.rank - before)

        for fam in self.families:
            if fam == "lift":
                if weight >= 3:
                    feed("lift", self._lifted_rows(weight))
                continue
            if fam == "seed" and weight == 1 and N < 3:
                continue
            if weight == 1 and fam not in ("seed", "extra"):
                continue
            feed(fam, (r.terms for r in family_generators(weight, N, fam)))
        res = BoundResult(weight, N, self.families, len(columns), basis.rank, incr)
        self._results[weight] = res
        self._bases[weight] = (columns, basis)
        return res

    def basis_lincombs(self, weight: int) -> list:
        self.compute(weight)
        columns, basis = self._bases[weight]
        return [LinComb({columns[k]: v for k, v in row.items()}) for row in basis.rows()]

    def _lifted_rows(self, weight):
        N = self.N
        for v in range(2, weight):
            words = enumerate_admissible(weight - v, N)
            for x in self.basis_lincombs(v):
                for u in words:
                    for which in self._lift_products():
                        yield shuffle(x, u) if which == "shuffle" else stuffle(x, u, N)


def sr_bound(w: int, ctx, families=None) -> int:
    """Number of admissible words minus the rank of the selected relations."""
    return RelationSpace(ctx, families).compute(w).bound


def bound_report(w: int, ctx, families=None) -> BoundResult:
    return RelationSpace(ctx, families).compute(w)


# ---------------------------------------------------------------------------
# weight two report


@dataclass
class Weight2Report:
    N: int
    SR: int
    D: int
    k: Optional[int] = None
    delta1: int = 0
    i: Optional[int] = None
    delta2: Optional[int] = None
    d: Optional[int] = None
    nonstandard: Optional[int] = None
    flags: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def delta1(N: int) -> int:
    """Dimension of the weight-one depth-one graded piece."""
    if N == 1:
        return 0
    if N == 2:
        return 1
    return euler_phi(N) // 2 + nu(N) - 1


def weight2_report(ctx, k: Optional[int] = None, sr: Optional[int] = None) -> Weight2Report:
    """Derived weight-two quantities; ``k`` is external input (never computed)."""
    N = as_level(ctx)
    SR = sr_bound(2, N) if sr is None else sr
    D = dg_bound(2, N)
    rep = Weight2Report(N=N, SR=SR, D=D, k=k, delta1=delta1(N))
    if k is None:
        return rep
    if k < 0:
        rep.flags.append("k is negative")
    d1 = rep.delta1
    rep.i = d1 * (d1 - 1) // 2 - k
    rep.delta2 = rep.i if N <= 2 else euler_phi(N) // 2 + rep.i
    rep.d = D - k
    rep.nonstandard = SR - rep.d
    for name in ("i", "delta2", "d", "nonstandard"):
        if getattr(rep, name) < 0:
            rep.flags.append("%s is negative" % name)
    return rep
