"""Reading and writing relations, verification reports and bound summaries."""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction

from .relations import Relation
from .words import MpvIndex, index_to_word, word_to_index


def coef_text(c) -> str:
    c = Fraction(c)
    return "%d/%d" % (c.numerator, c.denominator)


def relation_to_dict(r: Relation) -> dict:
    terms = []
    for w, c in sorted(r.terms.items()):
        s, i = word_to_index(w, r.level)
        terms.append({"s": list(s), "i": list(i), "coef": coef_text(c)})
    return {"w": r.weight, "N": r.level, "family": r.family, "params": r.params, "terms": terms}


def relation_from_dict(d: dict) -> Relation:
    N = int(d["N"])
    terms = {}
    for t in d["terms"]:
        idx = MpvIndex(tuple(t["s"]), tuple(t["i"]))
        if not idx.is_convergent(N):
            raise ValueError("divergent index %s in relation" % idx.text(N))
        w = index_to_word(idx.s, idx.i, N)
        terms[w] = terms.get(w, 0) + Fraction(t["coef"])
    terms = {w: c for w, c in terms.items() if c}
    if not terms:
        raise ValueError("relation has no nonzero terms")
    r = Relation(int(d["w"]), N, terms, d["family"], dict(d.get("params") or {}))
    if any(len(w) != r.weight for w in terms):
        raise ValueError("term weight does not match declared weight %d" % r.weight)
    return r


def atomic_write(path, text: str):
    """Write ``text`` to ``path`` via a temporary file and rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps_relations(relations) -> str:
    return "".join(json.dumps(relation_to_dict(r), sort_keys=True) + "\n" for r in relations)


def write_relations(path, relations):
    atomic_write(path, dumps_relations(relations))


def read_relations(path) -> list:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(relation_from_dict(json.loads(line)))
    return out


def verification_record(r: Relation, residual, precision: int) -> dict:
    import mpmath

    return {
        "family": r.family,
        "params": r.params,
        "residual": mpmath.nstr(residual, 6, min_fixed=1, max_fixed=0) if residual else "0",
        "precision": precision,
    }


def write_jsonl(path, records):
    atomic_write(path, "".join(json.dumps(x, sort_keys=True) + "\n" for x in records))


def write_json(path, obj):
    atomic_write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")
