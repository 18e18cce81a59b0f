"""Command-line interface: ``python3 -m mpvrel <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from typing import Optional

import mpmath

from . import io as mio
from .linalg import (
    ALL_FAMILIES,
    SparseRationalMatrix,
    RelationSpace,
    dg_bound,
    family_generators,
    parse_families,
    weight2_report,
)
from .numeval import EvalConfig, residual
from .words import enumerate_admissible, mpv_from_word, format_word

log = logging.getLogger("mpvrel")

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_RESIDUAL = 3
EXIT_CONFIG = 4


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, "%s: error: %s\n" % (self.prog, message))


@dataclass
class RunConfig:
    weight: Optional[int] = None
    level: Optional[int] = None
    families: tuple = ()
    out: Optional[str] = None
    precision: int = 30
    threads: int = 1
    k_table: Optional[str] = None

    @classmethod
    def from_args(cls, args, default_families=None):
        cfg = cls(
            weight=getattr(args, "weight", None),
            level=getattr(args, "level", None),
            out=getattr(args, "out", None),
            precision=getattr(args, "precision", 30),
            threads=getattr(args, "threads", 1),
            k_table=getattr(args, "k_table", None),
        )
        try:
            cfg.families = parse_families(getattr(args, "families", None) or default_families)
        except ValueError as e:
            raise ConfigError(str(e))
        if cfg.weight is not None and cfg.weight < 1:
            raise ConfigError("weight must be >= 1")
        if cfg.level is not None and cfg.level < 1:
            raise ConfigError("level must be >= 1")
        if cfg.precision < 5:
            raise ConfigError("precision must be at least 5 digits")
        if cfg.threads < 1:
            raise ConfigError("threads must be >= 1")
        return cfg


def _require(cfg, *names):
    for n in names:
        if getattr(cfg, n) is None:
            raise ConfigError("--%s is required" % n)


def _emit(text, path=None):
    if path:
        mio.atomic_write(path, text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def paper_tables() -> dict:
    return json.loads(resources.files("mpvrel").joinpath("data/paper_tables.json").read_text())


# ---------------------------------------------------------------------------
# relation generation


def generate(weight, N, families) -> list:
    """All relations of the selected families at exactly this weight, canonically sorted."""
    from . import relations as R

    out = []
    for fam in families:
        if fam == "lift":
            if weight >= 3:
                out += R.gen_lifted(weight, N)
        elif weight >= 2 or fam in ("seed", "extra"):
            out += family_generators(weight, N, fam)
    return R.canonical_sort(R.dedup(out))


# ---------------------------------------------------------------------------
# commands


def cmd_enumerate(args) -> int:
    cfg = RunConfig.from_args(args)
    _require(cfg, "weight", "level")
    lines = []
    for k, w in enumerate(enumerate_admissible(cfg.weight, cfg.level)):
        lines.append("%d\t%s\t%s" % (k, mpv_from_word(w, cfg.level).text(cfg.level), format_word(w)))
    _emit("\n".join(lines), cfg.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    cfg = RunConfig.from_args(args)
    _require(cfg, "weight", "level")
    rels = generate(cfg.weight, cfg.level, cfg.families)
    text = mio.dumps_relations(rels)
    if cfg.out:
        mio.atomic_write(cfg.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bound(args) -> int:
    cfg = RunConfig.from_args(args)
    _require(cfg, "weight", "level")
    t0 = time.time()
    space = RelationSpace(cfg.level, cfg.families)
    res = space.compute(cfg.weight)
    summary = res.summary()
    summary["seconds"] = round(time.time() - t0, 3)
    if args.matrix:
        cols = enumerate_admissible(cfg.weight, cfg.level)
        m = SparseRationalMatrix(cols, space.basis_lincombs(cfg.weight))
        m.to_csv(args.matrix)
    _emit(json.dumps(summary, sort_keys=True), cfg.out)
    return EXIT_OK


def _residual_job(job):
    rel, precision = job
    return residual(rel, rel.level, EvalConfig(precision=precision))


def cmd_verify(args) -> int:
    cfg = RunConfig.from_args(args)
    if args.input:
        rels = mio.read_relations(args.input)
    else:
        _require(cfg, "weight", "level")
        rels = generate(cfg.weight, cfg.level, cfg.families)
    tol = mpmath.mpf(10) ** (-(args.tol if args.tol is not None else cfg.precision - 10))
    jobs = [(r, cfg.precision) for r in rels]
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as ex:
            values = list(ex.map(_residual_job, jobs, chunksize=8))
    else:
        values = [_residual_job(j) for j in jobs]
    records = [mio.verification_record(r, v, cfg.precision) for r, v in zip(rels, values)]
    failures = sum(1 for v in values if v >= tol)
    text = "".join(json.dumps(x, sort_keys=True) + "\n" for x in records)
    if cfg.out:
        mio.atomic_write(cfg.out, text)
    else:
        sys.stdout.write(text)
    worst = max(values) if values else mpmath.mpf(0)
    print(
        "verified %d relations, max residual %s, %d above %s"
        % (len(rels), mpmath.nstr(worst, 5), failures, mpmath.nstr(tol, 3)),
        file=sys.stderr,
    )
    return EXIT_RESIDUAL if failures else EXIT_OK


def _parse_levels(text):
    out = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out or min(out) < 1:
        raise ConfigError("bad level range %r" % text)
    return out


def cmd_table(args) -> int:
    cfg = RunConfig.from_args(args)
    try:
        levels = _parse_levels(args.levels)
    except ValueError:
        raise ConfigError("bad level range %r" % args.levels)
    paper = paper_tables()
    w = cfg.weight or 2
    if w == 2:
        ref = paper["weight2"]
        ref_sr = dict(zip(ref["N"], ref["SR"]))
        ref_d = dict(zip(ref["N"], ref["D"]))
    else:
        ref = paper["weights3to5"]
        ref_sr = dict(zip(ref["N"], ref["SR"].get(str(w), [])))
        ref_d = dict(zip(ref["N"], ref["D"].get(str(w), [])))
    rows = []
    mismatch = False
    for N in levels:
        D = dg_bound(w, N)
        row = {"w": w, "N": N, "D": D, "D_paper": ref_d.get(N)}
        row["D_match"] = None if row["D_paper"] is None else D == row["D_paper"]
        if not args.d_only:
            SR = RelationSpace(N, cfg.families).compute(w).bound
            row.update({"SR": SR, "SR_paper": ref_sr.get(N)})
            row["SR_match"] = None if row["SR_paper"] is None else SR == row["SR_paper"]
        for key in ("D_match", "SR_match"):
            if row.get(key) is False:
                mismatch = True
        rows.append(row)
        if not cfg.out:
            print(json.dumps(row, sort_keys=True), flush=True)
    if cfg.out:
        mio.write_jsonl(cfg.out, rows)
    return EXIT_MISMATCH if mismatch else EXIT_OK


def load_k_table(path) -> dict:
    """``{N: k}`` from a JSON object, or from the bundled-table layout."""
    if path == "paper":
        data = paper_tables()
    else:
        with open(path) as fh:
            data = json.load(fh)
    if "weight2" in data:
        data = dict(zip(data["weight2"]["N"], data["weight2"]["k"]))
    return {int(k): int(v) for k, v in data.items()}


def cmd_report(args) -> int:
    cfg = RunConfig.from_args(args)
    _require(cfg, "level")
    k = None
    if cfg.k_table:
        try:
            k = load_k_table(cfg.k_table).get(cfg.level)
        except (OSError, ValueError) as e:
            raise ConfigError("cannot read k table: %s" % e)
    rep = weight2_report(cfg.level, k)
    _emit(rep.to_json(), cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mpvrel", description="Standard relations among multiple polylogarithm values.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, families=True):
        sp.add_argument("-w", "--weight", type=int)
        sp.add_argument("-N", "--level", type=int)
        if families:
            sp.add_argument(
                "--families",
                help="comma list from %s (default: all standard)" % ",".join(ALL_FAMILIES),
            )
        sp.add_argument("--out", help="output path (default stdout)")
        sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("enumerate", help="list admissible words / MPV indices")
    common(sp, families=False)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("generate", help="write relations as JSON lines")
    common(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("bound", help="SR(w,N), D(w,N) and per-family rank gains")
    common(sp)
    sp.add_argument("--matrix", help="write the reduced relation basis as CSV triplets")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("verify", help="numerical residuals of relations")
    common(sp)
    sp.add_argument("--in", dest="input", help="JSON-lines relation file (otherwise generate)")
    sp.add_argument("--precision", type=int, default=30, help="decimal digits")
    sp.add_argument("--tol", type=int, help="fail above 10^-TOL (default precision-10)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table", help="compare SR and D with the bundled published tables")
    common(sp)
    sp.add_argument("--levels", default="1-20", help="e.g. 1-20 or 3,5,7")
    sp.add_argument("--d-only", action="store_true", help="compare only D")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("report", help="weight-two report")
    common(sp, families=False)
    sp.add_argument("--k-table", help="JSON {N: k}, or 'paper' for the bundled values")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except ConfigError as e:
        print("mpvrel: invalid configuration: %s" % e, file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
