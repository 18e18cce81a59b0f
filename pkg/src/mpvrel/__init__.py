"""Standard Q-linear relations among multiple polylogarithm values at roots of unity."""

from .algebra import LinComb, shuffle, stuffle
from .linalg import RelationSpace, dg_bound, rank, sr_bound, weight2_report
from .numeval import EvalConfig, eval_mpv, eval_word, residual
from .relations import Relation
from .words import LevelContext, MpvIndex, enumerate_admissible

__all__ = [
    "EvalConfig",
    "LevelContext",
    "LinComb",
    "MpvIndex",
    "Relation",
    "RelationSpace",
    "dg_bound",
    "enumerate_admissible",
    "eval_mpv",
    "eval_word",
    "rank",
    "residual",
    "shuffle",
    "sr_bound",
    "stuffle",
    "weight2_report",
]
