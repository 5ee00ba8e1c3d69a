"""Pairwise penalization of distorted neighbourhood relations.

Two built-in penalty families are provided:

* ``precision_recall``: each false or missed neighbour costs 1.
* ``trustworthiness_continuity``: each costs its rank excess (rank in the
  space where the relation is absent, minus kappa).

A penalty is only defined on penalized relations: the F side (false
neighbours) considers pairs (i, j) with j in the embedding
kappa-neighbourhood of i, the M side (missed neighbours) pairs with j in
the data kappa-neighbourhood.  Relations present in both neighbourhoods
are reliable and cost 0.

Point-wise sums are normalized by the worst achievable sum so the global
indicators span [0, 1], with 1 meaning no distortion.
"""

from __future__ import annotations

import enum
import json
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .model import NeighbourhoodIndex, Space

__all__ = [
    "CLAMP_TOL",
    "PenaltyKind",
    "PenaltySide",
    "PenaltyModel",
    "PairwiseRule",
    "RelationNotPenalizedError",
    "register_rule",
    "get_rule",
    "pairwise_penalty",
    "penalty_matrix",
    "pointwise_aggregate",
    "pointwise_sums",
    "normalizer",
    "global_indicator",
    "QualityReport",
]

# Global indicators are clamped to [0, 1] only within this tolerance;
# larger excursions are bugs and are left visible.
CLAMP_TOL = 1e-12


class PenaltyKind(str, enum.Enum):
    PRECISION_RECALL = "precision_recall"
    TRUSTWORTHINESS_CONTINUITY = "trustworthiness_continuity"


class PenaltySide(str, enum.Enum):
    FALSE_NEIGHBOURS = "F"
    MISSED_NEIGHBOURS = "M"


@dataclass(frozen=True)
class PenaltyModel:
    """One side (F or M) of a penalty family."""

    kind: PenaltyKind
    side: PenaltySide


@dataclass(frozen=True)
class PairwiseRule:
    """Pluggable penalization rule.

    ``excess(ranks, kappa)`` maps ranks in the space where the relation is
    missing to penalty values (evaluated only where the relation is
    distorted, so it may return garbage elsewhere).  ``max_pointwise(n,
    kappa)`` is the largest achievable point-wise sum, used as the
    normalizer.
    """

    name: str
    excess: Callable[[np.ndarray, int], np.ndarray]
    max_pointwise: Callable[[int, int], float]


def _tc_max_pointwise(n: int, kappa: int) -> float:
    # Worst case is fully reversed ranks; the attained sum switches form
    # at kappa = n/2 because fewer than kappa relations can be distorted
    # beyond that point.
    if kappa < n / 2:
        return kappa * (2 * n - 3 * kappa - 1) / 2
    return (n - kappa) * (n - kappa - 1) / 2


_RULES: dict[str, PairwiseRule] = {}


def register_rule(rule: PairwiseRule) -> None:
    if rule.name in _RULES:
        raise ValueError(f"rule {rule.name!r} already registered")
    _RULES[rule.name] = rule


def get_rule(kind: PenaltyKind | str) -> PairwiseRule:
    key = kind.value if isinstance(kind, PenaltyKind) else kind
    try:
        return _RULES[key]
    except KeyError:
        raise ValueError(f"unknown penalty kind {key!r}") from None


register_rule(PairwiseRule(
    name=PenaltyKind.PRECISION_RECALL.value,
    excess=lambda ranks, kappa: np.ones(ranks.shape),
    max_pointwise=lambda n, kappa: float(kappa),
))
register_rule(PairwiseRule(
    name=PenaltyKind.TRUSTWORTHINESS_CONTINUITY.value,
    excess=lambda ranks, kappa: (ranks - kappa).astype(float),
    max_pointwise=_tc_max_pointwise,
))


class RelationNotPenalizedError(ValueError):
    """Raised when a pairwise penalty is queried outside its domain."""


def _check_consistent(data_nbr: NeighbourhoodIndex, emb_nbr: NeighbourhoodIndex) -> None:
    if data_nbr.space is not Space.DATA:
        raise ValueError("first neighbourhood index must be data-space")
    if emb_nbr.space is not Space.EMBEDDING:
        raise ValueError("second neighbourhood index must be embedding-space")
    if len(data_nbr) != len(emb_nbr):
        raise ValueError(
            f"point counts differ: data has {len(data_nbr)}, "
            f"embedding has {len(emb_nbr)}"
        )
    if data_nbr.kappa != emb_nbr.kappa:
        raise ValueError(
            f"kappa differs: data uses {data_nbr.kappa}, "
            f"embedding uses {emb_nbr.kappa}"
        )


def _side_indices(
    model: PenaltyModel,
    data_nbr: NeighbourhoodIndex,
    emb_nbr: NeighbourhoodIndex,
) -> tuple[NeighbourhoodIndex, NeighbourhoodIndex]:
    """(defining, other): the relation must exist in the defining space
    and is penalized by its rank in the other space."""
    if model.side is PenaltySide.FALSE_NEIGHBOURS:
        return emb_nbr, data_nbr
    return data_nbr, emb_nbr


def pairwise_penalty(
    model: PenaltyModel,
    data_nbr: NeighbourhoodIndex,
    emb_nbr: NeighbourhoodIndex,
    i: int,
    j: int,
) -> float:
    """Penalty of the single relation (i, j) under one model side.

    Querying a relation outside the side's domain (j not in the defining
    kappa-neighbourhood of i) is a contract violation, not a zero.
    """
    _check_consistent(data_nbr, emb_nbr)
    defining, other = _side_indices(model, data_nbr, emb_nbr)
    if not defining.contains(i, j):
        raise RelationNotPenalizedError(
            f"relation ({i}, {j}) is not penalized on side {model.side.value}: "
            f"{j} is not among the {defining.kappa} "
            f"{defining.space.value}-space neighbours of {i}"
        )
    if other.contains(i, j):
        return 0.0
    rule = get_rule(model.kind)
    excess = rule.excess(other.rank_matrix.ranks[i, j : j + 1], defining.kappa)
    return float(excess[0])


def penalty_matrix(
    model: PenaltyModel,
    data_nbr: NeighbourhoodIndex,
    emb_nbr: NeighbourhoodIndex,
) -> np.ndarray:
    """N x N penalties, zero at reliable and non-penalized relations."""
    _check_consistent(data_nbr, emb_nbr)
    defining, other = _side_indices(model, data_nbr, emb_nbr)
    rule = get_rule(model.kind)
    distorted = defining.mask & ~other.mask
    excess = rule.excess(other.rank_matrix.ranks, defining.kappa)
    return np.where(distorted, excess, 0.0)


def pointwise_sums(
    model: PenaltyModel,
    data_nbr: NeighbourhoodIndex,
    emb_nbr: NeighbourhoodIndex,
) -> np.ndarray:
    """Per-point penalty sums over the side's defining neighbourhood."""
    return penalty_matrix(model, data_nbr, emb_nbr).sum(axis=1)


def pointwise_aggregate(
    model: PenaltyModel,
    data_nbr: NeighbourhoodIndex,
    emb_nbr: NeighbourhoodIndex,
    i: int,
) -> float:
    _check_consistent(data_nbr, emb_nbr)
    n = len(data_nbr)
    if not 0 <= i < n:
        raise IndexError(f"point id {i} out of range for {n} points")
    defining, other = _side_indices(model, data_nbr, emb_nbr)
    rule = get_rule(model.kind)
    distorted = defining.mask[i] & ~other.mask[i]
    excess = rule.excess(other.rank_matrix.ranks[i], defining.kappa)
    return float(np.where(distorted, excess, 0.0).sum())


def normalizer(model: PenaltyModel | PenaltyKind, n: int, kappa: int) -> float:
    """Largest achievable point-wise sum (same bound for both sides)."""
    kind = model.kind if isinstance(model, PenaltyModel) else model
    if not 1 <= kappa <= n - 1:
        raise ValueError(f"kappa must be in [1, {n - 1}], got {kappa}")
    return float(get_rule(kind).max_pointwise(n, kappa))


def _clamp_unit(value: float) -> float:
    if -CLAMP_TOL <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + CLAMP_TOL:
        return 1.0
    return value


def _sig(value: float) -> float:
    """Round to 12 significant digits for canonical JSON output."""
    return float(f"{float(value):.12g}")


@dataclass(frozen=True)
class QualityReport:
    """Point-wise sums and global indicators for one penalty family."""

    kind: PenaltyKind
    kappa: int
    normalizer: float
    pointwise_F: np.ndarray
    pointwise_M: np.ndarray
    global_F_raw: float
    global_M_raw: float

    @property
    def global_F(self) -> float:
        return _clamp_unit(self.global_F_raw)

    @property
    def global_M(self) -> float:
        return _clamp_unit(self.global_M_raw)

    def to_json_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "model": self.kind.value,
            "normalizer": _sig(self.normalizer),
            "pointwise_F": [_sig(v) for v in self.pointwise_F],
            "pointwise_M": [_sig(v) for v in self.pointwise_M],
            "global_F": _sig(self.global_F),
            "global_M": _sig(self.global_M),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))


def global_indicator(
    kind: PenaltyKind,
    data_nbr: NeighbourhoodIndex,
    emb_nbr: NeighbourhoodIndex,
) -> QualityReport:
    """Both sides of one penalty family, normalized to [0, 1]."""
    _check_consistent(data_nbr, emb_nbr)
    n = len(data_nbr)
    kappa = data_nbr.kappa
    f_sums = pointwise_sums(PenaltyModel(kind, PenaltySide.FALSE_NEIGHBOURS),
                            data_nbr, emb_nbr)
    m_sums = pointwise_sums(PenaltyModel(kind, PenaltySide.MISSED_NEIGHBOURS),
                            data_nbr, emb_nbr)
    bound = normalizer(kind, n, kappa)
    if bound == 0.0:
        # At kappa = N-1 both neighbourhoods contain every other point, no
        # relation can be distorted and the worst-case bound vanishes; the
        # mapping is vacuously perfect at this scale.
        global_f = global_m = 1.0
    else:
        global_f = 1.0 - float(f_sums.mean()) / bound
        global_m = 1.0 - float(m_sums.mean()) / bound
    f_sums.setflags(write=False)
    m_sums.setflags(write=False)
    return QualityReport(
        kind=kind,
        kappa=kappa,
        normalizer=bound,
        pointwise_F=f_sums,
        pointwise_M=m_sums,
        global_F_raw=global_f,
        global_M_raw=global_m,
    )
