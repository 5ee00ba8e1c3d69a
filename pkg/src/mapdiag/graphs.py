"""Directed neighbourhood graphs over an embedding.

The retrieval graph contains every relation (i, j) existing in the
embedding space (j in the embedding kappa-neighbourhood of i), weighted by
false-neighbour penalties.  The relevance graph contains every relation
existing in the data space, weighted by missed-neighbour penalties.  Both
have exactly N * kappa directed edges; vertices sit at the embedding
coordinates.

Each relation is classified four ways by membership in the two
kappa-neighbourhoods: reliable (both), false_nbr (embedding only),
missed_nbr (data only), non_existent (neither).  Non-existent relations
never become edges; they surface only as reverse_exists=False on the
opposite direction.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .model import NeighbourhoodIndex, PointSet, Space
from .penalties import (
    PenaltyKind,
    PenaltyModel,
    PenaltySide,
    QualityReport,
    _check_consistent,
    _sig,
    global_indicator,
    penalty_matrix,
)

__all__ = [
    "EdgeClass",
    "GraphKind",
    "GraphEdge",
    "NeighbourhoodGraph",
    "classify_relation",
    "build_retrieval_graph",
    "build_relevance_graph",
    "graph_json_dict",
    "dumps_graph_json",
]


class EdgeClass(str, enum.Enum):
    RELIABLE = "reliable"
    FALSE_NBR = "false_nbr"
    MISSED_NBR = "missed_nbr"
    NON_EXISTENT = "non_existent"


class GraphKind(str, enum.Enum):
    RETRIEVAL = "retrieval"
    RELEVANCE = "relevance"


@dataclass(frozen=True)
class GraphEdge:
    src: int
    dst: int
    penalty: float
    reverse_exists: bool
    edge_class: EdgeClass


@dataclass(frozen=True)
class NeighbourhoodGraph:
    kind: GraphKind
    kappa: int
    model: PenaltyKind
    points: PointSet
    edges: tuple[GraphEdge, ...]
    report: QualityReport

    def __len__(self) -> int:
        return len(self.edges)


def classify_relation(
    data_nbr: NeighbourhoodIndex,
    emb_nbr: NeighbourhoodIndex,
    i: int,
    j: int,
) -> EdgeClass:
    """Four-way classification of the directed relation (i, j)."""
    _check_consistent(data_nbr, emb_nbr)
    if i == j:
        raise ValueError(f"relation requires two distinct points, got ({i}, {j})")
    in_data = data_nbr.contains(i, j)
    in_emb = emb_nbr.contains(i, j)
    if in_data and in_emb:
        return EdgeClass.RELIABLE
    if in_emb:
        return EdgeClass.FALSE_NBR
    if in_data:
        return EdgeClass.MISSED_NBR
    return EdgeClass.NON_EXISTENT


def _build_graph(
    kind: GraphKind,
    emb_points: PointSet,
    data_nbr: NeighbourhoodIndex,
    emb_nbr: NeighbourhoodIndex,
    model: PenaltyKind,
) -> NeighbourhoodGraph:
    _check_consistent(data_nbr, emb_nbr)
    if emb_points.space is not Space.EMBEDDING:
        raise ValueError("graph vertices must come from embedding coordinates")
    if len(emb_points) != len(emb_nbr):
        raise ValueError(
            f"point counts differ: embedding has {len(emb_points)} points, "
            f"neighbourhood index has {len(emb_nbr)}"
        )
    if kind is GraphKind.RETRIEVAL:
        side = PenaltySide.FALSE_NEIGHBOURS
        defining, other = emb_nbr, data_nbr
        distorted_class = EdgeClass.FALSE_NBR
    else:
        side = PenaltySide.MISSED_NEIGHBOURS
        defining, other = data_nbr, emb_nbr
        distorted_class = EdgeClass.MISSED_NBR

    penalties = penalty_matrix(PenaltyModel(model, side), data_nbr, emb_nbr)
    mask = defining.mask
    ranks = defining.rank_matrix.ranks
    edges: list[GraphEdge] = []
    for i in range(len(defining)):
        members = np.nonzero(mask[i])[0]
        # Emit neighbours closest-first: deterministic and render-friendly.
        for j in members[np.argsort(ranks[i, members])]:
            j = int(j)
            edges.append(GraphEdge(
                src=i,
                dst=j,
                penalty=float(penalties[i, j]),
                reverse_exists=bool(mask[j, i]),
                edge_class=EdgeClass.RELIABLE if other.contains(i, j)
                else distorted_class,
            ))
    report = global_indicator(model, data_nbr, emb_nbr)
    return NeighbourhoodGraph(
        kind=kind,
        kappa=defining.kappa,
        model=model,
        points=emb_points,
        edges=tuple(edges),
        report=report,
    )


def build_retrieval_graph(
    emb_points: PointSet,
    data_nbr: NeighbourhoodIndex,
    emb_nbr: NeighbourhoodIndex,
    model: PenaltyKind = PenaltyKind.TRUSTWORTHINESS_CONTINUITY,
) -> NeighbourhoodGraph:
    """Edges (i, j) for j in the embedding kappa-neighbourhood of i."""
    return _build_graph(GraphKind.RETRIEVAL, emb_points, data_nbr, emb_nbr, model)


def build_relevance_graph(
    emb_points: PointSet,
    data_nbr: NeighbourhoodIndex,
    emb_nbr: NeighbourhoodIndex,
    model: PenaltyKind = PenaltyKind.TRUSTWORTHINESS_CONTINUITY,
) -> NeighbourhoodGraph:
    """Edges (i, j) for j in the data kappa-neighbourhood of i."""
    return _build_graph(GraphKind.RELEVANCE, emb_points, data_nbr, emb_nbr, model)


def _node_xy(points: PointSet) -> np.ndarray:
    """2D draw positions: first two embedding coordinates (y=0 for 1D)."""
    coords = points.coords
    if coords.shape[1] == 1:
        return np.column_stack([coords[:, 0], np.zeros(len(points))])
    return coords[:, :2]


def graph_json_dict(graph: NeighbourhoodGraph) -> dict:
    """Canonical JSON form; field order fixed, floats at 12 significant
    digits so batch files and served responses agree byte for byte."""
    xy = _node_xy(graph.points)
    labels = graph.points.labels
    nodes = [
        {
            "id": i,
            "x": _sig(xy[i, 0]),
            "y": _sig(xy[i, 1]),
            "label": labels[i] if labels is not None else None,
        }
        for i in range(len(graph.points))
    ]
    edges = [
        {
            "src": e.src,
            "dst": e.dst,
            "penalty": _sig(e.penalty),
            "reverse_exists": e.reverse_exists,
            "class": e.edge_class.value,
        }
        for e in graph.edges
    ]
    return {
        "kind": graph.kind.value,
        "kappa": graph.kappa,
        "model": graph.model.value,
        "nodes": nodes,
        "edges": edges,
        "report": graph.report.to_json_dict(),
    }


def dumps_graph_json(graph: NeighbourhoodGraph) -> str:
    return json.dumps(graph_json_dict(graph), separators=(",", ":"))
