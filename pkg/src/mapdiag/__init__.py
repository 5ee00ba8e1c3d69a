"""Distortion diagnostics for dimensionality-reduction embeddings.

Builds rank-based quality indicators (precision/recall and
trustworthiness/continuity style penalties) and directed neighbourhood
graphs over the embedded points, renders them as colour-coded SVG with
optional density-based edge bundling, and serves them to a browser
viewer.
"""

from .model import (
    DistanceMatrix,
    NeighbourhoodIndex,
    PointSet,
    RankMatrix,
    Space,
    compute_distances,
    compute_ranks,
    neighbourhood,
)
from .ingest import ParseError, load_data_input, load_distance_matrix, load_points
from .penalties import (
    PenaltyKind,
    PenaltyModel,
    PenaltySide,
    QualityReport,
    RelationNotPenalizedError,
    global_indicator,
    normalizer,
    pairwise_penalty,
    penalty_matrix,
    pointwise_aggregate,
    pointwise_sums,
)
from .graphs import (
    EdgeClass,
    GraphEdge,
    GraphKind,
    NeighbourhoodGraph,
    build_relevance_graph,
    build_retrieval_graph,
    classify_relation,
    dumps_graph_json,
    graph_json_dict,
)
from .render import (
    GNBU9,
    ORRD9,
    Background,
    ColourScale,
    ColourScheme,
    RenderSpec,
    colour_hex,
    colour_of,
    default_scale,
    interpolation_parameter,
    render_graph,
    render_report_overlay,
)
from .bundling import BundleConfig, BundledEdge, bundle
from .server import AnalysisSession, build_server
from .cli import RunConfig, run

__version__ = "0.1.0"

__all__ = [
    "Space",
    "PointSet",
    "DistanceMatrix",
    "RankMatrix",
    "NeighbourhoodIndex",
    "compute_distances",
    "compute_ranks",
    "neighbourhood",
    "ParseError",
    "load_points",
    "load_distance_matrix",
    "load_data_input",
    "PenaltyKind",
    "PenaltySide",
    "PenaltyModel",
    "QualityReport",
    "RelationNotPenalizedError",
    "pairwise_penalty",
    "penalty_matrix",
    "pointwise_aggregate",
    "pointwise_sums",
    "normalizer",
    "global_indicator",
    "EdgeClass",
    "GraphKind",
    "GraphEdge",
    "NeighbourhoodGraph",
    "classify_relation",
    "build_retrieval_graph",
    "build_relevance_graph",
    "graph_json_dict",
    "dumps_graph_json",
    "GNBU9",
    "ORRD9",
    "ColourScheme",
    "ColourScale",
    "Background",
    "RenderSpec",
    "default_scale",
    "interpolation_parameter",
    "colour_of",
    "colour_hex",
    "render_graph",
    "render_report_overlay",
    "BundleConfig",
    "BundledEdge",
    "bundle",
    "AnalysisSession",
    "build_server",
    "RunConfig",
    "run",
    "__version__",
]
