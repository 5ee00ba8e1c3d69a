"""SVG rendering of neighbourhood graphs.

Every drawn relation is a segment split at its geometric midpoint: the
half adjacent to point i is coloured by the penalty of the directed edge
(i, j).  A direction with no edge gets a dashed grey half.  Pairs are
painted in decreasing order of their worst penalty so reliable (white)
structure lands on top.

Colours come from sequential 9-class palettes (GnBu for retrieval, OrRd
for relevance) with pure white prepended as the zero-penalty anchor and a
saturation cap beyond which the darkest colour is reused.
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .graphs import NeighbourhoodGraph, GraphKind
from .penalties import QualityReport

__all__ = [
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
]

# 9-class sequential palettes (colorbrewer2.org), light to dark.
GNBU9 = ("#F7FCF0", "#E0F3DB", "#CCEBC5", "#A8DDB5", "#7BCCC4",
         "#4EB3D3", "#2B8CBE", "#0868AC", "#084081")
ORRD9 = ("#FFF7EC", "#FEE8C8", "#FDD49E", "#FDBB84", "#FC8D59",
         "#EF6548", "#D7301F", "#B30000", "#7F0000")

WHITE = (255, 255, 255)
DASH_GREY = "#808080"
BACKGROUND_GREY = "#E6E6E6"
MARKER_FILL = "#333333"
TEXT_FILL = "#333333"


class ColourScheme(str, enum.Enum):
    GNBU = "GnBu"
    ORRD = "OrRd"


def _hex_to_rgb(code: str) -> tuple[int, int, int]:
    return int(code[1:3], 16), int(code[3:5], 16), int(code[5:7], 16)


_ANCHORS: dict[ColourScheme, tuple[tuple[int, int, int], ...]] = {
    ColourScheme.GNBU: (WHITE,) + tuple(_hex_to_rgb(c) for c in GNBU9),
    ColourScheme.ORRD: (WHITE,) + tuple(_hex_to_rgb(c) for c in ORRD9),
}


@dataclass(frozen=True)
class ColourScale:
    scheme: ColourScheme
    saturation_cap: float = 20.0

    def __post_init__(self):
        if not self.saturation_cap > 0:
            raise ValueError(
                f"saturation cap must be positive, got {self.saturation_cap}"
            )


def default_scale(kind: GraphKind, cap: float = 20.0) -> ColourScale:
    """Retrieval graphs use GnBu, relevance graphs OrRd."""
    scheme = ColourScheme.GNBU if kind is GraphKind.RETRIEVAL else ColourScheme.ORRD
    return ColourScale(scheme, cap)


def interpolation_parameter(scale: ColourScale, penalty: float) -> float:
    """Position in [0, 1] along the ramp; saturates at the cap."""
    if penalty < 0:
        raise ValueError(f"penalty must be non-negative, got {penalty}")
    return min(penalty / scale.saturation_cap, 1.0)


def colour_of(scale: ColourScale, penalty: float) -> tuple[int, int, int]:
    """Piecewise-linear sRGB interpolation through the anchor list.

    Channels round half away from zero (floor(v + 0.5)) so independent
    reimplementations can match byte for byte.
    """
    anchors = _ANCHORS[scale.scheme]
    t = interpolation_parameter(scale, penalty)
    position = t * (len(anchors) - 1)
    seg = min(int(position), len(anchors) - 2)
    frac = position - seg
    lo, hi = anchors[seg], anchors[seg + 1]
    r, g, b = (
        int(np.floor(lo[c] + (hi[c] - lo[c]) * frac + 0.5)) for c in range(3)
    )
    return r, g, b


def colour_hex(rgb: tuple[int, int, int]) -> str:
    return "#{:02X}{:02X}{:02X}".format(*rgb)


class Background(str, enum.Enum):
    CIRCLE = "circle"
    NONE = "none"


@dataclass(frozen=True)
class RenderSpec:
    marker_radius: float = 3.0
    edge_width: float = 1.2
    dash_pattern: tuple[float, float] = (4.0, 3.0)
    background: Background = Background.CIRCLE
    canvas_size: float = 800.0

    def __post_init__(self):
        lengths = (self.marker_radius, self.edge_width,
                   self.dash_pattern[0], self.dash_pattern[1], self.canvas_size)
        if any(not v > 0 for v in lengths):
            raise ValueError(f"all render lengths must be positive, got {self}")


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _draw_xy(points_coords: np.ndarray) -> np.ndarray:
    """First two coordinates; a 1D embedding gets y = 0."""
    if points_coords.shape[1] >= 2:
        return points_coords[:, :2]
    return np.column_stack([points_coords[:, 0], np.zeros(len(points_coords))])


class _ViewTransform:
    """Affine map from embedding xy to pixels: cloud centred on the canvas,
    scaled to fit inside the background circle, y axis flipped for SVG."""

    def __init__(self, graph: NeighbourhoodGraph, spec: RenderSpec):
        xy = _draw_xy(graph.points.coords)
        self.centre = (xy.min(axis=0) + xy.max(axis=0)) / 2.0
        offsets = xy - self.centre
        max_radius = float(np.sqrt((offsets ** 2).sum(axis=1)).max())
        self.half = spec.canvas_size / 2.0
        usable = self.half - 0.04 * spec.canvas_size - spec.marker_radius - 2.0
        self.scale = usable / max_radius if max_radius > 0 else 1.0

    def to_pixels(self, xy: np.ndarray) -> np.ndarray:
        out = np.empty_like(xy, dtype=float)
        out[:, 0] = self.half + (xy[:, 0] - self.centre[0]) * self.scale
        out[:, 1] = self.half - (xy[:, 1] - self.centre[1]) * self.scale
        return out


def _paired_relations(
    graph: NeighbourhoodGraph,
) -> dict[tuple[int, int], dict[tuple[int, int], float]]:
    pairs: dict[tuple[int, int], dict[tuple[int, int], float]] = {}
    for e in graph.edges:
        key = (min(e.src, e.dst), max(e.src, e.dst))
        pairs.setdefault(key, {})[(e.src, e.dst)] = e.penalty
    return pairs


def _half_segment(
    start: np.ndarray,
    mid: np.ndarray,
    penalty: float | None,
    scale: ColourScale,
    spec: RenderSpec,
) -> str:
    x1, y1 = _fmt(start[0]), _fmt(start[1])
    x2, y2 = _fmt(mid[0]), _fmt(mid[1])
    if penalty is None:
        dash = f"{spec.dash_pattern[0]:g},{spec.dash_pattern[1]:g}"
        return (f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                f'stroke="{DASH_GREY}" stroke-width="{spec.edge_width:g}" '
                f'stroke-dasharray="{dash}"/>')
    stroke = colour_hex(colour_of(scale, penalty))
    return (f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="{stroke}" stroke-width="{spec.edge_width:g}"/>')


def _edge_layer(
    graph: NeighbourhoodGraph,
    positions: np.ndarray,
    scale: ColourScale,
    spec: RenderSpec,
) -> list[str]:
    pairs = _paired_relations(graph)
    # Worst pairs first so low-penalty structure is painted on top.
    order = sorted(
        pairs.items(), key=lambda kv: (-max(kv[1].values()), kv[0][0], kv[0][1])
    )
    parts = ['<g class="edges">']
    for (a, b), directions in order:
        pa, pb = positions[a], positions[b]
        mid = (pa + pb) / 2.0
        parts.append(_half_segment(pa, mid, directions.get((a, b)), scale, spec))
        parts.append(_half_segment(pb, mid, directions.get((b, a)), scale, spec))
    parts.append("</g>")
    return parts


def _bundle_layer(
    bundles: Sequence,
    view: _ViewTransform,
    spec: RenderSpec,
) -> list[str]:
    order = sorted(bundles, key=lambda e: (-e.bin_index, e.src, e.dst))
    parts = ['<g class="edges">']
    for e in order:
        pixels = view.to_pixels(np.asarray(e.polyline, dtype=float))
        points = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pixels)
        stroke = colour_hex(e.draw_colour)
        parts.append(f'<polyline points="{points}" fill="none" '
                     f'stroke="{stroke}" stroke-width="{spec.edge_width:g}"/>')
    parts.append("</g>")
    return parts


def render_report_overlay(
    report: QualityReport,
    scale: ColourScale,
    spec: RenderSpec,
) -> str:
    """Legend fragment: colour ramp with cap label, kappa, global values."""
    anchors = _ANCHORS[scale.scheme]
    ramp_id = f"ramp-{scale.scheme.value}-{scale.saturation_cap:g}"
    stops = "".join(
        f'<stop offset="{i / (len(anchors) - 1):.4f}" '
        f'stop-color="{colour_hex(rgb)}"/>'
        for i, rgb in enumerate(anchors)
    )
    lines = [
        '<g class="legend" transform="translate(12,12)" '
        'font-family="sans-serif" font-size="11">',
        f'<defs><linearGradient id="{ramp_id}" x1="0" y1="0" x2="1" y2="0">'
        f"{stops}</linearGradient></defs>",
        f'<rect x="0" y="0" width="130" height="10" fill="url(#{ramp_id})" '
        f'stroke="#666666" stroke-width="0.5"/>',
        f'<text x="0" y="23" fill="{TEXT_FILL}">0</text>',
        f'<text x="130" y="23" text-anchor="end" fill="{TEXT_FILL}">'
        f"≥ {scale.saturation_cap:g}</text>",
        f'<text x="0" y="39" fill="{TEXT_FILL}">kappa = {report.kappa}</text>',
        f'<text x="0" y="54" fill="{TEXT_FILL}">F = {report.global_F:.3f}</text>',
        f'<text x="0" y="69" fill="{TEXT_FILL}">M = {report.global_M:.3f}</text>',
        "</g>",
    ]
    return "".join(lines)


def render_graph(
    graph: NeighbourhoodGraph,
    scale: ColourScale,
    spec: RenderSpec,
    bundles: Sequence | None = None,
    legend: bool = True,
) -> str:
    """Full SVG document for one graph.

    With ``bundles`` (from the bundling module, in embedding coordinates)
    edges are drawn as whole polylines in their bin colour instead of
    split half-segments.
    """
    view = _ViewTransform(graph, spec)
    positions = view.to_pixels(_draw_xy(graph.points.coords))
    size = f"{spec.canvas_size:g}"
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
    ]
    if spec.background is Background.CIRCLE:
        radius = view.half - 0.04 * spec.canvas_size
        parts.append(
            f'<g class="background"><circle cx="{_fmt(view.half)}" '
            f'cy="{_fmt(view.half)}" r="{_fmt(radius)}" '
            f'fill="{BACKGROUND_GREY}"/></g>'
        )
    if bundles is None:
        parts.extend(_edge_layer(graph, positions, scale, spec))
    else:
        parts.extend(_bundle_layer(bundles, view, spec))
    parts.append('<g class="markers">')
    for i in range(len(positions)):
        parts.append(
            f'<circle cx="{_fmt(positions[i, 0])}" cy="{_fmt(positions[i, 1])}" '
            f'r="{spec.marker_radius:g}" fill="{MARKER_FILL}"/>'
        )
    parts.append("</g>")
    labels = graph.points.labels
    if labels is not None:
        parts.append('<g class="labels" font-family="sans-serif" font-size="10">')
        for i, label in enumerate(labels):
            x = _fmt(positions[i, 0] + spec.marker_radius + 2.0)
            y = _fmt(positions[i, 1] + 3.0)
            parts.append(f'<text x="{x}" y="{y}" fill="{TEXT_FILL}">'
                         f"{_escape(label)}</text>")
        parts.append("</g>")
    if legend:
        parts.append(render_report_overlay(graph.report, scale, spec))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
