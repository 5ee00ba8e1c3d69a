"""Density-based edge bundling, grouped by penalization bins.

Edges are binned by penalty ({0}, (0, 10], (10, 20], (20, inf) by
default) and each bin is bundled independently, so only edges with
similar distortion attract each other.  Within a bin the classic
density-advection loop applies: splat edge samples into a kernel density
grid, advect interior samples one grid cell along the normalized density
gradient, smooth each polyline, shrink the kernel radius, repeat.

Polyline endpoints stay pinned to the vertex positions throughout.  Each
bundled edge is drawn in the colour of its bin's central penalty value.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .graphs import NeighbourhoodGraph
from .render import ColourScale, colour_of, _draw_xy

__all__ = ["BundleConfig", "BundledEdge", "bin_index", "central_penalty", "bundle"]

DEFAULT_BINS = ((0.0, 0.0), (0.0, 10.0), (10.0, 20.0), (20.0, math.inf))


@dataclass(frozen=True)
class BundleConfig:
    """Bundling parameters.

    ``bins`` lists penalty intervals: the degenerate zero bin first, then
    half-open intervals (lo, hi] that must partition (0, inf).  When
    ``kernel_radius_initial`` is None, one tenth of the vertex bounding
    box diagonal is used.
    """

    bins: tuple[tuple[float, float], ...] = DEFAULT_BINS
    iterations: int = 10
    kernel_radius_initial: float | None = None
    radius_decay: float = 0.7
    samples_per_edge: int = 15
    smoothing_passes: int = 1
    grid_resolution: int = 512

    def __post_init__(self):
        bins = tuple((float(lo), float(hi)) for lo, hi in self.bins)
        object.__setattr__(self, "bins", bins)
        if len(bins) < 2 or bins[0] != (0.0, 0.0):
            raise ValueError("first bin must be the degenerate zero bin (0, 0)")
        if not math.isinf(bins[-1][1]):
            raise ValueError("last bin must extend to infinity")
        for k in range(1, len(bins)):
            lo, hi = bins[k]
            if lo != bins[k - 1][1]:
                raise ValueError("bins must partition [0, inf) contiguously")
            if not hi > lo:
                raise ValueError(f"empty bin ({lo}, {hi}]")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.samples_per_edge < 2:
            raise ValueError("samples_per_edge must be >= 2")
        if not 0.0 < self.radius_decay < 1.0:
            raise ValueError("radius_decay must be in (0, 1)")
        if self.smoothing_passes < 0:
            raise ValueError("smoothing_passes must be >= 0")
        if self.grid_resolution < 8:
            raise ValueError("grid_resolution must be >= 8")
        if self.kernel_radius_initial is not None and not self.kernel_radius_initial > 0:
            raise ValueError("kernel_radius_initial must be positive")

    @classmethod
    def from_thresholds(cls, thresholds: tuple[float, ...] = (10.0, 20.0),
                        **kwargs) -> "BundleConfig":
        """Bins {0}, (0, t1], (t1, t2], ..., (tn, inf) from sorted
        positive thresholds."""
        cuts = sorted(float(t) for t in thresholds)
        if not cuts or cuts[0] <= 0 or len(set(cuts)) != len(cuts):
            raise ValueError(f"thresholds must be distinct and positive: {thresholds}")
        edges = [0.0, *cuts, math.inf]
        bins = ((0.0, 0.0),) + tuple(
            (edges[k], edges[k + 1]) for k in range(len(edges) - 1)
        )
        return cls(bins=bins, **kwargs)


def bin_index(config: BundleConfig, penalty: float) -> int:
    if penalty < 0:
        raise ValueError(f"penalty must be non-negative, got {penalty}")
    if penalty == 0:
        return 0
    for k, (lo, hi) in enumerate(config.bins[1:], start=1):
        if lo < penalty <= hi:
            return k
    raise AssertionError("unreachable: bins partition [0, inf)")


def central_penalty(config: BundleConfig, k: int, cap: float) -> float:
    """Representative penalty of a bin: 0, the interval midpoint, or the
    saturation cap for the unbounded bin."""
    lo, hi = config.bins[k]
    if k == 0:
        return 0.0
    if math.isinf(hi):
        return cap
    return (lo + hi) / 2.0


@dataclass(frozen=True)
class BundledEdge:
    src: int
    dst: int
    polyline: np.ndarray
    bin_index: int
    draw_colour: tuple[int, int, int]


def _straight_polylines(starts: np.ndarray, ends: np.ndarray, samples: int) -> np.ndarray:
    t = np.linspace(0.0, 1.0, samples)
    return (starts[:, None, :] * (1.0 - t)[None, :, None]
            + ends[:, None, :] * t[None, :, None])


def _splat(samples: np.ndarray, lo: np.ndarray, h: float,
           nx: int, ny: int, radius: float) -> np.ndarray:
    """Accumulate a quadratic (Epanechnikov) kernel around every sample.

    Direct stamping keeps the density exactly zero away from edges, so
    isolated edges feel no spurious gradient.
    """
    density = np.zeros((ny, nx))
    r2 = radius * radius
    for px, py in samples:
        ix0 = max(int(math.floor((px - radius - lo[0]) / h)), 0)
        ix1 = min(int(math.ceil((px + radius - lo[0]) / h)), nx - 1)
        iy0 = max(int(math.floor((py - radius - lo[1]) / h)), 0)
        iy1 = min(int(math.ceil((py + radius - lo[1]) / h)), ny - 1)
        if ix0 > ix1 or iy0 > iy1:
            continue
        dx2 = (lo[0] + np.arange(ix0, ix1 + 1) * h - px) ** 2
        dy2 = (lo[1] + np.arange(iy0, iy1 + 1) * h - py) ** 2
        weight = 1.0 - (dy2[:, None] + dx2[None, :]) / r2
        np.maximum(weight, 0.0, out=weight)
        density[iy0:iy1 + 1, ix0:ix1 + 1] += weight
    return density


def _bilinear(field: np.ndarray, pts: np.ndarray, lo: np.ndarray, h: float) -> np.ndarray:
    ny, nx = field.shape
    fx = (pts[:, 0] - lo[0]) / h
    fy = (pts[:, 1] - lo[1]) / h
    ix = np.clip(np.floor(fx).astype(int), 0, nx - 2)
    iy = np.clip(np.floor(fy).astype(int), 0, ny - 2)
    tx = np.clip(fx - ix, 0.0, 1.0)
    ty = np.clip(fy - iy, 0.0, 1.0)
    return (field[iy, ix] * (1 - tx) * (1 - ty)
            + field[iy, ix + 1] * tx * (1 - ty)
            + field[iy + 1, ix] * (1 - tx) * ty
            + field[iy + 1, ix + 1] * tx * ty)


def _bundle_group(polylines: np.ndarray, lo: np.ndarray, hi: np.ndarray,
                  radius0: float, config: BundleConfig) -> np.ndarray:
    ext = hi - lo
    h = float(ext.max()) / config.grid_resolution
    nx = int(math.ceil(ext[0] / h)) + 1
    ny = int(math.ceil(ext[1] / h)) + 1
    polylines = polylines.copy()
    radius = radius0
    for _ in range(config.iterations):
        density = _splat(polylines.reshape(-1, 2), lo, h, nx, ny, radius)
        gy, gx = np.gradient(density, h)
        interior = polylines[:, 1:-1, :].reshape(-1, 2)
        grad = np.column_stack([
            _bilinear(gx, interior, lo, h),
            _bilinear(gy, interior, lo, h),
        ])
        norm = np.hypot(grad[:, 0], grad[:, 1])
        # Round-off residue of a symmetric field must not be normalized
        # into full-cell steps; treat it as a flat gradient.
        floor = 1e-9 * max(np.abs(gx).max(), np.abs(gy).max())
        moving = norm > floor
        step = np.zeros_like(grad)
        step[moving] = grad[moving] / norm[moving, None] * h
        interior = interior + step
        np.clip(interior[:, 0], lo[0], hi[0], out=interior[:, 0])
        np.clip(interior[:, 1], lo[1], hi[1], out=interior[:, 1])
        polylines[:, 1:-1, :] = interior.reshape(polylines[:, 1:-1, :].shape)
        for _ in range(config.smoothing_passes):
            midpoints = (polylines[:, :-2, :] + polylines[:, 2:, :]) / 2.0
            polylines[:, 1:-1, :] += 0.5 * (midpoints - polylines[:, 1:-1, :])
        radius *= config.radius_decay
    return polylines


def bundle(graph: NeighbourhoodGraph, config: BundleConfig,
           scale: ColourScale) -> list[BundledEdge]:
    """One BundledEdge per directed edge, in the graph's edge order.

    Polylines are expressed in embedding coordinates; the renderer applies
    its own view transform.
    """
    if not graph.edges:
        raise ValueError("graph has no edges to bundle")
    xy = _draw_xy(graph.points.coords)
    lo = xy.min(axis=0)
    hi = xy.max(axis=0)
    diagonal = float(np.hypot(hi[0] - lo[0], hi[1] - lo[1]))

    bins_of = [bin_index(config, e.penalty) for e in graph.edges]
    cap = scale.saturation_cap
    colour_by_bin = {
        k: colour_of(scale, central_penalty(config, k, cap))
        for k in sorted(set(bins_of))
    }
    starts = xy[[e.src for e in graph.edges]]
    ends = xy[[e.dst for e in graph.edges]]
    polylines = _straight_polylines(starts, ends, config.samples_per_edge)

    if diagonal == 0.0:
        warnings.warn("all vertex positions coincide; edge bundling skipped")
    else:
        radius0 = (config.kernel_radius_initial
                   if config.kernel_radius_initial is not None
                   else diagonal / 10.0)
        pad_lo = lo - radius0
        pad_hi = hi + radius0
        for k in sorted(set(bins_of)):
            members = [e for e, b in enumerate(bins_of) if b == k]
            polylines[members] = _bundle_group(
                polylines[members], pad_lo, pad_hi, radius0, config
            )

    out: list[BundledEdge] = []
    for pos, edge in enumerate(graph.edges):
        line = polylines[pos].copy()
        line.setflags(write=False)
        out.append(BundledEdge(
            src=edge.src,
            dst=edge.dst,
            polyline=line,
            bin_index=bins_of[pos],
            draw_colour=colour_by_bin[bins_of[pos]],
        ))
    return out
