"""Coordinates, pairwise distances, neighbour ranks and k-neighbourhoods.

Everything downstream (penalties, graphs, rendering) consumes the matrix
types defined here.  All containers are immutable after construction, so
they are safe to share across threads; builders are pure functions.

Conventions:

* a point's rank with respect to itself is 0, its nearest other point has
  rank 1, and so on up to N-1;
* ranks are row-wise permutations and are *not* required to be symmetric;
* ties in distance are broken by ascending point index, which makes every
  derived structure deterministic and reproducible across runs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "Space",
    "PointSet",
    "DistanceMatrix",
    "RankMatrix",
    "NeighbourhoodIndex",
    "compute_distances",
    "compute_ranks",
    "neighbourhood",
    "SYMMETRY_TOL",
]

# Absolute tolerance accepted when validating precomputed distance matrices;
# inputs within it are canonicalized to exact symmetry / zero diagonal.
SYMMETRY_TOL = 1e-9

MetricFn = Callable[[np.ndarray, np.ndarray], float]


class Space(enum.Enum):
    """Which space a structure was measured in."""

    DATA = "data"
    EMBEDDING = "embedding"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PointSet:
    """N points with optional per-point string labels.

    Parameters
    ----------
    coords : (N, d) array_like
        Real, finite coordinates; N >= 2 and d >= 1.
    space : Space
        Whether these are data-space or embedding-space coordinates.
    labels : sequence of str, optional
        One label per point.
    """

    coords: np.ndarray
    space: Space
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        coords = np.array(self.coords, dtype=float)
        if coords.ndim != 2:
            raise ValueError(f"coords must be a 2-d array, got shape {coords.shape}")
        n, d = coords.shape
        if n < 2:
            raise ValueError(f"need at least 2 points, got {n}")
        if d < 1:
            raise ValueError("points need at least one coordinate")
        finite_rows = np.isfinite(coords).all(axis=1)
        if not finite_rows.all():
            offender = int(np.nonzero(~finite_rows)[0][0])
            raise ValueError(f"non-finite coordinate at point {offender}")
        if self.labels is not None:
            labels = tuple(str(item) for item in self.labels)
            if len(labels) != n:
                raise ValueError(f"got {len(labels)} labels for {n} points")
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "coords", _freeze(coords))

    def __len__(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise distances with a zero diagonal.

    Input is validated against ``SYMMETRY_TOL`` and then canonicalized:
    exactly symmetrized by averaging, diagonal forced to zero.  Accepting a
    near-symmetric matrix keeps precomputed CSV inputs usable without
    letting real asymmetries through silently.
    """

    values: np.ndarray
    space: Space

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {values.shape}")
        if values.shape[0] < 2:
            raise ValueError("distance matrix needs at least 2 points")
        if not np.isfinite(values).all():
            raise ValueError("distance matrix contains non-finite entries")
        asym = float(np.abs(values - values.T).max())
        if asym > SYMMETRY_TOL:
            raise ValueError(
                f"distance matrix is asymmetric (max |d_ij - d_ji| = {asym:.3g}, "
                f"tolerance {SYMMETRY_TOL:g})"
            )
        worst_diag = float(np.abs(np.diagonal(values)).max())
        if worst_diag > SYMMETRY_TOL:
            raise ValueError(
                f"distance matrix diagonal must be zero (max |d_ii| = {worst_diag:.3g})"
            )
        values = (values + values.T) / 2.0
        np.fill_diagonal(values, 0.0)
        if (values < 0).any():
            raise ValueError("distances must be non-negative")
        object.__setattr__(self, "values", _freeze(values))

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class RankMatrix:
    """Per-point neighbour ranks.

    Row i is a permutation of {0, ..., N-1} with ``ranks[i][i] == 0``.
    Rows are independent, so the matrix is generally not symmetric.
    A RankMatrix may be built from a DistanceMatrix (``compute_ranks``) or
    constructed directly from synthetic permutation rows.
    """

    ranks: np.ndarray
    space: Space

    def __post_init__(self) -> None:
        ranks = np.array(self.ranks, dtype=np.int64)
        if ranks.ndim != 2 or ranks.shape[0] != ranks.shape[1]:
            raise ValueError(f"rank matrix must be square, got shape {ranks.shape}")
        n = ranks.shape[0]
        if n < 2:
            raise ValueError("rank matrix needs at least 2 points")
        if (np.diagonal(ranks) != 0).any():
            offender = int(np.nonzero(np.diagonal(ranks) != 0)[0][0])
            raise ValueError(f"self-rank must be 0, violated at point {offender}")
        expected = np.arange(n)
        if (np.sort(ranks, axis=1) != expected).any():
            bad = int(np.nonzero((np.sort(ranks, axis=1) != expected).any(axis=1))[0][0])
            raise ValueError(f"row {bad} is not a permutation of 0..{n - 1}")
        object.__setattr__(self, "ranks", _freeze(ranks))

    def __len__(self) -> int:
        return self.ranks.shape[0]


@dataclass(frozen=True)
class NeighbourhoodIndex:
    """kappa-nearest-neighbour membership derived from a rank matrix.

    ``mask[i, j]`` is True exactly when 1 <= ranks[i][j] <= kappa, i.e. when
    j is one of the kappa nearest neighbours of i.
    """

    rank_matrix: RankMatrix
    kappa: int

    def __post_init__(self) -> None:
        n = len(self.rank_matrix)
        if not 1 <= self.kappa <= n - 1:
            raise ValueError(f"kappa must be in [1, {n - 1}], got {self.kappa}")
        ranks = self.rank_matrix.ranks
        mask = (ranks >= 1) & (ranks <= self.kappa)
        object.__setattr__(self, "_mask", _freeze(mask))

    def __len__(self) -> int:
        return len(self.rank_matrix)

    @property
    def space(self) -> Space:
        return self.rank_matrix.space

    @property
    def mask(self) -> np.ndarray:
        """Boolean (N, N) membership matrix."""
        return self._mask  # type: ignore[attr-defined]

    def contains(self, i: int, j: int) -> bool:
        self._check_id(i)
        self._check_id(j)
        return bool(self.mask[i, j])

    def members(self, i: int) -> np.ndarray:
        """Indices of the kappa nearest neighbours of i, ascending."""
        self._check_id(i)
        return np.nonzero(self.mask[i])[0]

    def _check_id(self, i: int) -> None:
        if not 0 <= i < len(self):
            raise IndexError(f"point id {i} out of range [0, {len(self)})")


def neighbourhood(index: NeighbourhoodIndex, i: int) -> set[int]:
    """The kappa nearest neighbours of point i, as a set of indices."""
    return {int(j) for j in index.members(i)}


def compute_distances(points: PointSet, metric: str | MetricFn = "euclidean") -> DistanceMatrix:
    """Pairwise distances for a point set.

    ``metric`` is ``"euclidean"`` (the vectorized default) or a symmetric,
    non-negative callable ``f(a, b)`` evaluated on every unordered pair
    (O(N^2) Python calls; intended for small N or exotic metrics).
    """
    coords = points.coords
    n = len(points)
    if callable(metric):
        values = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                values[i, j] = values[j, i] = float(metric(coords[i], coords[j]))
    elif metric == "euclidean":
        values = _euclidean_distances(coords)
    else:
        raise ValueError(f"unknown metric {metric!r}")
    return DistanceMatrix(values, points.space)


def _euclidean_distances(coords: np.ndarray) -> np.ndarray:
    # Blocked direct differences instead of the gram-matrix trick: the
    # latter can lose ~8 digits on unlucky inputs, this stays at ~1e-15
    # relative for the cost of a little extra memory traffic.
    n, d = coords.shape
    out = np.empty((n, n))
    block = max(1, int(2**24 / max(1, n * d)))
    for start in range(0, n, block):
        stop = min(n, start + block)
        diff = coords[start:stop, None, :] - coords[None, :, :]
        out[start:stop] = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    return out


def compute_ranks(dist: DistanceMatrix) -> RankMatrix:
    """Row-wise neighbour ranks of a distance matrix.

    Rank 0 is the point itself (forced, even when another point sits at
    distance zero); remaining ranks follow ascending distance with ties
    broken by ascending point index.  O(N^2 log N).
    """
    keyed = dist.values.copy()
    np.fill_diagonal(keyed, -np.inf)  # self sorts first regardless of duplicates
    order = np.argsort(keyed, axis=1, kind="stable")  # stable => index tie-break
    n = keyed.shape[0]
    ranks = np.empty((n, n), dtype=np.int64)
    rows = np.arange(n)[:, None]
    ranks[rows, order] = np.arange(n)[None, :]
    return RankMatrix(ranks, dist.space)
