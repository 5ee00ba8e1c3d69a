"""Shared constructors for test instances."""

import numpy as np

from mapdiag import (
    NeighbourhoodIndex,
    PointSet,
    RankMatrix,
    Space,
    compute_distances,
    compute_ranks,
)


def random_instance(rng, n, d_data=5, d_emb=2):
    data = PointSet(rng.normal(size=(n, d_data)), Space.DATA)
    emb = PointSet(rng.normal(size=(n, d_emb)), Space.EMBEDDING)
    return data, emb


def rank_pair(data, emb):
    return (compute_ranks(compute_distances(data)),
            compute_ranks(compute_distances(emb)))


def index_pair(data, emb, kappa):
    data_ranks, emb_ranks = rank_pair(data, emb)
    return NeighbourhoodIndex(data_ranks, kappa), NeighbourhoodIndex(emb_ranks, kappa)


def line_rank_matrix(n, space=Space.DATA):
    coords = np.arange(n, dtype=float)[:, None]
    return compute_ranks(compute_distances(PointSet(coords, space)))


def reversed_rank_matrices(n):
    """Data ranks from a 1D line; embedding rows are the per-row rank
    reversal (rank rho becomes n - rho), which no point set realizes."""
    data = line_rank_matrix(n, Space.DATA)
    rev = n - data.ranks
    np.fill_diagonal(rev, 0)
    return data, RankMatrix(rev, Space.EMBEDDING)


def swap_spaces(data, emb):
    """Relabel a (data, embedding) point-set pair with exchanged roles."""
    return (PointSet(emb.coords, Space.DATA, labels=emb.labels),
            PointSet(data.coords, Space.EMBEDDING, labels=data.labels))


def write_csv(path, rows, header=None, labels=None):
    lines = []
    if header is not None:
        lines.append(",".join(header))
    for r, row in enumerate(rows):
        fields = [f"{v:.10g}" for v in row]
        if labels is not None:
            fields.append(labels[r])
        lines.append(",".join(fields))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
