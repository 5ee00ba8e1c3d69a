"""Brute-force reference implementations used to cross-check the package.

Deliberately slow and simple: plain Python loops over nested lists, no
numpy, no code shared with the implementation under test.
"""

import math

PR = "precision_recall"
TC = "trustworthiness_continuity"


def distances(coords):
    n = len(coords)
    return [[math.dist(coords[i], coords[j]) for j in range(n)] for i in range(n)]


def ranks(dist):
    """Self first (rank 0), then by (distance, index)."""
    n = len(dist)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        order = sorted((j for j in range(n) if j != i),
                       key=lambda j: (dist[i][j], j))
        for pos, j in enumerate([i] + order):
            out[i][j] = pos
    return out


def neighbourhood(rank_rows, i, kappa):
    return {j for j in range(len(rank_rows)) if 1 <= rank_rows[i][j] <= kappa}


def pairwise(kind, side, data_ranks, emb_ranks, kappa, i, j):
    nu = neighbourhood(data_ranks, i, kappa)
    nn = neighbourhood(emb_ranks, i, kappa)
    if side == "F":
        if j not in nn:
            raise ValueError("not a penalized relation")
        if j in nu:
            return 0
        return 1 if kind == PR else data_ranks[i][j] - kappa
    if j not in nu:
        raise ValueError("not a penalized relation")
    if j in nn:
        return 0
    return 1 if kind == PR else emb_ranks[i][j] - kappa


def pointwise(kind, side, data_ranks, emb_ranks, kappa, i):
    defining = (neighbourhood(emb_ranks, i, kappa) if side == "F"
                else neighbourhood(data_ranks, i, kappa))
    return sum(pairwise(kind, side, data_ranks, emb_ranks, kappa, i, j)
               for j in defining)


def max_pointwise(kind, n, kappa):
    """Direct maximization: pick the kappa largest ranks as the defining
    neighbourhood, each costing its excess over kappa (or 1 for PR)."""
    if kind == PR:
        return kappa
    return sum(max(0, rho - kappa) for rho in range(n - kappa, n))


def global_pair(kind, data_ranks, emb_ranks, kappa):
    n = len(data_ranks)
    c = max_pointwise(kind, n, kappa)
    if c == 0:
        return 1.0, 1.0
    f = 1.0 - sum(pointwise(kind, "F", data_ranks, emb_ranks, kappa, i)
                  for i in range(n)) / (n * c)
    m = 1.0 - sum(pointwise(kind, "M", data_ranks, emb_ranks, kappa, i)
                  for i in range(n)) / (n * c)
    return f, m


def retrieval_edges(emb_ranks, kappa):
    n = len(emb_ranks)
    return {(i, j) for i in range(n) for j in range(n)
            if 1 <= emb_ranks[i][j] <= kappa}


def relevance_edges(data_ranks, kappa):
    n = len(data_ranks)
    return {(i, j) for i in range(n) for j in range(n)
            if 1 <= data_ranks[i][j] <= kappa}
