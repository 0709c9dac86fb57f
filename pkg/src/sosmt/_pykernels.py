"""Pure numpy versions of the compiled kernels in ``_ckernels.pyx``."""

import numpy as np


def nondominated_ranks(F):
    F = np.asarray(F, dtype=np.float64)
    n = F.shape[0]
    ranks = np.zeros(n, dtype=np.int64)
    if n == 0:
        return ranks
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    dom = le & lt  # dom[i, j]: i dominates j
    count = dom.sum(axis=0)
    current = np.flatnonzero(count == 0)
    k = 0
    while current.size:
        ranks[current] = k
        count = count - dom[current].sum(axis=0)
        count[current] = -1
        current = np.flatnonzero(count == 0)
        k += 1
    return ranks


def crowding_distance(F):
    F = np.asarray(F, dtype=np.float64)
    n, m = F.shape
    dist = np.zeros(n)
    if n == 0:
        return dist
    if n <= 2:
        dist[:] = np.inf
        return dist
    # lexsort is stable, so within a group of equal vectors the first input
    # row comes first; it stands for the group and later copies get 0
    lex = np.lexsort(F.T[::-1])
    same = np.all(F[lex[1:]] == F[lex[:-1]], axis=1)
    dup = np.zeros(n, dtype=bool)
    dup[lex[1:][same]] = True
    uniq = np.flatnonzero(~dup)
    nu = uniq.size
    if 0 < nu <= 2:
        dist[uniq] = np.inf
    elif nu > 2:
        Fu = F[uniq]
        du = np.zeros(nu)
        for j in range(m):
            order = np.argsort(Fu[:, j], kind="stable")
            vals = Fu[order, j]
            span = vals[-1] - vals[0]
            du[order[0]] = np.inf
            du[order[-1]] = np.inf
            if span <= 0.0:
                continue
            du[order[1:-1]] += (vals[2:] - vals[:-2]) / span
        dist[uniq] = du
    return dist


def hv2d(P, r1, r2):
    P = np.asarray(P, dtype=np.float64).reshape(-1, 2)
    if P.shape[0] == 0:
        return 0.0
    P = P[np.lexsort((P[:, 1], P[:, 0]))]
    P = P[(P[:, 0] < r1) & (P[:, 1] < r2)]
    if P.shape[0] == 0:
        return 0.0
    prev = np.minimum.accumulate(np.concatenate(([r2], P[:, 1])))
    gain = np.maximum(prev[:-1] - P[:, 1], 0.0)
    return float(np.cumsum((r1 - P[:, 0]) * gain)[-1])


def mean_min_distance(A, B):
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    d2 = ((A[None, :, :] - B[:, None, :]) ** 2).sum(axis=2)
    return float(np.cumsum(np.sqrt(d2.min(axis=1)))[-1] / B.shape[0])
