# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Pareto kernels.

Every function here has a numpy twin in :mod:`sosmt._pykernels` with the
same signature and the same floating-point summation order.
"""
import numpy as np

from libc.math cimport INFINITY, sqrt


cdef inline bint _dominates(const double[:, ::1] F, Py_ssize_t a, Py_ssize_t b, Py_ssize_t m) noexcept nogil:
    cdef Py_ssize_t j
    cdef bint strict = False
    for j in range(m):
        if F[a, j] > F[b, j]:
            return False
        if F[a, j] < F[b, j]:
            strict = True
    return strict


def nondominated_ranks(const double[:, ::1] F):
    """Front index of every row of ``F`` (0 = nondominated)."""
    cdef Py_ssize_t n = F.shape[0], m = F.shape[1]
    cdef Py_ssize_t i, j, k, head, tail, cur_end
    ranks_arr = np.zeros(n, dtype=np.int64)
    cdef long long[::1] ranks = ranks_arr
    if n == 0:
        return ranks_arr
    # dominated-by lists as an n x n adjacency (n stays in the low hundreds)
    cdef unsigned char[:, ::1] dom = np.zeros((n, n), dtype=np.uint8)
    cdef long long[::1] count = np.zeros(n, dtype=np.int64)
    cdef long long[::1] queue = np.empty(n, dtype=np.int64)

    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                if _dominates(F, i, j, m):
                    dom[i, j] = 1
                    count[j] += 1
                elif _dominates(F, j, i, m):
                    dom[j, i] = 1
                    count[i] += 1
        tail = 0
        for i in range(n):
            if count[i] == 0:
                queue[tail] = i
                tail += 1
        head = 0
        k = 0
        while head < tail:
            cur_end = tail
            while head < cur_end:
                i = queue[head]
                head += 1
                ranks[i] = k
                for j in range(n):
                    if dom[i, j]:
                        count[j] -= 1
                        if count[j] == 0:
                            queue[tail] = j
                            tail += 1
            k += 1
    return ranks_arr


def crowding_distance(const double[:, ::1] F):
    """Crowding distance of a single front.

    Boundary points per objective get +inf. When an objective vector occurs
    more than once, its first row is scored as usual and the later copies
    get 0.
    """
    cdef Py_ssize_t n = F.shape[0], m = F.shape[1]
    cdef Py_ssize_t i, j, a, b, c
    cdef double span
    dist_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] dist = dist_arr
    if n == 0:
        return dist_arr
    if n <= 2:
        dist_arr[:] = np.inf
        return dist_arr

    Farr = np.asarray(F)
    # lexsort over all objectives groups identical vectors together, and
    # being stable keeps the first input row at the head of each group
    cdef long long[::1] lex = np.lexsort(Farr.T[::-1]).astype(np.int64)
    dup_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] dup = dup_arr
    cdef bint same
    for i in range(1, n):
        a = lex[i - 1]
        b = lex[i]
        same = True
        for j in range(m):
            if F[a, j] != F[b, j]:
                same = False
                break
        if same:
            dup[b] = 1

    uniq = np.flatnonzero(dup_arr == 0)
    cdef Py_ssize_t nu = uniq.shape[0]
    cdef long long[::1] order
    cdef long long[::1] uidx = uniq.astype(np.int64)
    if nu > 0 and nu <= 2:
        for i in range(nu):
            dist[uidx[i]] = INFINITY
    elif nu > 2:
        Fu = Farr[uniq]
        for j in range(m):
            order = np.argsort(Fu[:, j], kind="stable").astype(np.int64)
            a = uidx[order[0]]
            c = uidx[order[nu - 1]]
            span = F[c, j] - F[a, j]
            dist[a] = INFINITY
            dist[c] = INFINITY
            if span <= 0.0:
                continue
            for i in range(1, nu - 1):
                b = uidx[order[i]]
                dist[b] += (F[uidx[order[i + 1]], j] - F[uidx[order[i - 1]], j]) / span
    return dist_arr


def hv2d(const double[:, ::1] P, double r1, double r2):
    """Exact area dominated by ``P`` inside the box bounded by ``(r1, r2)``."""
    cdef Py_ssize_t n = P.shape[0]
    cdef Py_ssize_t i, k
    cdef double area = 0.0, best = r2
    if n == 0:
        return 0.0
    Parr = np.asarray(P)
    order_arr = np.lexsort((Parr[:, 1], Parr[:, 0])).astype(np.int64)
    cdef long long[::1] order = order_arr
    for i in range(n):
        k = order[i]
        if P[k, 0] >= r1 or P[k, 1] >= r2:
            continue
        if P[k, 1] < best:
            area += (r1 - P[k, 0]) * (best - P[k, 1])
            best = P[k, 1]
    return area


def mean_min_distance(const double[:, ::1] A, const double[:, ::1] B):
    """Mean over rows of ``B`` of the Euclidean distance to the nearest row of ``A``."""
    cdef Py_ssize_t na = A.shape[0], nb = B.shape[0], d = A.shape[1]
    cdef Py_ssize_t i, j, t
    cdef double total = 0.0, best, s, diff
    for i in range(nb):
        best = INFINITY
        for j in range(na):
            s = 0.0
            for t in range(d):
                diff = A[j, t] - B[i, t]
                s += diff * diff
            if s < best:
                best = s
        total += sqrt(best)
    return total / nb
