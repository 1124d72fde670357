# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backtracking kernel; same contract as ``_kernels_py.enumerate_maps``.

Target graphs are limited to 64 vertices so domains fit in one machine word.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long x) nogil

STATUS_COMPLETE = 0
STATUS_LIMIT = 1
STATUS_BUDGET = 2

MAX_TARGET = 64


def enumerate_maps(order, later_nbrs, domains, adj_masks, long long limit,
                   long long node_budget, bint count_only=False):
    cdef int n = len(order)
    cdef int m = len(adj_masks)
    if m > MAX_TARGET:
        raise ValueError("compiled kernel supports at most 64 target vertices")
    if n == 0:
        return ([()] if not count_only else []), 1, 0, STATUS_COMPLETE

    cdef int total = 0
    cdef int p, q, k, i
    for p in range(n):
        total += len(later_nbrs[p])

    cdef int *ptr = <int *> malloc((n + 1) * sizeof(int))
    cdef int *nb = <int *> malloc((total + 1) * sizeof(int))
    cdef int *ord_ = <int *> malloc(n * sizeof(int))
    cdef int *vals = <int *> malloc(n * sizeof(int))
    cdef u64 *adj = <u64 *> malloc((m + 1) * sizeof(u64))
    cdef u64 *dom = <u64 *> malloc((n + 1) * n * sizeof(u64))
    cdef u64 *cand = <u64 *> malloc(n * sizeof(u64))
    if not (ptr and nb and ord_ and vals and adj and dom and cand):
        free(ptr); free(nb); free(ord_); free(vals); free(adj); free(dom); free(cand)
        raise MemoryError()

    k = 0
    for p in range(n):
        ptr[p] = k
        for q in later_nbrs[p]:
            nb[k] = q
            k += 1
        ord_[p] = order[p]
        dom[p] = <u64> domains[p]
    ptr[n] = k
    for i in range(m):
        adj[i] = <u64> adj_masks[i]

    maps = []
    cdef long long count = 0
    cdef long long nodes = 0
    cdef int status = 0
    cdef u64 c, low, am, d
    cdef int h
    cdef bint ok
    cdef u64 *cur
    cdef u64 *nxt

    try:
        cand[0] = dom[0]
        p = 0
        while p >= 0:
            c = cand[p]
            if c == 0:
                p -= 1
                continue
            low = c & (~c + 1)
            cand[p] = c ^ low
            h = __builtin_ctzll(c)
            nodes += 1
            if nodes > node_budget:
                status = 2
                break
            vals[p] = h
            if p == n - 1:
                count += 1
                if not count_only:
                    out = [0] * n
                    for i in range(n):
                        out[ord_[i]] = vals[i]
                    maps.append(tuple(out))
                if count >= limit:
                    status = 1
                    break
                continue
            cur = dom + p * n
            nxt = dom + (p + 1) * n
            memcpy(nxt, cur, n * sizeof(u64))
            am = adj[h]
            ok = True
            for k in range(ptr[p], ptr[p + 1]):
                q = nb[k]
                d = nxt[q] & am
                if d == 0:
                    ok = False
                    break
                nxt[q] = d
            if not ok:
                continue
            p += 1
            cand[p] = nxt[p]
    finally:
        free(ptr); free(nb); free(ord_); free(vals); free(adj); free(dom); free(cand)
    return maps, count, nodes, status
