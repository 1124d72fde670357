"""Pure-Python backtracking kernel (reference and fallback for ``_kernels.pyx``).

Both implementations share one contract: positions ``0..n-1`` are assigned in
``order``; ``later_nbrs[p]`` lists the positions ``q > p`` joined to position
``p`` by a source edge; ``domains[p]`` is the initial bitmask of allowed
target vertices; ``adj_masks[h]`` is the closed neighbourhood mask of target
vertex ``h``.  Values are tried in increasing target index and each
assignment forward-checks the later neighbours.
"""

from __future__ import annotations

STATUS_COMPLETE = 0
STATUS_LIMIT = 1
STATUS_BUDGET = 2


def enumerate_maps(order, later_nbrs, domains, adj_masks, limit, node_budget, count_only=False):
    """Return ``(maps, count, nodes, status)``; maps are tuples indexed by source vertex."""
    n = len(order)
    maps = []
    if n == 0:
        return ([()] if not count_only else []), 1, 0, STATUS_COMPLETE
    nbv = len(order)
    dom = [list(domains)] + [None] * n
    cand = [0] * n
    vals = [0] * n
    cand[0] = dom[0][0]
    p = 0
    count = 0
    nodes = 0
    status = STATUS_COMPLETE
    while p >= 0:
        c = cand[p]
        if not c:
            p -= 1
            continue
        low = c & -c
        cand[p] = c ^ low
        h = low.bit_length() - 1
        nodes += 1
        if nodes > node_budget:
            status = STATUS_BUDGET
            break
        vals[p] = h
        if p == n - 1:
            count += 1
            if not count_only:
                out = [0] * nbv
                for i in range(n):
                    out[order[i]] = vals[i]
                maps.append(tuple(out))
            if count >= limit:
                status = STATUS_LIMIT
                break
            continue
        nd = dom[p][:]
        am = adj_masks[h]
        ok = True
        for q in later_nbrs[p]:
            d = nd[q] & am
            if not d:
                ok = False
                break
            nd[q] = d
        if not ok:
            continue
        p += 1
        dom[p] = nd
        cand[p] = nd[p]
    return maps, count, nodes, status
