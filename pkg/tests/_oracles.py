"""Slow, obviously-correct reference computations used only by the tests.

Nothing here imports homix's homology or SNF code.
"""

import itertools
from fractions import Fraction
from math import gcd


def bareiss_det(M):
    """Exact determinant by fraction-free elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank_q(M):
    A = [[Fraction(x) for x in r] for r in M]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


def determinantal_divisors(M):
    """d_k = gcd of all k x k minors, for k up to the rank."""
    m = len(M)
    n = len(M[0]) if m else 0
    r = rank_q(M)
    out = []
    prev = 1
    for k in range(1, r + 1):
        d = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                d = gcd(d, bareiss_det([[M[i][j] for j in cols] for i in rows]))
                if d == prev:  # d_{k-1} divides d_k, cannot get smaller
                    break
            if d == prev:
                break
        out.append(abs(d))
        prev = abs(d)
    return out


def invariant_factors_by_minors(M):
    ds = determinantal_divisors(M)
    return [b // a for a, b in zip([1] + ds, ds)]


# -- graphs ----------------------------------------------------------------


def all_maps(G, H):
    for vals in itertools.product(range(H.n), repeat=G.n):
        if all(H.has_edge(vals[u], vals[v]) for u, v in G.edges) and all(
            H.has_edge(vals[v], vals[v]) for v in G.loops
        ):
            yield vals


def adjacent_by_definition(G, H, a, b):
    pairs = list(G.edges) + [(v, v) for v in G.loops]
    return all(H.has_edge(a[u], b[v]) and H.has_edge(a[v], b[u]) for u, v in pairs)


def hom_graph_components(G, H):
    maps = list(all_maps(G, H))
    seen = {}
    comps = 0
    for m in maps:
        if m in seen:
            continue
        stack = [m]
        seen[m] = comps
        while stack:
            x = stack.pop()
            for y in maps:
                if y not in seen and adjacent_by_definition(G, H, x, y):
                    seen[y] = comps
                    stack.append(y)
        comps += 1
    return maps, seen, comps


def betti1_rational(G):
    """First Betti number of the clique complex over Q, from raw counts and ranks."""
    edges = sorted(G.edges)
    eidx = {e: i for i, e in enumerate(edges)}
    tris = [
        (a, b, c)
        for a, b, c in itertools.combinations(range(G.n), 3)
        if (a, b) in G.edges and (a, c) in G.edges and (b, c) in G.edges
    ]
    d1 = [[0] * len(edges) for _ in range(G.n)]
    for j, (u, v) in enumerate(edges):
        d1[u][j] -= 1
        d1[v][j] += 1
    d2 = [[0] * len(tris) for _ in edges]
    for j, (a, b, c) in enumerate(tris):
        d2[eidx[(b, c)]][j] += 1
        d2[eidx[(a, c)]][j] -= 1
        d2[eidx[(a, b)]][j] += 1
    r1 = rank_q(d1) if edges else 0
    r2 = rank_q(d2) if tris else 0
    return len(edges) - r1 - r2


def winding_number(walk, g):
    """Signed number of turns of a closed walk in C_g (consecutive vertices within 1)."""
    total = 0
    vs = list(walk) + [walk[0]]
    for a, b in zip(vs, vs[1:]):
        d = (b - a) % g
        total += 1 if d == 1 else -1 if d == g - 1 else 0
    assert total % g == 0
    return total // g
