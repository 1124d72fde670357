"""Integral first homology of clique complexes of graphs.

The cell model uses only non-degenerate simplices: 1-cells are the non-loop
edges oriented ``u < v`` and 2-cells are triangles on three distinct
vertices.  Loops and degenerate triangles only make loop steps trivial and
reversed edges negative, and both effects are built into how walks are
turned into chains (loop steps contribute nothing, a step ``v -> u`` along
the edge ``(u, v)`` contributes ``-1``).

Computing ``H_1`` goes through the cycle space of a BFS spanning forest:
a closed 1-chain is determined by its coefficients on non-tree edges, so
``Z_1`` is free on the non-tree edges and each triangle boundary projects to
a relation among them.  Relations with a unit coefficient are eliminated
sparsely; whatever is left goes through a dense Smith normal form.
"""

from __future__ import annotations

import heapq
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .errors import BudgetExceeded, InvalidWalk
from .graph import ClosedWalk, Graph, VertexMap, components, triangles
from .snf import smith_normal_form

DEFAULT_SNF_LIMIT = 20000


# -- chain complex ---------------------------------------------------------


@dataclass
class ChainComplex:
    graph: Graph
    edges: list
    triangles: list
    d1: sparse.csc_matrix
    d2: sparse.csc_matrix
    edge_index: dict = field(repr=False, default_factory=dict)

    def boundary_is_zero(self) -> bool:
        return (self.d1 @ self.d2).count_nonzero() == 0


def build_chain_complex(G: Graph) -> ChainComplex:
    edges = list(G.sorted_edges)
    eidx = {e: i for i, e in enumerate(edges)}
    tris = triangles(G)
    rows, cols, vals = [], [], []
    for j, (u, v) in enumerate(edges):
        rows += [u, v]
        cols += [j, j]
        vals += [-1, 1]
    d1 = sparse.csc_matrix((vals, (rows, cols)), shape=(G.n, len(edges)), dtype=np.int64)
    rows, cols, vals = [], [], []
    for j, (a, b, c) in enumerate(tris):
        # d[a,b,c] = [b,c] - [a,c] + [a,b]
        for e, s in (((b, c), 1), ((a, c), -1), ((a, b), 1)):
            rows.append(eidx[e])
            cols.append(j)
            vals.append(s)
    d2 = sparse.csc_matrix((vals, (rows, cols)), shape=(len(edges), len(tris)), dtype=np.int64)
    return ChainComplex(G, edges, tris, d1, d2, eidx)


def walk_chain(walk: ClosedWalk | Sequence[int], G: Graph | None = None) -> dict:
    """Signed incidence chain of a closed walk, as ``{(u, v): coef}`` with ``u < v``."""
    w = walk if isinstance(walk, ClosedWalk) else ClosedWalk(tuple(walk))
    if G is not None:
        w.validate(G)
    chain: dict = {}
    for a, b in w.steps():
        if a == b:
            continue
        if a < b:
            e, s = (a, b), 1
        else:
            e, s = (b, a), -1
        c = chain.get(e, 0) + s
        if c:
            chain[e] = c
        else:
            chain.pop(e, None)
    return chain


def chain_is_closed(chain: dict) -> bool:
    bd: dict = {}
    for (u, v), c in chain.items():
        bd[u] = bd.get(u, 0) - c
        bd[v] = bd.get(v, 0) + c
    return not any(bd.values())


# -- relation elimination ------------------------------------------------


def _eliminate_units(ngens: int, relations: list[dict]):
    """Sparse elimination of generators through relations with a +-1 coefficient.

    Returns ``(rules, survivors, remaining)``: ``rules`` is the ordered list of
    ``(g, {k: b})`` meaning ``e_g = sum b * e_k`` modulo the relations,
    ``survivors`` the generators never eliminated and ``remaining`` the
    relations with no unit pivot left.
    """
    rels: dict[int, dict] = {}
    rows: list[set] = [set() for _ in range(ngens)]
    heap: list = []
    for rid, r in enumerate(relations):
        r = {k: c for k, c in r.items() if c}
        if not r:
            continue
        rels[rid] = r
        for k in r:
            rows[k].add(rid)
        heapq.heappush(heap, (len(r), rid))
    alive = [True] * ngens
    rules = []
    while heap:
        size, rid = heapq.heappop(heap)
        r = rels.get(rid)
        if r is None or len(r) != size:
            continue
        units = [k for k, c in r.items() if c == 1 or c == -1]
        if not units:
            continue
        g = min(units, key=lambda k: (len(rows[k]), k))
        c = r[g]
        rest = {k: -c * a for k, a in r.items() if k != g}
        del rels[rid]
        for k in r:
            rows[k].discard(rid)
        for sid in list(rows[g]):
            s = rels[sid]
            f = -s[g] * c
            del s[g]
            for k, a in r.items():
                if k == g:
                    continue
                v = s.get(k, 0) + f * a
                if v:
                    if k not in s:
                        rows[k].add(sid)
                    s[k] = v
                elif k in s:
                    del s[k]
                    rows[k].discard(sid)
            if s:
                heapq.heappush(heap, (len(s), sid))
            else:
                del rels[sid]
        rows[g] = set()
        alive[g] = False
        rules.append((g, rest))
    survivors = [k for k in range(ngens) if alive[k]]
    return rules, survivors, list(rels.values())


# -- presentation -----------------------------------------------------------


@dataclass
class _Component:
    vertices: list
    root: int
    parent: dict
    depth: dict
    gens: list  # non-tree edges, lexicographic
    gen_index: dict
    elim: dict  # generator -> {survivor slot: coef}
    n_free_plain: int  # survivors that no remaining relation touches
    plain: list
    tangled: list  # survivors entering the dense SNF
    U: list  # SNF row transform restricted to tangled survivors
    U_inv: list  # column i is the survivor combination realising SNF row i
    diag: list  # SNF diagonal, padded with zeros to len(tangled)
    free_rows: list
    torsion_rows: list


@dataclass
class H1Presentation:
    """``H_1`` of the clique complex of ``graph`` with a coordinate map.

    Coordinates are ``rank`` free integers followed by one residue per entry
    of ``torsion``.
    """

    graph: Graph
    rank: int
    torsion: list
    basis_cycles: list
    torsion_cycles: list
    _comps: list = field(repr=False, default_factory=list)
    _comp_of: list = field(repr=False, default_factory=list)
    _free_offset: list = field(repr=False, default_factory=list)
    _tors_offset: list = field(repr=False, default_factory=list)

    @property
    def dimension(self) -> int:
        return self.rank + len(self.torsion)

    def chain_coords(self, chain: dict) -> tuple:
        """Class of a closed 1-chain ``{(u, v): coef}``."""
        if not chain_is_closed(chain):
            raise InvalidWalk("chain is not closed")
        G = self.graph
        out = [0] * self.dimension
        per_comp: dict[int, dict] = {}
        for e, c in chain.items():
            if e not in G.edges:
                raise InvalidWalk(f"{e} is not an edge")
            ci = self._comp_of[e[0]]
            comp = self._comps[ci]
            gi = comp.gen_index.get(e)
            if gi is not None:
                d = per_comp.setdefault(ci, {})
                d[gi] = d.get(gi, 0) + c
        for ci, x in per_comp.items():
            comp = self._comps[ci]
            plain = [0] * comp.n_free_plain
            tang = [0] * len(comp.tangled)
            for g, c in x.items():
                if not c:
                    continue
                for slot, b in comp.elim[g].items():
                    if slot < comp.n_free_plain:
                        plain[slot] += c * b
                    else:
                        tang[slot - comp.n_free_plain] += c * b
            z = [sum(a * b for a, b in zip(row, tang)) for row in comp.U] if tang else []
            fo = self._free_offset[ci]
            for i, v in enumerate(plain):
                out[fo + i] = v
            fo += comp.n_free_plain
            for j, i in enumerate(comp.free_rows):
                out[fo + j] = z[i]
            to = self.rank + self._tors_offset[ci]
            for j, i in enumerate(comp.torsion_rows):
                out[to + j] = z[i] % comp.diag[i]
        return tuple(out)

    def coords(self, walk: ClosedWalk | Sequence[int]) -> tuple:
        return cycle_class(self, walk)

    def is_zero(self, cls: Sequence[int]) -> bool:
        return not any(cls)


def _bfs_tree(G: Graph, root: int):
    parent = {root: -1}
    depth = {root: 0}
    q = deque([root])
    while q:
        u = q.popleft()
        for w in sorted(G.adj[u]):
            if w not in parent:
                parent[w] = u
                depth[w] = depth[u] + 1
                q.append(w)
    return parent, depth


def _path_to_root(parent: dict, u: int) -> list:
    path = [u]
    while parent[path[-1]] >= 0:
        path.append(parent[path[-1]])
    return path


def _fundamental_cycle(comp: _Component, u: int, v: int) -> tuple:
    """Simple cycle ``u -> v -> ... -> lca -> ... -> u`` closed by the tree."""
    pu = _path_to_root(comp.parent, u)
    pv = _path_to_root(comp.parent, v)
    su = set(pu)
    lca = next(x for x in pv if x in su)
    up_u = pu[: pu.index(lca) + 1]  # u .. lca
    up_v = pv[: pv.index(lca)]  # v .. (child of lca)
    # u -> v -> ... -> lca -> ... -> (child of lca on u side)
    return (u,) + tuple(up_v) + ((lca,) if lca != u else ()) + tuple(reversed(up_u[1:-1]))


def _rooted_loop(comp: _Component, u: int, v: int) -> tuple:
    """Closed walk ``root -> u -> v -> root`` along the tree."""
    pu = _path_to_root(comp.parent, u)
    pv = _path_to_root(comp.parent, v)
    return tuple(reversed(pu)) + tuple(pv[:-1])


def _realize(comp: _Component, coeffs: dict) -> ClosedWalk:
    """Closed walk whose chain is ``sum coeffs[g] * (fundamental cycle of g)``."""
    nz = {g: c for g, c in coeffs.items() if c}
    if len(nz) == 1:
        (g, c), = nz.items()
        if abs(c) == 1:
            u, v = comp.gens[g]
            w = ClosedWalk(_canonical_simple(_fundamental_cycle(comp, u, v)))
            return w if c == 1 else w.reversed()
    seq: list = []
    for g in sorted(nz):
        c = nz[g]
        u, v = comp.gens[g]
        piece = _rooted_loop(comp, u, v) if c > 0 else _rooted_loop(comp, v, u)
        seq.extend(list(piece) * abs(c))
    if not seq:
        return ClosedWalk((comp.root,))
    return ClosedWalk(tuple(seq))


def _canonical_simple(cyc: tuple) -> tuple:
    """Rotate a simple cycle so it starts at its smallest vertex (orientation kept)."""
    k = cyc.index(min(cyc))
    return cyc[k:] + cyc[:k]


def snf_limit() -> int:
    env = os.environ.get("HOMIX_SNF_LIMIT")
    return int(env) if env else DEFAULT_SNF_LIMIT


def h1_presentation(G: Graph, roots: Iterable[int] | None = None, max_dense: int | None = None) -> H1Presentation:
    """Rank, torsion, basis cycles and coordinates of ``H_1`` of the clique complex.

    ``roots`` optionally picks the spanning-tree root of each component (the
    first listed vertex lying in it); the default is the smallest vertex.
    ``max_dense`` caps the side of the dense block left after sparse
    elimination (BudgetExceeded beyond it).
    """
    max_dense = snf_limit() if max_dense is None else max_dense
    root_pref = list(roots) if roots is not None else []
    comp_of = [0] * G.n
    comps_v = components(G)
    for ci, vs in enumerate(comps_v):
        for v in vs:
            comp_of[v] = ci
    # triangles grouped by component
    tris_by_comp: list[list] = [[] for _ in comps_v]
    for t in triangles(G):
        tris_by_comp[comp_of[t[0]]].append(t)

    comps = []
    for ci, vs in enumerate(comps_v):
        vset = set(vs)
        root = next((r for r in root_pref if r in vset), vs[0])
        parent, depth = _bfs_tree(G, root)
        tree = {(min(u, p), max(u, p)) for u, p in parent.items() if p >= 0}
        gens = sorted(e for e in G.edges if e[0] in vset and e not in tree)
        gidx = {e: i for i, e in enumerate(gens)}
        relations = []
        for a, b, c in tris_by_comp[ci]:
            r: dict = {}
            for e, s in (((b, c), 1), ((a, c), -1), ((a, b), 1)):
                g = gidx.get(e)
                if g is not None:
                    r[g] = r.get(g, 0) + s
            if any(r.values()):
                relations.append(r)
        rules, survivors, remaining = _eliminate_units(len(gens), relations)
        touched = sorted({k for r in remaining for k in r})
        tset = set(touched)
        plain = [k for k in survivors if k not in tset]
        slot = {k: i for i, k in enumerate(plain)}
        for i, k in enumerate(touched):
            slot[k] = len(plain) + i
        elim: dict = {k: {slot[k]: 1} for k in survivors}
        for g, rest in reversed(rules):
            acc: dict = {}
            for k, b in rest.items():
                for s_, c in elim[k].items():
                    v = acc.get(s_, 0) + b * c
                    if v:
                        acc[s_] = v
                    else:
                        acc.pop(s_, None)
            elim[g] = acc
        if len(touched) > max_dense:
            raise BudgetExceeded(f"dense block of {len(touched)} generators exceeds {max_dense}", partial=len(touched))
        if touched:
            tpos = {k: i for i, k in enumerate(touched)}
            M = [[0] * len(remaining) for _ in touched]
            for j, r in enumerate(remaining):
                for k, c in r.items():
                    M[tpos[k]][j] = c
            snf = smith_normal_form(M)
            diag = snf.diagonal + [0] * (len(touched) - len(snf.diagonal))
            U, U_inv = snf.U, snf.U_inv
        else:
            diag, U, U_inv = [], [], []
        free_rows = [i for i, d in enumerate(diag) if d == 0]
        torsion_rows = [i for i, d in enumerate(diag) if d > 1]
        comp = _Component(
            vertices=vs, root=root, parent=parent, depth=depth, gens=gens, gen_index=gidx,
            elim=elim, n_free_plain=len(plain), plain=plain, tangled=touched, U=U, U_inv=U_inv,
            diag=diag, free_rows=free_rows, torsion_rows=torsion_rows,
        )
        comps.append(comp)

    basis, tors_cycles, torsion = [], [], []
    free_off, tors_off = [], []
    rank = 0
    for comp in comps:
        free_off.append(rank)
        tors_off.append(len(torsion))
        for g in comp.plain:
            basis.append(_realize(comp, {g: 1}))
        for i in comp.free_rows:
            basis.append(_realize(comp, {g: comp.U_inv[p][i] for p, g in enumerate(comp.tangled)}))
        for i in comp.torsion_rows:
            tors_cycles.append(_realize(comp, {g: comp.U_inv[p][i] for p, g in enumerate(comp.tangled)}))
            torsion.append(comp.diag[i])
        rank += comp.n_free_plain + len(comp.free_rows)
    return H1Presentation(
        graph=G, rank=rank, torsion=torsion, basis_cycles=basis, torsion_cycles=tors_cycles,
        _comps=comps, _comp_of=comp_of, _free_offset=free_off, _tors_offset=tors_off,
    )


def cycle_class(P: H1Presentation, walk: ClosedWalk | Sequence[int]) -> tuple:
    w = walk if isinstance(walk, ClosedWalk) else ClosedWalk.parse(walk)
    return P.chain_coords(walk_chain(w, P.graph))


def image_class(phi: VertexMap, walk: ClosedWalk | Sequence[int], P_H: H1Presentation) -> tuple:
    w = walk if isinstance(walk, ClosedWalk) else ClosedWalk.parse(walk)
    w.validate(phi.source)
    return cycle_class(P_H, w.mapped(phi.values))


def nt_basis(G: Graph) -> list:
    return h1_presentation(G).basis_cycles


def flat_profile(
    phi: VertexMap,
    P_G: H1Presentation | None = None,
    P_H: H1Presentation | None = None,
) -> list:
    """Image class of every basis (and torsion generator) cycle of the source."""
    P_G = P_G or h1_presentation(phi.source)
    P_H = P_H or h1_presentation(phi.target)
    vals = phi.values
    return [
        cycle_class(P_H, w.mapped(vals)) for w in list(P_G.basis_cycles) + list(P_G.torsion_cycles)
    ]


def is_flat(
    phi: VertexMap,
    P_G: H1Presentation | None = None,
    P_H: H1Presentation | None = None,
) -> bool:
    return all(not any(c) for c in flat_profile(phi, P_G, P_H))


def class_matrix(P: H1Presentation, walks: Iterable) -> list[list[int]]:
    return [list(cycle_class(P, w)) for w in walks]
