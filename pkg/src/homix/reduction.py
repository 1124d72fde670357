"""From a 3-colouring instance ``G`` to a graph ``G*`` with a non-flat map to ``H``
exactly when ``G`` is 3-colourable.

``G^a`` glues sum gadgets onto shared copies of the girth cycle ``Z`` of
``H``: one ``S_3`` per vertex summing ``A^v_0 + A^v_1 + A^v_2`` into ``Z*``,
one twisted ``S_2`` per vertex and colour pair, and one ``S_2`` per edge and
colour.  ``G*`` cones off a cycle basis of the union ``T*`` of the gadget
trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from networkx.utils import UnionFind

from .errors import Acyclic, ClaimViolation, ImproperColouring, InvalidGraph, NotNonFlat, TargetUnsuitable
from .gadgets import SumGadget, build_sum_gadget, gamma_colouring
from .graph import (
    ClosedWalk,
    Graph,
    VertexMap,
    add_cone,
    disjoint_union,
    girth_cycle,
    identify_vertices,
    induced_subgraph,
    is_connected,
    is_triangle_free,
    make_cycle,
)
from .homology import H1Presentation, class_matrix, cycle_class, h1_presentation, nt_basis
from .snf import smith_normal_form

COLOURS = 3


@dataclass
class GadgetCopy:
    name: str
    kind: str  # "vertex", "pair" or "edge"
    key: tuple
    gadget: SumGadget
    projection: tuple  # local vertex -> vertex of G^a
    twisted: bool = False

    def walk(self, w: ClosedWalk) -> ClosedWalk:
        return ClosedWalk(tuple(self.projection[v] for v in w.vertices))


@dataclass
class Preliminary:
    source: Graph
    target: Graph
    Zcycle_H: ClosedWalk
    g: int
    graph: Graph
    Zstar: ClosedWalk
    Av: dict
    copies: list
    Tstar: frozenset
    gadget_cycles: dict


@dataclass
class ReductionArtifact:
    source: Graph
    target: Graph
    Zcycle_H: ClosedWalk
    g: int
    Ga: Graph
    Gstar: Graph
    Zstar: ClosedWalk
    Av: dict
    gadget_cycles: dict
    Tstar: frozenset
    basis_T: list
    plug_vertices: list  # plug_vertices[k] cones basis_T[k]
    copies: list = field(default_factory=list, repr=False)

    @property
    def end_cycles(self) -> list:
        return [self.Zstar] + [self.Av[k] for k in sorted(self.Av)]

    def provenance(self) -> list:
        return [
            {"name": c.name, "kind": c.kind, "key": list(c.key), "s": c.gadget.s,
             "twisted": c.twisted, "projection": list(c.projection)}
            for c in self.copies
        ]


def check_target(H: Graph) -> ClosedWalk:
    if H.n == 0 or not is_connected(H):
        raise TargetUnsuitable("target must be connected and nonempty")
    if not is_triangle_free(H):
        raise TargetUnsuitable("target has a triangle")
    try:
        return girth_cycle(H)
    except Acyclic:
        raise TargetUnsuitable("target has no cycle") from None


def reflect(k: int, g: int) -> int:
    return (g - k) % g


def build_Ga(G: Graph, H: Graph) -> Preliminary:
    if G.loops:
        raise InvalidGraph("the 3-colouring instance must be irreflexive")
    Zc = check_target(H)
    g = len(Zc)
    S3 = build_sum_gadget(3, g)
    S2 = build_sum_gadget(2, g)
    ring = make_cycle(g)

    # base cycles come first so they keep their indices through the quotient
    base = ring
    for _ in range(COLOURS * G.n):
        base = disjoint_union(base, ring)

    def zs(k):
        return k

    def av(v, i, k):
        return g * (1 + COLOURS * v + i) + k

    plan = []  # (name, kind, key, gadget, twisted)
    for v in range(G.n):
        plan.append((f"S^{v}", "vertex", (v,), S3, False))
    for v in range(G.n):
        for i, j in combinations(range(COLOURS), 2):
            plan.append((f"S^{v}_{i}{j}", "pair", (v, i, j), S2, True))
    for u, v in G.sorted_edges:
        for i in range(COLOURS):
            plan.append((f"S_{i}^{u},{v}", "edge", (u, v, i), S2, False))

    full = base
    offsets = []
    for *_, gad, _tw in plan:
        offsets.append(full.n)
        full = disjoint_union(full, gad.graph)

    uf = UnionFind(range(full.n))
    for (name, kind, key, gad, twisted), off in zip(plan, offsets):
        A = gad.A
        if kind == "vertex":
            (v,) = key
            for k in range(g):
                uf.union(off + gad.Z.vertices[k], zs(k))
                for i in range(COLOURS):
                    uf.union(off + A[i].vertices[k], av(v, i, k))
        elif kind == "pair":
            v, i, j = key
            for k in range(g):
                uf.union(off + A[0].vertices[k], av(v, i, k))
                uf.union(off + A[1].vertices[k], av(v, j, reflect(k, g)))
        else:
            u, v, i = key
            for k in range(g):
                uf.union(off + A[0].vertices[k], av(u, i, k))
                uf.union(off + A[1].vertices[k], av(v, i, k))
    res = identify_vertices(full, [c for c in uf.to_sets() if len(c) > 1])
    Ga = res.quotient.with_name("Ga")
    proj = res.projection.values

    Zstar = ClosedWalk(tuple(proj[zs(k)] for k in range(g)))
    Av = {(v, i): ClosedWalk(tuple(proj[av(v, i, k)] for k in range(g))) for v in range(G.n) for i in range(COLOURS)}
    copies = []
    cycles: dict = {"Z*": Zstar}
    for (v, i), w in Av.items():
        cycles[f"A^{v}_{i}"] = w
    T: set = set()
    for (name, kind, key, gad, twisted), off in zip(plan, offsets):
        cp = GadgetCopy(name, kind, key, gad, tuple(proj[off + x] for x in range(gad.graph.n)), twisted)
        copies.append(cp)
        for t, w in enumerate(gad.slices):
            cycles[f"{name}.slice{t}"] = cp.walk(w)
        for i, w in enumerate(gad.A):
            cycles[f"{name}.A{i}"] = cp.walk(w)
        cycles[f"{name}.Z"] = cp.walk(gad.Z)
        T.update(cp.projection[x] for x in gad.T)
    for w in [Zstar, *Av.values()]:
        if len(set(w.vertices)) != g:
            raise ClaimViolation("a base cycle collapsed during identification")
    Tstar = frozenset(T)
    if not is_connected(induced_subgraph(Ga, Tstar)[0]):
        raise ClaimViolation("T* is not connected")
    return Preliminary(G, H, Zc, g, Ga, Zstar, Av, copies, Tstar, cycles)


def build_Gstar(G: Graph, H: Graph) -> ReductionArtifact:
    pre = build_Ga(G, H)
    Tg, old = induced_subgraph(pre.graph, pre.Tstar)
    basis_T = [ClosedWalk(tuple(old[x] for x in w.vertices)) for w in nt_basis(Tg)]
    Gs = pre.graph
    plugs = []
    for w in basis_T:
        plugs.append(Gs.n)
        Gs = add_cone(Gs, w)
    return ReductionArtifact(
        source=G, target=H, Zcycle_H=pre.Zcycle_H, g=pre.g, Ga=pre.graph, Gstar=Gs.with_name("G*"),
        Zstar=pre.Zstar, Av=pre.Av, gadget_cycles=pre.gadget_cycles, Tstar=pre.Tstar,
        basis_T=basis_T, plug_vertices=plugs, copies=pre.copies,
    )


def _normalise_colouring(R: ReductionArtifact, c) -> list:
    G = R.source
    if isinstance(c, Mapping):
        c = [c[v] for v in range(G.n)]
    c = [int(x) for x in c]
    if len(c) != G.n or any(not 0 <= x < COLOURS for x in c):
        raise ImproperColouring("colouring must give every vertex a colour in {0, 1, 2}")
    for u, v in G.edges:
        if c[u] == c[v]:
            raise ImproperColouring(f"edge {(u, v)} is monochromatic")
    return c


def _copy_colouring(cp: GadgetCopy, c: Sequence[int], g: int):
    """Values in ``Z = C_g`` for one gadget copy, or None for the constant 0 map."""
    if cp.kind == "vertex":
        return gamma_colouring(cp.gadget, c[cp.key[0]]).values
    if cp.kind == "pair":
        v, i, j = cp.key
        if c[v] == i:
            return gamma_colouring(cp.gadget, 0).values
        if c[v] == j:
            # the second end cycle is glued in reverse, so wind it backwards
            return tuple(reflect(x, g) for x in gamma_colouring(cp.gadget, 1).values)
        return None
    u, v, i = cp.key
    if c[u] == i:
        return gamma_colouring(cp.gadget, 0).values
    if c[v] == i:
        return gamma_colouring(cp.gadget, 1).values
    return None


def witness_hom(R: ReductionArtifact, colouring, check: bool = True) -> VertexMap:
    """Non-flat ``G* -> H`` built from a proper 3-colouring."""
    c = _normalise_colouring(R, colouring)
    g = R.g
    vals: list = [None] * R.Gstar.n

    def put(x, z):
        if vals[x] is None:
            vals[x] = z
        elif vals[x] != z:
            raise ClaimViolation(f"gadget colourings disagree at vertex {x}")

    for k, x in enumerate(R.Zstar.vertices):
        put(x, k)
    for cp in R.copies:
        local = _copy_colouring(cp, c, g)
        for x, y in enumerate(cp.projection):
            put(y, 0 if local is None else local[x])
    for p in R.plug_vertices:
        put(p, 0)
    if any(v is None for v in vals):
        raise ClaimViolation("witness left a vertex unassigned")
    zc = R.Zcycle_H.vertices
    phi = VertexMap(R.Gstar, R.target, tuple(zc[v] for v in vals)).validated()
    if check:
        if any(vals[x] for x in R.Tstar):
            raise ClaimViolation("witness is not 0 on T*")
        P_H = h1_presentation(R.target)
        z = cycle_class(P_H, R.Zstar.mapped(phi.values))
        if sorted(abs(a) for a in z) != [0] * (len(z) - 1) + [1]:
            raise ClaimViolation("witness does not send Z* to a generator")
    return phi


def extract_colouring(R: ReductionArtifact, phi: VertexMap | Sequence[int], P_H: H1Presentation | None = None) -> list:
    """Read a 3-colouring off a map that is non-trivial on ``Z*``."""
    vals = phi.values if isinstance(phi, VertexMap) else tuple(phi)
    VertexMap(R.Gstar, R.target, vals).validated()
    P_H = P_H or h1_presentation(R.target)
    z = cycle_class(P_H, R.Zstar.mapped(vals))
    if not any(z):
        raise NotNonFlat("the map is trivial on Z*")
    c = []
    for v in range(R.source.n):
        hits = []
        for i in range(COLOURS):
            a = cycle_class(P_H, R.Av[(v, i)].mapped(vals))
            if any(a):
                if a != z:
                    raise ClaimViolation(f"A^{v}_{i} has a class other than 0 or [Z*]")
                hits.append(i)
        if len(hits) != 1:
            raise ClaimViolation(f"vertex {v} has {len(hits)} non-trivial A-cycles")
        c.append(hits[0])
    for u, v in R.source.edges:
        if c[u] == c[v]:
            raise ClaimViolation(f"extracted colouring is improper on {(u, v)}")
    return c


def predicted_rank(G: Graph) -> int:
    return 2 * G.n + 1


@dataclass
class NTBasisReport:
    ok: bool
    rank: int
    predicted: int
    torsion: list
    span_rank: int
    unimodular: bool
    messages: list = field(default_factory=list)


def verify_nt_basis(R: ReductionArtifact, graph: Graph | None = None) -> NTBasisReport:
    """Check that the end cycles ``Z*, A^v_i`` span ``H_1(G*)`` and the rank matches ``2n + 1``."""
    Gs = graph if graph is not None else R.Gstar
    P = h1_presentation(Gs)
    pred = predicted_rank(R.source)
    msgs = []
    if P.torsion:
        msgs.append(f"unexpected torsion {P.torsion}")
    if P.rank != pred:
        msgs.append(f"rank {P.rank} differs from predicted {pred}")
    M = [row[: P.rank] for row in class_matrix(P, R.end_cycles)]
    diag = [d for d in smith_normal_form(M, ncols=P.rank).diagonal if d] if M and P.rank else []
    span = len(diag)
    unimod = span == P.rank and all(d == 1 for d in diag)
    if not unimod:
        msgs.append(f"end cycles span rank {span} (invariant factors {diag}) of {P.rank}")
    return NTBasisReport(not msgs, P.rank, pred, list(P.torsion), span, unimod, msgs)


def drop_plug(R: ReductionArtifact, k: int = -1) -> Graph:
    """``G*`` without one plug vertex (for mutation checks)."""
    p = R.plug_vertices[k]
    keep = [v for v in range(R.Gstar.n) if v != p]
    # plugs sit after every vertex of G^a, so the end cycles keep their indices
    return induced_subgraph(R.Gstar, keep)[0]
