"""Winding maps of a long cycle onto a short one and the sum gadget ``S_s``.

``B`` is the reflexive cycle on ``s*g`` vertices and ``Z`` the reflexive
cycle on ``g``.  ``beta`` winds ``B`` once around ``Z`` in blocks of ``s``;
``alpha_k`` winds only the ``k``-th run of ``g`` vertices.

``S_s`` is a quotient of ``P_ell x B`` (plus ``s`` cylinders ``P_1 x Z``)
whose end cycles ``Z, A_0, ..., A_{s-1}`` satisfy
``[G(Z)] = sum [G(A_i)]`` for every homomorphism ``G`` out of it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from networkx.utils import UnionFind

from .errors import ClaimViolation, InvalidGraph, NoPath
from .graph import (
    ClosedWalk,
    Graph,
    VertexMap,
    disjoint_union,
    identify_vertices,
    induced_subgraph,
    is_connected,
    is_homomorphism,
    make_cycle,
    make_path,
    set_distance,
    tensor_product,
)
from .homology import class_matrix, cycle_class, h1_presentation
from .homsearch import hom_adjacent, hom_graph_distances
from .snf import smith_normal_form


def _check_sg(s: int, g: int) -> None:
    if s < 2 or g < 4:
        raise InvalidGraph(f"need s >= 2 and g >= 4, got s={s}, g={g}")


def beta_values(s: int, g: int) -> tuple:
    return tuple(p // s for p in range(s * g))


def alpha_values(k: int, s: int, g: int) -> tuple:
    if not 0 <= k < s:
        raise InvalidGraph(f"alpha index {k} outside [0, {s})")
    return tuple(p % g if p // g == k else 0 for p in range(s * g))


def beta_map(s: int, g: int) -> VertexMap:
    _check_sg(s, g)
    return VertexMap(make_cycle(s * g, name="B"), make_cycle(g, name="Z"), beta_values(s, g)).validated()


def alpha_map(k: int, s: int, g: int) -> VertexMap:
    _check_sg(s, g)
    return VertexMap(make_cycle(s * g, name="B"), make_cycle(g, name="Z"), alpha_values(k, s, g)).validated()


@dataclass(frozen=True)
class EllResult:
    s: int
    g: int
    ell: int
    paths: tuple  # paths[i]: maps B -> Z from alpha_i to beta, padded to length ell + 1
    maps: tuple  # maps[i]: VertexMap P_ell x B -> Z

    def slice(self, i: int, t: int) -> tuple:
        return self.paths[i][t]


@lru_cache(maxsize=None)
def find_ell(s: int, g: int, budget: int = 10**7) -> EllResult:
    """Shortest Hom-graph paths (vertex 0 pinned to 0) from ``beta`` to each ``alpha_i``.

    ``ell`` is the longest of them, at least 2; shorter paths are padded at
    the ``beta`` end, so slice 0 is ``alpha_i`` and slice ``ell`` is ``beta``.
    """
    _check_sg(s, g)
    B = make_cycle(s * g, name="B")
    Z = make_cycle(g, name="Z")
    beta = beta_values(s, g)
    alphas = [alpha_values(k, s, g) for k in range(s)]
    found = hom_graph_distances(B, Z, beta, alphas, pins={0: 0}, budget=budget)
    missing = [k for k, a in enumerate(alphas) if a not in found]
    if missing:
        raise NoPath(f"no path from beta to alpha_{missing[0]} for s={s}, g={g}")
    ell = max(2, max(len(found[a]) - 1 for a in alphas))
    P = make_path(ell)
    PB = tensor_product(P, B)
    paths, maps = [], []
    for a in alphas:
        seq = list(reversed(found[a]))
        seq += [beta] * (ell + 1 - len(seq))
        for x, y in zip(seq, seq[1:]):
            if not hom_adjacent(x, y, B, Z):
                raise ClaimViolation("padded path is not a Hom-graph walk")
        vals = tuple(v for row in seq for v in row)
        phi = VertexMap(PB, Z, vals).validated()
        if seq[0] != a or seq[-1] != beta or any(row[0] != 0 for row in seq):
            raise ClaimViolation("path endpoints or pinned column are wrong")
        paths.append(tuple(seq))
        maps.append(phi)
    return EllResult(s, g, ell, tuple(paths), tuple(maps))


def is_hom_walk(maps, G: Graph, H: Graph) -> bool:
    """Whether consecutive maps in ``maps`` are homomorphisms adjacent in Hom(G, H)."""
    maps = [tuple(m) for m in maps]
    if not all(is_homomorphism(G, H, m) for m in maps):
        return False
    return all(hom_adjacent(x, y, G, H) for x, y in zip(maps, maps[1:]))


@dataclass
class SumGadget:
    graph: Graph
    s: int
    g: int
    ell: int
    Z: ClosedWalk
    A: list
    A_prime: list
    T: frozenset
    gadget_cycles: list
    zero_vertices: dict
    projection: tuple  # vertex of P_ell x B (then the cylinders) -> vertex of graph
    slices: list = field(default_factory=list)

    @property
    def end_cycles(self) -> list:
        return [self.Z] + list(self.A)


def _cycle_of(proj, vs) -> ClosedWalk:
    return ClosedWalk(tuple(proj[v] for v in vs))


@lru_cache(maxsize=None)
def build_sum_gadget(s: int, g: int) -> SumGadget:
    """Build ``S_s`` over ``Z = C_g`` and check its structural and homological invariants."""
    er = find_ell(s, g)
    ell, m = er.ell, s * g
    PB = tensor_product(make_path(ell), make_cycle(m))
    cyl = tensor_product(make_path(1), make_cycle(g))
    full = PB
    offsets = []
    for _ in range(s):
        offsets.append(full.n)
        full = disjoint_union(full, cyl)

    def pv(t, p):
        return t * m + p

    def cv(i, a, k):
        return offsets[i] + a * g + k

    uf = UnionFind(range(full.n))
    for j in range(g):  # last slice collapses to Z
        uf.union(*[pv(ell, i + j * s) for i in range(s)])
    uf.union(*[pv(0, i * g) for i in range(s)])  # first slice pinches into A'_i
    for i in range(s):  # cylinders glued onto A'_i
        for k in range(g):
            uf.union(cv(i, 0, k), pv(0, i * g + k))
    classes = [c for c in uf.to_sets() if len(c) > 1]
    res = identify_vertices(full, classes)
    S = res.quotient.with_name(f"S{s}(g={g})")
    proj = res.projection.values

    Z = ClosedWalk(tuple(proj[pv(ell, j * s)] for j in range(g)))
    A_prime = [_cycle_of(proj, [pv(0, i * g + k) for k in range(g)]) for i in range(s)]
    A = [_cycle_of(proj, [cv(i, 1, k) for k in range(g)]) for i in range(s)]
    slices = [_cycle_of(proj, [pv(t, p) for p in range(m)]) for t in range(ell + 1)]
    T = frozenset([proj[pv(t, 0)] for t in range(ell + 1)] + [proj[cv(i, 1, 0)] for i in range(s)])
    zero = {"Z": proj[pv(ell, 0)]}
    for i in range(s):
        zero[f"A{i}"] = proj[cv(i, 1, 0)]
        zero[f"A'{i}"] = proj[pv(0, i * g)]
    gad = SumGadget(
        graph=S, s=s, g=g, ell=ell, Z=Z, A=A, A_prime=A_prime, T=T,
        gadget_cycles=list(slices) + list(A), zero_vertices=zero, projection=proj, slices=slices,
    )
    check_sum_gadget(gad)
    return gad


def check_sum_gadget(gad: SumGadget) -> None:
    """Raise ClaimViolation unless every structural and homological invariant holds."""
    S, g, s = gad.graph, gad.g, gad.s
    ends = gad.end_cycles
    for w in ends + list(gad.A_prime) + list(gad.slices):
        w.validate(S)
    for w in ends:
        if len(w) != g or not w.is_simple():
            raise ClaimViolation(f"end cycle {w.vertices} is not a {g}-cycle")
    for a in range(len(ends)):
        for b in range(a + 1, len(ends)):
            if set_distance(S, ends[a].vertices, ends[b].vertices) < 2:
                raise ClaimViolation("end cycles closer than distance 2")
    Tg, _ = induced_subgraph(S, gad.T)
    if not is_connected(Tg) or len(Tg.edges) != Tg.n - 1:
        raise ClaimViolation("T is not a tree")
    if not set(gad.zero_vertices.values()) <= gad.T:
        raise ClaimViolation("T misses a zero vertex")
    P = h1_presentation(S)
    if P.rank != s or P.torsion:
        raise ClaimViolation(f"H1 of the sum gadget is rank {P.rank}, torsion {P.torsion}")
    M = class_matrix(P, gad.A)
    diag = smith_normal_form(M).diagonal
    if len(diag) != s or any(d != 1 for d in diag):
        raise ClaimViolation("the A cycles are not a basis")
    z = cycle_class(P, gad.Z)
    total = [sum(col) for col in zip(*M)]
    if list(z) != total:
        raise ClaimViolation("class(Z) differs from the sum of class(A_i)")


def gamma_colouring(gad: SumGadget, i: int) -> VertexMap:
    """``Gamma_i: S_s -> Z``: winds ``A_i`` once and is 0 on ``T`` and the other ``A_j``."""
    if not 0 <= i < gad.s:
        raise InvalidGraph(f"gamma index {i} outside [0, {gad.s})")
    er = find_ell(gad.s, gad.g)
    phi = er.maps[i].values
    m, g = gad.s * gad.g, gad.g
    base = (er.ell + 1) * m
    vals: list = [None] * gad.graph.n
    for x, y in enumerate(gad.projection):
        if x < base:
            v = phi[x]
        else:
            k = (x - base) % (2 * g) % g
            v = er.paths[i][0][((x - base) // (2 * g)) * g + k]
        if vals[y] is None:
            vals[y] = v
        elif vals[y] != v:
            raise ClaimViolation("Gamma is not constant on an identification class")
    Gam = VertexMap(gad.graph, make_cycle(g, name="Z"), tuple(vals)).validated()
    check_gamma(gad, Gam, i)
    return Gam


def check_gamma(gad: SumGadget, Gam: VertexMap, i: int) -> None:
    vals = Gam.values
    if any(vals[v] != 0 for v in gad.T):
        raise ClaimViolation("Gamma is not 0 on T")
    for j, w in enumerate(gad.A):
        if j != i and any(vals[v] for v in w.vertices):
            raise ClaimViolation(f"Gamma_{i} is not 0 on A_{j}")
    if tuple(vals[v] for v in gad.A[i].vertices) != tuple(range(gad.g)):
        raise ClaimViolation(f"Gamma_{i} does not traverse Z along A_{i}")
