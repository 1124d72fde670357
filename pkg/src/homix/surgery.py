"""Randomised checks of how ``H_1`` changes under the graph surgeries used to
build the reduction: edge contraction, edge addition, pinching a cycle,
gluing along a cycle, identifying two cycles, and coning off a cycle.

Every check is phrased the same way: after the surgery the rank must be the
predicted one, there must be no torsion, and a predicted list of cycles must
span ``H_1`` of the new graph (invariant factors of the class matrix all 1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import (
    ClosedWalk,
    Graph,
    add_cone,
    bfs_distances,
    disjoint_union,
    identify_vertices,
    shortest_path,
)
from .homology import class_matrix, h1_presentation
from .snf import smith_normal_form

LEMMAS = ("excision", "edge-addition", "pinch", "glue", "cycle-identification", "plug")


@dataclass
class SurgeryCase:
    lemma: str
    seed: int
    ok: bool
    detail: str = ""
    n: int = 0


@dataclass
class SurgeryReport:
    seed: int
    cases: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [c for c in self.cases if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict:
        out = {k: 0 for k in LEMMAS}
        for c in self.cases:
            out[c.lemma] += 1
        return out


def spans(G: Graph, walks, P=None) -> bool:
    """Whether the classes of ``walks`` generate ``H_1(G)`` (free part)."""
    P = P or h1_presentation(G)
    if P.rank == 0:
        return True
    M = [row[: P.rank] for row in class_matrix(P, walks)]
    if not M:
        return False
    diag = [d for d in smith_normal_form(M).diagonal if d]
    return len(diag) == P.rank and all(d == 1 for d in diag)


def _expect(G: Graph, rank: int, walks) -> str:
    P = h1_presentation(G)
    if P.torsion:
        return f"torsion {P.torsion}"
    if P.rank != rank:
        return f"rank {P.rank}, predicted {rank}"
    if not spans(G, walks, P):
        return "predicted cycles do not span H1"
    return ""


# -- random inputs ---------------------------------------------------------


def random_connected(rng: random.Random, n: int, p: float) -> Graph:
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    edges |= {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
    return Graph.build(n, edges, reflexive=True)


@dataclass
class Necklace:
    graph: Graph
    main: ClosedWalk
    basis: list  # main first, then the wedge cycles


def necklace(rng: random.Random, L: int, wedges: int = 1, pendants: int = 3, ears: int = 2) -> Necklace:
    """A main ``L``-cycle with wedged short cycles, pendant trees and triangle ears.

    None of the decorations shortens a path between two main-cycle vertices,
    and the main cycle together with the wedged cycles is a basis.
    """
    edges = [(i, (i + 1) % L) for i in range(L)]
    n = L
    cyc_edges = list(edges)
    basis = [ClosedWalk(tuple(range(L)))]
    for _ in range(wedges):
        k = rng.randint(4, 6)
        at = rng.randrange(n)
        vs = [at] + list(range(n, n + k - 1))
        n += k - 1
        new = [(vs[i], vs[(i + 1) % k]) for i in range(k)]
        edges += new
        cyc_edges += new
        basis.append(ClosedWalk(tuple(vs)))
    for _ in range(pendants):
        edges.append((rng.randrange(n), n))
        n += 1
    for _ in range(ears):
        a, b = rng.choice(cyc_edges)
        edges += [(a, n), (b, n)]
        n += 1
    return Necklace(Graph.build(n, edges, reflexive=True), basis[0], basis)


def _shift(w: ClosedWalk, off: int) -> ClosedWalk:
    return ClosedWalk(tuple(v + off for v in w.vertices))


# -- the surgeries ---------------------------------------------------------


def induced_c4_free_edges(G: Graph) -> list:
    """Edges ``uv`` lying in no induced 4-cycle."""
    adj = G.adj
    out = []
    for u, v in G.sorted_edges:
        bad = False
        for w in adj[u] - adj[v] - {v}:
            for x in adj[v] - adj[u] - {u}:
                if x != w and x in adj[w]:
                    bad = True
                    break
            if bad:
                break
        if not bad:
            out.append((u, v))
    return out


def check_excision(rng: random.Random) -> tuple[str, int]:
    cands = []
    while not cands:
        if rng.random() < 0.5:
            G = random_connected(rng, rng.randint(5, 9), rng.uniform(0.15, 0.45))
        else:
            G = necklace(rng, rng.randint(5, 9), rng.randint(0, 2)).graph
        cands = induced_c4_free_edges(G)
    u, v = rng.choice(cands)
    P = h1_presentation(G)
    res = identify_vertices(G, [[u, v]])
    proj = res.projection.values
    gens = [w.mapped(proj) for w in P.basis_cycles]
    return _expect(res.quotient, P.rank, gens), G.n


def check_edge_addition(rng: random.Random) -> tuple[str, int]:
    nk = necklace(rng, rng.randint(8, 12), rng.randint(0, 2), pendants=rng.randint(2, 5))
    G = nk.graph
    pairs = []
    for a in range(G.n):
        d = bfs_distances(G, a)
        pairs += [(a, b) for b in range(a + 1, G.n) if d[b] >= 4]
    a, b = rng.choice(pairs)
    G2 = Graph.build(G.n, set(G.edges) | {(a, b)}, G.loops)
    closing = ClosedWalk(tuple(shortest_path(G, a, b)))
    return _expect(G2, len(nk.basis) + 1, nk.basis + [closing]), G.n


def check_pinch(rng: random.Random) -> tuple[str, int]:
    L = rng.randint(8, 14)
    nk = necklace(rng, L, rng.randint(0, 2))
    G = nk.graph
    a = rng.randrange(L)
    b = (a + rng.randint(4, L - 4)) % L
    res = identify_vertices(G, [[a, b]])
    proj = res.projection.values
    cyc = list(nk.main.vertices)
    i, j = sorted((a, b))
    c1 = ClosedWalk(tuple(cyc[i:j])).mapped(proj)
    c2 = ClosedWalk(tuple(cyc[j:] + cyc[:i])).mapped(proj)
    rest = [w.mapped(proj) for w in nk.basis[1:]]
    r = len(nk.basis) + 1
    err = _expect(res.quotient, r, rest + [c1, c2])
    if not err:
        err = _expect(res.quotient, r, [nk.main.mapped(proj)] + rest + [c1])
    return err, G.n


def check_glue(rng: random.Random) -> tuple[str, int]:
    g = rng.randint(4, 6)
    F = necklace(rng, g, rng.randint(0, 2))
    Hn = necklace(rng, g, rng.randint(0, 2))
    off = F.graph.n
    U = disjoint_union(F.graph, Hn.graph)
    rot = rng.randrange(g)
    sign = rng.choice((1, -1))
    classes = [[k, off + (rot + sign * k) % g] for k in range(g)]
    res = identify_vertices(U, classes)
    proj = res.projection.values
    gens = [w.mapped(proj) for w in F.basis] + [_shift(w, off).mapped(proj) for w in Hn.basis[1:]]
    return _expect(res.quotient, len(F.basis) + len(Hn.basis) - 1, gens), U.n


def check_cycle_identification(rng: random.Random) -> tuple[str, int]:
    g = rng.randint(4, 6)
    F = necklace(rng, g, rng.randint(0, 1), pendants=rng.randint(0, 3))
    Hn = necklace(rng, g, rng.randint(0, 1), pendants=rng.randint(0, 3))
    off = F.graph.n
    U = disjoint_union(F.graph, Hn.graph)
    # join the two main cycles by a path of length >= 4
    plen = rng.randint(4, 6)
    path = [rng.randrange(g)] + list(range(U.n, U.n + plen - 1)) + [off + rng.randrange(g)]
    G = Graph.build(U.n + plen - 1, set(U.edges) | set(zip(path, path[1:])), reflexive=True)
    rot = rng.randrange(g)
    sign = rng.choice((1, -1))
    partner = {k: off + (rot + sign * k) % g for k in range(g)}
    res = identify_vertices(G, [[k, partner[k]] for k in range(g)])
    proj = res.projection.values
    a = rng.randrange(g)
    walk = shortest_path(G, a, partner[a])
    closing = ClosedWalk(tuple(walk[:-1])).mapped(proj)
    basis = F.basis + [_shift(w, off) for w in Hn.basis]
    gens = [w.mapped(proj) for w in basis[1:]] + [closing]
    return _expect(res.quotient, len(basis), gens), G.n


def check_plug(rng: random.Random) -> tuple[str, int]:
    nk = necklace(rng, rng.randint(4, 10), rng.randint(1, 3))
    k = rng.randrange(len(nk.basis))
    G2 = add_cone(nk.graph, nk.basis[k])
    rest = nk.basis[:k] + nk.basis[k + 1:]
    return _expect(G2, len(nk.basis) - 1, rest), nk.graph.n


CHECKS = {
    "excision": check_excision,
    "edge-addition": check_edge_addition,
    "pinch": check_pinch,
    "glue": check_glue,
    "cycle-identification": check_cycle_identification,
    "plug": check_plug,
}


def run_case(lemma: str, case_seed: int) -> SurgeryCase:
    err, n = CHECKS[lemma](random.Random(case_seed))
    return SurgeryCase(lemma, case_seed, not err, err, n)


def verify_surgery_lemmas(seed: int = 0, trials: int = 240) -> SurgeryReport:
    """Run ``trials`` surgeries, cycling through the lemmas; each case is replayable
    from its own seed with :func:`run_case`."""
    rep = SurgeryReport(seed)
    for t in range(trials):
        lemma = LEMMAS[t % len(LEMMAS)]
        rep.cases.append(run_case(lemma, seed * 1_000_003 + t))
    return rep


def fixed_cases() -> list:
    """Named instances with known answers: pinching ``C_8``, gluing two ``S_2``, a pendant contraction."""
    from .gadgets import build_sum_gadget
    from .graph import make_cycle

    out = []
    C8 = make_cycle(8)
    res = identify_vertices(C8, [[0, 4]])
    out.append(("pinch C8", h1_presentation(C8).rank, h1_presentation(res.quotient).rank, 2))
    S = build_sum_gadget(2, 4)
    U = disjoint_union(S.graph, S.graph)
    glued = identify_vertices(U, [[a, b + S.graph.n] for a, b in zip(S.Z.vertices, S.Z.vertices)]).quotient
    out.append(("glue S2 along Z", h1_presentation(S.graph).rank, h1_presentation(glued).rank, 3))
    pend = Graph.build(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)], reflexive=True)
    out.append(("contract pendant", 1, h1_presentation(identify_vertices(pend, [[0, 4]]).quotient).rank, 1))
    return out

