"""Homomorphism enumeration and sampling, and the Hom-graph.

Two homomorphisms ``phi, psi: G -> H`` are adjacent in the Hom-graph when
for every edge ``uv`` of ``G`` (loops included) both ``phi(u)psi(v)`` and
``phi(v)psi(u)`` are edges of ``H``.  Hom-graph edges are never
materialised: the neighbours of ``phi`` are enumerated on demand as the
homomorphisms ``psi`` with ``psi(v)`` in the common ``H``-neighbourhood of
``phi(N[v])``.
"""

from __future__ import annotations

import os
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from networkx.utils import UnionFind

from . import kernels
from .errors import BudgetExceeded, NotHomomorphism, UnsatWithinBudget
from .graph import Graph, VertexMap, first_broken_edge

DEFAULT_NODE_BUDGET = 10**7
DEFAULT_MAP_BUDGET = 10**6


def default_node_budget() -> int:
    env = os.environ.get("HOMIX_BUDGET_NODES")
    return int(env) if env else DEFAULT_NODE_BUDGET


@dataclass
class HomSet:
    source: Graph
    target: Graph
    maps: list
    complete: bool
    count: int = 0
    nodes: int = 0

    def __len__(self) -> int:
        return len(self.maps) if self.maps or not self.count else self.count

    def __iter__(self):
        return iter(self.maps)

    def homomorphisms(self) -> list[VertexMap]:
        return [VertexMap(self.source, self.target, m) for m in self.maps]


@dataclass
class HomGraphReport:
    vertex_count: int
    component_count: int
    component_of: list
    representatives: list
    maps: list = field(repr=False, default_factory=list)

    @property
    def connected(self) -> bool:
        return self.component_count <= 1

    def component_sizes(self) -> list[int]:
        sizes = [0] * self.component_count
        for c in self.component_of:
            sizes[c] += 1
        return sizes


# -- plumbing -------------------------------------------------------------


def adjacency_masks(H: Graph) -> list[int]:
    return [sum(1 << x for x in H.closed_adj[h]) for h in range(H.n)]


def _later_nbrs(G: Graph, order: Sequence[int]) -> list[list[int]]:
    pos = {v: i for i, v in enumerate(order)}
    return [sorted(pos[w] for w in G.adj[v] if pos[w] > pos[v]) for v in order]


def _support(mask: int, adj: Sequence[int], cache: dict) -> int:
    s = cache.get(mask)
    if s is None:
        s = 0
        m = mask
        while m:
            low = m & -m
            s |= adj[low.bit_length() - 1]
            m ^= low
        cache[mask] = s
    return s


def arc_consistent(G: Graph, domains: list[int], adj: Sequence[int], cache: dict | None = None) -> bool:
    """AC-3 over the edge constraints, in place; False if some domain empties."""
    cache = {} if cache is None else cache
    queue = deque(range(G.n))
    queued = [True] * G.n
    while queue:
        x = queue.popleft()
        queued[x] = False
        sup = _support(domains[x], adj, cache)
        for w in G.adj[x]:
            nd = domains[w] & sup
            if nd != domains[w]:
                if not nd:
                    return False
                domains[w] = nd
                if not queued[w]:
                    queued[w] = True
                    queue.append(w)
    return True


def initial_domains(G: Graph, H: Graph, pins: Mapping[int, int] | None = None) -> list[int] | None:
    full = (1 << H.n) - 1
    looped = sum(1 << h for h in H.loops)
    dom = [looped if v in G.loops else full for v in range(G.n)]
    for v, h in (pins or {}).items():
        dom[v] &= 1 << h
    if any(d == 0 for d in dom):
        return None
    if not arc_consistent(G, dom, adjacency_masks(H)):
        return None
    return dom


def _run(G, H, domains, limit, node_budget, count_only, backend):
    order = list(range(G.n))
    return kernels.enumerate_maps(
        order, _later_nbrs(G, order), domains, adjacency_masks(H), limit, node_budget,
        count_only, backend=backend,
    )


# -- enumeration ------------------------------------------------------------


def enumerate_homs(
    G: Graph,
    H: Graph,
    pins: Mapping[int, int] | None = None,
    *,
    node_budget: int | None = None,
    max_maps: int = DEFAULT_MAP_BUDGET,
    count_only: bool = False,
    backend: str | None = None,
) -> HomSet:
    """All homomorphisms ``G -> H`` extending ``pins``, in lexicographic order."""
    node_budget = node_budget or default_node_budget()
    dom = initial_domains(G, H, pins)
    if dom is None:
        return HomSet(G, H, [], True, 0, 0)
    limit = max_maps + 1 if not count_only else 2**62
    maps, count, nodes, status = _run(G, H, dom, limit, node_budget, count_only, backend)
    if status == kernels.STATUS_BUDGET:
        raise BudgetExceeded(f"search budget of {node_budget} nodes exhausted", partial=count)
    if status == kernels.STATUS_LIMIT:
        raise BudgetExceeded(f"more than {max_maps} homomorphisms", partial=count)
    return HomSet(G, H, maps, True, count, nodes)


def count_homs(G: Graph, H: Graph, pins: Mapping[int, int] | None = None, **kw) -> int:
    return enumerate_homs(G, H, pins, count_only=True, **kw).count


def sample_homs(
    G: Graph,
    H: Graph,
    pins: Mapping[int, int] | None = None,
    k: int = 1,
    seed: int | None = 0,
    *,
    node_budget: int | None = None,
    attempt_budget: int = 20000,
) -> HomSet:
    """``k`` homomorphisms from randomised backtracking, one fresh search per sample.

    Each search assigns vertices in BFS order from a random start, tries values
    in random order and maintains arc consistency.  Searches that use more than
    ``attempt_budget`` nodes are restarted.  No uniformity is claimed.
    """
    node_budget = node_budget or default_node_budget()
    rng = random.Random(seed)
    dom0 = initial_domains(G, H, pins)
    if dom0 is None:
        raise UnsatWithinBudget("no homomorphism extends the pins", partial=0)
    adj = adjacency_masks(H)
    cache: dict = {}
    out = []
    spent = 0
    while len(out) < k:
        if spent >= node_budget:
            if not out:
                raise UnsatWithinBudget("no homomorphism found within budget", partial=0)
            raise BudgetExceeded(f"only {len(out)} of {k} samples within budget", partial=out)
        res, used = _sample_once(G, dom0, adj, cache, rng, min(attempt_budget, node_budget - spent))
        spent += used
        if res is not None:
            bad = first_broken_edge(G, H, res)
            if bad is not None:
                raise NotHomomorphism(f"sampler produced an invalid map (edge {bad})")
            out.append(res)
    return HomSet(G, H, out, False, len(out), spent)


def _bfs_order(G: Graph, start: int) -> list[int]:
    seen = [False] * G.n
    order = []
    for s in [start] + list(range(G.n)):
        if seen[s]:
            continue
        seen[s] = True
        q = deque([s])
        while q:
            u = q.popleft()
            order.append(u)
            for w in sorted(G.adj[u]):
                if not seen[w]:
                    seen[w] = True
                    q.append(w)
    return order


def _sample_once(G, dom0, adj, cache, rng, budget):
    if G.n == 0:
        return (), 1
    # grow the search from a pinned vertex when there is one
    fixed = [v for v in range(G.n) if dom0[v] & (dom0[v] - 1) == 0]
    order = _bfs_order(G, rng.choice(fixed) if fixed else rng.randrange(G.n))
    dom = list(dom0)
    trail: list = []
    nodes = 0

    def bits(m):
        vals = []
        while m:
            low = m & -m
            vals.append(low.bit_length() - 1)
            m ^= low
        return vals

    def propagate(start) -> bool:
        queue = deque([start])
        while queue:
            x = queue.popleft()
            sup = _support(dom[x], adj, cache)
            for w in G.adj[x]:
                nd = dom[w] & sup
                if nd != dom[w]:
                    if not nd:
                        return False
                    trail.append((w, dom[w]))
                    dom[w] = nd
                    queue.append(w)
        return True

    def undo(mark):
        while len(trail) > mark:
            w, old = trail.pop()
            dom[w] = old

    # frames: (position, remaining values, trail mark)
    stack = []
    pos = 0
    vals = bits(dom[order[0]])
    rng.shuffle(vals)
    stack.append((0, vals, len(trail)))
    while stack:
        pos, vals, mark = stack[-1]
        undo(mark)
        if not vals:
            stack.pop()
            continue
        h = vals.pop()
        nodes += 1
        if nodes > budget:
            return None, nodes
        v = order[pos]
        trail.append((v, dom[v]))
        dom[v] = 1 << h
        if not propagate(v):
            continue
        nxt = pos + 1
        if nxt == len(order):
            return tuple(d.bit_length() - 1 for d in dom), nodes
        cand = bits(dom[order[nxt]])
        rng.shuffle(cand)
        stack.append((nxt, cand, len(trail)))
    return None, nodes


# -- Hom-graph ------------------------------------------------------------


def hom_adjacent(phi: VertexMap | Sequence[int], psi: VertexMap | Sequence[int], G: Graph | None = None, H: Graph | None = None) -> bool:
    if isinstance(phi, VertexMap):
        G, H = phi.source, phi.target
        a = phi.values
    else:
        a = tuple(phi)
    b = psi.values if isinstance(psi, VertexMap) else tuple(psi)
    for u, v in G.edges:
        if not (H.has_edge(a[u], b[v]) and H.has_edge(a[v], b[u])):
            return False
    for u in G.loops:
        if not H.has_edge(a[u], b[u]):
            return False
    return True


def neighbour_domains(G: Graph, H: Graph, phi: Sequence[int], adj: Sequence[int] | None = None) -> list[int]:
    adj = adj or adjacency_masks(H)
    full = (1 << H.n) - 1
    dom = []
    for v in range(G.n):
        d = full
        for u in G.closed_adj[v]:
            d &= adj[phi[u]]
        dom.append(d)
    return dom


def hom_neighbours(
    G: Graph,
    H: Graph,
    phi: Sequence[int],
    pins: Mapping[int, int] | None = None,
    *,
    node_budget: int | None = None,
    backend: str | None = None,
) -> list[tuple]:
    """Hom-graph neighbours of ``phi`` (``phi`` itself included), honouring ``pins``."""
    dom = neighbour_domains(G, H, phi)
    looped = sum(1 << h for h in H.loops)
    for v in G.loops:
        dom[v] &= looped
    for v, h in (pins or {}).items():
        dom[v] &= 1 << h
    if any(d == 0 for d in dom):
        return []
    node_budget = node_budget or default_node_budget()
    maps, _, _, status = _run(G, H, dom, 2**62, node_budget, False, backend)
    if status == kernels.STATUS_BUDGET:
        raise BudgetExceeded("neighbour enumeration exhausted its budget")
    return maps


def mix_bruteforce(
    G: Graph,
    H: Graph,
    *,
    node_budget: int | None = None,
    max_maps: int = DEFAULT_MAP_BUDGET,
    backend: str | None = None,
) -> HomGraphReport:
    """Connected components of the Hom-graph by union-find over lazily generated edges."""
    homs = enumerate_homs(G, H, node_budget=node_budget, max_maps=max_maps, backend=backend)
    maps = homs.maps
    index = {m: i for i, m in enumerate(maps)}
    uf = UnionFind(range(len(maps)))
    for i, m in enumerate(maps):
        for nb in hom_neighbours(G, H, m, node_budget=node_budget, backend=backend):
            j = index[nb]
            if j > i:
                uf.union(i, j)
    comp_id: dict = {}
    component_of = []
    reps = []
    for i in range(len(maps)):
        r = uf[i]
        if r not in comp_id:
            comp_id[r] = len(comp_id)
            reps.append(maps[i])
        component_of.append(comp_id[r])
    return HomGraphReport(len(maps), len(comp_id), component_of, reps, maps)


def reconfig_path(
    phi: VertexMap,
    psi: VertexMap,
    budget: int = 10**6,
    pins: Mapping[int, int] | None = None,
) -> list | None:
    """Shortest Hom-graph path from ``phi`` to ``psi`` as the list of maps after ``phi``.

    Returns ``[]`` when ``phi == psi`` and ``None`` when ``psi`` is unreachable
    (the search was exhaustive).  ``budget`` bounds the visited states.
    """
    G, H = phi.source, phi.target
    start, goal = phi.values, psi.values
    if start == goal:
        return []
    parent = {start: None}
    q = deque([start])
    while q:
        cur = q.popleft()
        for nb in hom_neighbours(G, H, cur, pins):
            if nb in parent:
                continue
            parent[nb] = cur
            if nb == goal:
                path = [nb]
                while parent[path[-1]] != start:
                    path.append(parent[path[-1]])
                path.reverse()
                return [VertexMap(G, H, m) for m in path]
            if len(parent) > budget:
                raise BudgetExceeded(f"more than {budget} states visited", partial=len(parent))
            q.append(nb)
    return None


def hom_graph_distances(
    G: Graph,
    H: Graph,
    start: Sequence[int],
    targets: Iterable[Sequence[int]],
    pins: Mapping[int, int] | None = None,
    budget: int = 10**7,
) -> dict:
    """BFS from ``start`` until every target is reached; returns ``{target: path}``
    where each path lists the maps from ``start`` to the target inclusive."""
    want = {tuple(t) for t in targets}
    start = tuple(start)
    parent = {start: None}
    found = {}
    if start in want:
        found[start] = [start]
    q = deque([start])
    while q and len(found) < len(want):
        cur = q.popleft()
        for nb in hom_neighbours(G, H, cur, pins):
            if nb in parent:
                continue
            parent[nb] = cur
            if nb in want:
                path = [nb]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                found[nb] = path[::-1]
            if len(parent) > budget:
                raise BudgetExceeded(f"more than {budget} states visited", partial=len(parent))
            q.append(nb)
    return found
