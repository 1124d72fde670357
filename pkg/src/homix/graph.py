"""Finite graphs with loops and the construction primitives built on them.

Vertices are always the dense range ``0..n-1``.  Edges are stored as sorted
pairs ``(u, v)`` with ``u < v``; loops live in their own set, never in the
edge set.  Graphs are immutable; every operation returns a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import Acyclic, InvalidGraph, InvalidWalk, NotHomomorphism, Unreachable


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: frozenset
    loops: frozenset
    name: str | None = field(default=None)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidGraph("negative vertex count")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise InvalidGraph(f"bad edge {(u, v)} for n={self.n}")
        for v in self.loops:
            if not 0 <= v < self.n:
                raise InvalidGraph(f"bad loop {v} for n={self.n}")

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[Sequence[int]] = (),
        loops: Iterable[int] = (),
        *,
        reflexive: bool = False,
        name: str | None = None,
    ) -> "Graph":
        """Normalising constructor; ``[v, v]`` pairs in ``edges`` become loops."""
        es = set()
        ls = set(range(n)) if reflexive else set(int(v) for v in loops)
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                ls.add(u)
            else:
                es.add(_norm(u, v))
        return cls(n, frozenset(es), frozenset(ls), name)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges and self.loops == other.loops

    def __hash__(self):
        return hash((self.n, self.edges, self.loops))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} edges={len(self.edges)} loops={len(self.loops)}>"

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        """Open neighbourhoods (loops excluded)."""
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def closed_adj(self) -> tuple[frozenset, ...]:
        """Neighbourhoods that include ``v`` itself exactly when ``v`` has a loop."""
        return tuple(
            self.adj[v] | {v} if v in self.loops else self.adj[v] for v in range(self.n)
        )

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    @property
    def reflexive(self) -> bool:
        return len(self.loops) == self.n

    @property
    def irreflexive(self) -> bool:
        return not self.loops

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return u in self.loops
        return _norm(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def with_name(self, name: str | None) -> "Graph":
        return Graph(self.n, self.edges, self.loops, name)


@dataclass(frozen=True)
class ClosedWalk:
    """Cyclic vertex sequence; step ``i`` goes ``vertices[i] -> vertices[i+1]``
    and the last step closes back to ``vertices[0]``."""

    vertices: tuple

    def __post_init__(self):
        if not self.vertices:
            raise InvalidWalk("empty walk")
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    @classmethod
    def parse(cls, seq: Sequence[int]) -> "ClosedWalk":
        """Accept either an implicit or an explicit closure ``(v0, ..., v0)``."""
        seq = list(seq)
        if len(seq) > 1 and seq[0] == seq[-1]:
            seq = seq[:-1]
        return cls(tuple(seq))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def steps(self):
        vs = self.vertices
        k = len(vs)
        for i in range(k):
            yield vs[i], vs[(i + 1) % k]

    def reversed(self) -> "ClosedWalk":
        return ClosedWalk((self.vertices[0],) + tuple(reversed(self.vertices[1:])))

    def rotated(self, k: int) -> "ClosedWalk":
        k %= len(self.vertices)
        return ClosedWalk(self.vertices[k:] + self.vertices[:k])

    def mapped(self, values: Sequence[int]) -> "ClosedWalk":
        return ClosedWalk(tuple(values[v] for v in self.vertices))

    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def validate(self, G: Graph) -> None:
        for u, v in self.steps():
            if not (0 <= u < G.n and 0 <= v < G.n):
                raise InvalidWalk(f"vertex out of range in step {(u, v)}")
            if not G.has_edge(u, v):
                kind = "loop" if u == v else "edge"
                raise InvalidWalk(f"step {(u, v)} is not a{'n' if kind == 'edge' else ''} {kind} of the graph")

    def as_list(self, closed: bool = False) -> list[int]:
        vs = list(self.vertices)
        return vs + [vs[0]] if closed else vs


@dataclass(frozen=True)
class VertexMap:
    source: Graph
    target: Graph
    values: tuple

    def __post_init__(self):
        vals = tuple(int(x) for x in self.values)
        if len(vals) != self.source.n:
            raise NotHomomorphism(f"map has {len(vals)} values for {self.source.n} vertices")
        if any(not 0 <= x < self.target.n for x in vals):
            raise NotHomomorphism("map value outside target")
        object.__setattr__(self, "values", vals)

    def __call__(self, v: int) -> int:
        return self.values[v]

    def is_homomorphism(self) -> bool:
        return is_homomorphism(self.source, self.target, self.values)

    def validated(self) -> "VertexMap":
        bad = first_broken_edge(self.source, self.target, self.values)
        if bad is not None:
            raise NotHomomorphism(f"edge {bad} of the source is not preserved")
        return self

    def compose(self, after: "VertexMap") -> "VertexMap":
        """``after o self``."""
        return VertexMap(self.source, after.target, tuple(after.values[x] for x in self.values))


def homomorphism(source: Graph, target: Graph, values: Sequence[int]) -> VertexMap:
    return VertexMap(source, target, tuple(values)).validated()


def first_broken_edge(G: Graph, H: Graph, values: Sequence[int]):
    for u, v in G.edges:
        if not H.has_edge(values[u], values[v]):
            return (u, v)
    for u in G.loops:
        if values[u] not in H.loops:
            return (u, u)
    return None


def is_homomorphism(G: Graph, H: Graph, values: Sequence[int]) -> bool:
    return len(values) == G.n and first_broken_edge(G, H, values) is None


@dataclass(frozen=True)
class IdentificationResult:
    quotient: Graph
    projection: VertexMap


# -- constructors ---------------------------------------------------------


def make_path(length: int, reflexive: bool = True, name: str | None = None) -> Graph:
    if length < 0:
        raise InvalidGraph("path length must be >= 0")
    return Graph.build(
        length + 1,
        [(i, i + 1) for i in range(length)],
        reflexive=reflexive,
        name=name or f"P{length}",
    )


def make_cycle(g: int, reflexive: bool = True, name: str | None = None) -> Graph:
    """Cycle ``0-1-...-(g-1)-0``.  ``g=1`` is a looped point and ``g=2`` one edge."""
    if g < 1:
        raise InvalidGraph("cycle length must be >= 1")
    name = name or f"C{g}"
    if g == 1:
        return Graph.build(1, loops=[0], name=name)
    if g == 2:
        return Graph.build(2, [(0, 1)], reflexive=reflexive, name=name)
    return Graph.build(g, [(i, (i + 1) % g) for i in range(g)], reflexive=reflexive, name=name)


def make_complete(k: int, reflexive: bool = False, name: str | None = None) -> Graph:
    return Graph.build(
        k, [(i, j) for i in range(k) for j in range(i + 1, k)], reflexive=reflexive, name=name or f"K{k}"
    )


def tensor_product(A: Graph, B: Graph) -> Graph:
    """Categorical product; vertex ``(a, b)`` is numbered ``a * B.n + b``."""
    m = B.n
    edges = set()
    for a in range(A.n):
        for b in range(m):
            x = a * m + b
            for a2 in A.closed_adj[a]:
                for b2 in B.closed_adj[b]:
                    y = a2 * m + b2
                    if x < y:
                        edges.add((x, y))
    loops = frozenset(a * m + b for a in A.loops for b in B.loops)
    return Graph(A.n * m, frozenset(edges), loops, f"{A.name or 'A'}x{B.name or 'B'}")


def product_vertex(b_order: int, a: int, b: int) -> int:
    return a * b_order + b


def disjoint_union(A: Graph, B: Graph, name: str | None = None) -> Graph:
    off = A.n
    edges = set(A.edges) | {(u + off, v + off) for u, v in B.edges}
    loops = set(A.loops) | {v + off for v in B.loops}
    return Graph(A.n + B.n, frozenset(edges), frozenset(loops), name)


def identify_vertices(G: Graph, classes: Iterable[Iterable[int]]) -> IdentificationResult:
    """Quotient by a partial partition.  Each class is represented by its
    smallest member and the quotient is renumbered in representative order."""
    rep = list(range(G.n))
    seen: set[int] = set()
    for cls in classes:
        members = sorted(set(int(v) for v in cls))
        if not members:
            continue
        for v in members:
            if not 0 <= v < G.n:
                raise InvalidGraph(f"vertex {v} out of range")
            if v in seen:
                raise InvalidGraph(f"vertex {v} appears in two identification classes")
            seen.add(v)
        r = members[0]
        for v in members:
            rep[v] = r
    reps = sorted(set(rep))
    index = {r: i for i, r in enumerate(reps)}
    proj = tuple(index[rep[v]] for v in range(G.n))
    edges = set()
    loops = set()
    for u, v in G.edges:
        a, b = proj[u], proj[v]
        if a == b:
            loops.add(a)
        else:
            edges.add(_norm(a, b))
    loops.update(proj[v] for v in G.loops)
    Q = Graph(len(reps), frozenset(edges), frozenset(loops), G.name)
    return IdentificationResult(Q, VertexMap(G, Q, proj))


def add_cone(G: Graph, walk: ClosedWalk | Sequence[int]) -> Graph:
    """Add a new vertex adjacent to every vertex of ``walk`` (looped when ``G`` is reflexive)."""
    w = walk if isinstance(walk, ClosedWalk) else ClosedWalk(tuple(walk))
    if not w.is_simple():
        raise InvalidWalk("cone base must have distinct vertices")
    w.validate(G)
    c = G.n
    edges = set(G.edges) | {(v, c) for v in w.vertices}
    loops = set(G.loops)
    if G.reflexive:
        loops.add(c)
    return Graph(G.n + 1, frozenset(edges), frozenset(loops), G.name)


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return the induced subgraph and the list mapping new index -> old vertex."""
    old = sorted(set(vertices))
    idx = {v: i for i, v in enumerate(old)}
    edges = frozenset((idx[u], idx[v]) for u, v in G.edges if u in idx and v in idx)
    loops = frozenset(idx[v] for v in G.loops if v in idx)
    return Graph(len(old), edges, loops, G.name), old


# -- queries -------------------------------------------------------------


def bfs_distances(G: Graph, source: int) -> list[int]:
    dist = [-1] * G.n
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        for w in G.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def distance(G: Graph, u: int, v: int) -> int:
    d = bfs_distances(G, u)[v]
    if d < 0:
        raise Unreachable(f"{v} is not reachable from {u}")
    return d


def shortest_path(G: Graph, u: int, v: int) -> list[int]:
    """Vertices of a shortest ``u``-``v`` path (smallest-index neighbours first)."""
    parent = {u: None}
    q = deque([u])
    while q and v not in parent:
        x = q.popleft()
        for w in sorted(G.adj[x]):
            if w not in parent:
                parent[w] = x
                q.append(w)
    if v not in parent:
        raise Unreachable(f"{v} is not reachable from {u}")
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def set_distance(G: Graph, us: Iterable[int], vs: Iterable[int]) -> int:
    """Minimum distance between two vertex sets (multi-source BFS); -1 if none."""
    targets = set(vs)
    dist = [-1] * G.n
    q = deque()
    for u in set(us):
        dist[u] = 0
        q.append(u)
    while q:
        u = q.popleft()
        if u in targets:
            return dist[u]
        for w in G.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return -1


def components(G: Graph) -> list[list[int]]:
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        q = deque([s])
        while q:
            u = q.popleft()
            for w in G.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    q.append(w)
        out.append(sorted(comp))
    return out


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(components(G)) == 1


def is_triangle_free(G: Graph) -> bool:
    adj = G.adj
    return all(not (adj[u] & adj[v]) for u, v in G.edges)


def triangles(G: Graph) -> list[tuple[int, int, int]]:
    """All 3-cliques on distinct vertices as sorted triples, in lexicographic order."""
    adj = G.adj
    out = []
    for u, v in G.sorted_edges:
        for w in adj[u] & adj[v]:
            if w > v:
                out.append((u, v, w))
    out.sort()
    return out


def tree_path(parent: Sequence[int], u: int) -> list[int]:
    path = [u]
    while parent[path[-1]] >= 0:
        path.append(parent[path[-1]])
    return path


def girth_cycle(G: Graph) -> ClosedWalk:
    """A shortest cycle (length >= 3, loops ignored).

    Ties go to the smallest starting vertex and then the lexicographically
    smallest walk from it.
    """
    best = None
    for r in range(G.n):
        parent = [-1] * G.n
        dist = [-1] * G.n
        dist[r] = 0
        q = deque([r])
        order = []
        while q:
            u = q.popleft()
            order.append(u)
            for w in sorted(G.adj[u]):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
        for u, v in G.sorted_edges:
            if dist[u] < 0 or parent[u] == v or parent[v] == u:
                continue
            length = dist[u] + dist[v] + 1
            if best is not None and length > best[0]:
                continue
            pu = tree_path(parent, u)
            pv = tree_path(parent, v)
            if set(pu) & set(pv) != {r}:
                continue
            walk = tuple(reversed(pu)) + tuple(pv[:-1])
            alt = (walk[0],) + tuple(reversed(walk[1:]))
            walk = min(walk, alt)
            key = (length, r, walk)
            if best is None or key < best:
                best = key
        if best is not None and best[1] < r + 1 and best[0] == 3:
            break
    if best is None:
        raise Acyclic("graph has no cycle of length >= 3")
    return ClosedWalk(best[2])
