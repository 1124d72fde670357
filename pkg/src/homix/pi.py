"""Moves on closed walks of a graph and bounded contractibility search.

A state is a tuple ``(x_0, ..., x_l)`` read as the closed walk
``x_0 -> x_1 -> ... -> x_l -> x_0``.  The moves are

* duplicating a vertex, or removing a repeated one (basepoint fixed);
* replacing ``x_i`` for ``0 < i < l`` when ``x_{i-1} == x_{i+1}``, by any
  vertex adjacent (or equal, via its loop) to ``x_{i-1}``;
* dropping the basepoint when ``x_1 == x_{l}``, which makes ``x_1`` the new
  basepoint, and the reverse insertion.

A walk is contractible when a constant walk is reachable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidWalk
from .graph import ClosedWalk, Graph

CONTRACTIBLE = "contractible"
NOT_WITHIN_BUDGET = "not_within_budget"


@dataclass(frozen=True)
class PiState:
    vertices: tuple

    def __post_init__(self):
        if not self.vertices:
            raise InvalidWalk("empty walk")

    @property
    def basepoint(self) -> int:
        return self.vertices[0]

    def is_constant(self) -> bool:
        return len(set(self.vertices)) == 1

    def validate(self, H: Graph) -> None:
        ClosedWalk(self.vertices).validate(H)


def _as_tuple(x) -> tuple:
    if isinstance(x, PiState):
        return x.vertices
    if isinstance(x, ClosedWalk):
        return x.vertices
    return tuple(x)


def pi_neighbours(x: PiState | Sequence[int], H: Graph) -> list[PiState]:
    """All states one move (or one reversed move) away from ``x``, deduplicated."""
    xs = _as_tuple(x)
    L = len(xs)
    out: dict[tuple, None] = {}
    # duplication (needs the loop at x_i)
    for i in range(L):
        if xs[i] in H.loops:
            out[xs[: i + 1] + xs[i:]] = None
    if xs[0] in H.loops:
        out[xs + xs[:1]] = None  # repeat the closing x_0
    # deduplication; x_l == x_0 removes the closing repeat
    if L > 1:
        for i in range(L):
            j = (i + 1) % L
            if xs[i] == xs[j]:
                k = j if j != 0 else i
                out[xs[:k] + xs[k + 1:]] = None
    # replacement between equal neighbours
    for i in range(1, L - 1):
        if xs[i - 1] == xs[i + 1]:
            for c in sorted(H.closed_adj[xs[i - 1]]):
                if c != xs[i]:
                    out[xs[:i] + (c,) + xs[i + 1:]] = None
    # basepoint removal: (x0, x1, ..., x_l) -> (x1, ..., x_l) when x1 == x_l
    if L >= 2 and xs[1] == xs[-1]:
        out[xs[1:]] = None
    # basepoint insertion: y with y[0] == y[-1] -> (w,) + y
    if xs[0] == xs[-1]:
        for w in sorted(H.closed_adj[xs[0]]):
            out[(w,) + xs] = None
    out.pop(xs, None)
    return [PiState(t) for t in out]


def pi_contractible_bounded(
    x: PiState | Sequence[int],
    H: Graph,
    max_len: int | None = None,
    max_states: int = 100000,
) -> str:
    """Breadth-first search for a constant walk.

    Only a positive answer is conclusive; ``not_within_budget`` means no
    constant walk was found among states of length at most ``max_len``
    within ``max_states`` expansions.
    """
    start = _as_tuple(x)
    max_len = max_len if max_len is not None else len(start) + 2
    if len(set(start)) == 1:
        return CONTRACTIBLE
    seen = {start}
    q = deque([start])
    expanded = 0
    while q and expanded < max_states:
        cur = q.popleft()
        expanded += 1
        for nb in pi_neighbours(cur, H):
            t = nb.vertices
            if len(t) > max_len or t in seen:
                continue
            if len(set(t)) == 1:
                return CONTRACTIBLE
            seen.add(t)
            q.append(t)
    return NOT_WITHIN_BUDGET
