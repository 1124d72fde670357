"""Smith normal form over the integers with unimodular transforms.

All arithmetic is on Python ints, so there is no overflow.  Pivots are chosen
by smallest absolute value, which keeps entries small on the matrices this
package produces (mostly 0/+-1 relation matrices after sparse elimination).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * cols
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += a * bk[j]
        out.append(acc)
    return out


@dataclass
class SNFResult:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular.

    ``U_inv`` and ``V_inv`` are the exact inverses, maintained alongside the
    elimination so callers never need a separate integer inversion.
    """

    D: Matrix
    U: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix

    @property
    def diagonal(self) -> list[int]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k)]

    @property
    def invariant_factors(self) -> list[int]:
        """Nonzero diagonal entries (all positive, each dividing the next)."""
        return [d for d in self.diagonal if d != 0]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(M: Sequence[Sequence[int]], ncols: int | None = None) -> SNFResult:
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    A = [[int(x) for x in row] for row in M]
    U, U_inv = identity(m), identity(m)
    V, V_inv = identity(n), identity(n)

    # row op  R_i += c R_j  : U row i += c * U row j ; U_inv col j -= c * U_inv col i
    def row_add(i: int, j: int, c: int) -> None:
        if not c:
            return
        Ai, Aj = A[i], A[j]
        for k in range(n):
            if Aj[k]:
                Ai[k] += c * Aj[k]
        Ui, Uj = U[i], U[j]
        for k in range(m):
            if Uj[k]:
                Ui[k] += c * Uj[k]
        for row in U_inv:
            if row[i]:
                row[j] -= c * row[i]

    def row_swap(i: int, j: int) -> None:
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in U_inv:
            row[i], row[j] = row[j], row[i]

    def row_neg(i: int) -> None:
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in U_inv:
            row[i] = -row[i]

    # col op  C_i += c C_j : V col i += c * V col j ; V_inv row j -= c * V_inv row i
    def col_add(i: int, j: int, c: int) -> None:
        if not c:
            return
        for row in A:
            if row[j]:
                row[i] += c * row[j]
        for row in V:
            if row[j]:
                row[i] += c * row[j]
        Vi, Vj = V_inv[i], V_inv[j]
        for k in range(n):
            if Vi[k]:
                Vj[k] -= c * Vi[k]

    def col_swap(i: int, j: int) -> None:
        if i == j:
            return
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remaining entry of row/col t onto the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                if j == t:
                    row_swap(t, i)
                else:
                    col_swap(t, j)
                continue
            # divisibility: every trailing entry must be a multiple of the pivot
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_neg(t)
        t += 1
    return SNFResult(A, U, V, U_inv, V_inv)
