"""
Smith normal form over the integers, dense with transforms and sparse
for invariant factors only.
"""
from __future__ import annotations
from collections.abc import Sequence
import logging


_log = logging.getLogger("qkhlab.groupring")


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _smallest_nonzero(matrix: list[list[int]], start: int) -> tuple[int, int] | None:
    best: tuple[int, int] | None = None
    best_value = 0
    for i in range(start, len(matrix)):
        row = matrix[i]
        for j in range(start, len(row)):
            value = abs(row[j])
            if value and (best is None or value < best_value):
                best, best_value = (i, j), value
                if value == 1:
                    return best
    return best


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[list[list[int]],
                                                                 list[list[int]],
                                                                 list[list[int]]]:
    """
    Compute D, U, V with U * M * V = D diagonal, d_1 | d_2 | ..., and U, V
    unimodular. The pivot is always the smallest nonzero entry left, which
    keeps intermediate entries small on the sparse matrices we feed in.

    :param matrix: integer matrix as a list of rows.
    :return: the triple (D, U, V).
    """
    d, u, v, _, _ = smith_form_with_inverses(matrix)
    return d, u, v


def smith_form_with_inverses(matrix: Sequence[Sequence[int]]) -> tuple[list[list[int]], ...]:
    """
    Same reduction as `smith_normal_form`, also returning U^-1 and V^-1.

    :return: (D, U, V, U^-1, V^-1).
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    d = [list(row) for row in matrix]
    u = _identity(m)
    v = _identity(n)
    u_inv = _identity(m)
    v_inv = _identity(n)

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for row in u_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i: int, j: int) -> None:
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def add_row(target: int, source: int, factor: int) -> None:
        # row_target += factor * row_source
        d[target] = [a + factor * b for a, b in zip(d[target], d[source])]
        u[target] = [a + factor * b for a, b in zip(u[target], u[source])]
        for row in u_inv:
            row[source] -= factor * row[target]

    def add_col(target: int, source: int, factor: int) -> None:
        for row in d:
            row[target] += factor * row[source]
        for row in v:
            row[target] += factor * row[source]
        v_inv[source] = [a - factor * b for a, b in zip(v_inv[source], v_inv[target])]

    for t in range(min(m, n)):
        position = _smallest_nonzero(d, t)
        if position is None:
            break
        swap_rows(t, position[0])
        swap_cols(t, position[1])
        while True:
            pivot = d[t][t]
            reduced = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // pivot))
                    if d[i][t]:
                        reduced = False
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // pivot))
                    if d[t][j]:
                        reduced = False
            if not reduced:
                # a remainder smaller than the pivot survived: move it in
                best = (t, t)
                for i in range(t + 1, m):
                    if d[i][t] and abs(d[i][t]) < abs(d[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t + 1, n):
                    if d[t][j] and abs(d[t][j]) < abs(d[best[0]][best[1]]):
                        best = (t, j)
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            offender = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                             if d[i][j] % pivot), None)
            if offender is None:
                break
            add_row(t, offender[0], 1)
        if d[t][t] < 0:
            d[t] = [-a for a in d[t]]
            u[t] = [-a for a in u[t]]
            for row in u_inv:
                row[t] = -row[t]
    return d, u, v, u_inv, v_inv


def diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    return [matrix[i][i] for i in range(min(len(matrix), len(matrix[0]) if matrix else 0))]


def invariant_factors(rows: Sequence[dict[int, int]]) -> tuple[int, list[int]]:
    """
    Rank and torsion invariant factors of a sparse integer matrix.

    Unit pivots are eliminated first (a Schur complement step that leaves
    the Smith form unchanged); whatever is left goes through the dense
    `smith_normal_form`.

    :param rows: sparse rows, mapping column index to nonzero entry.
    :return: (rank, invariant factors > 1 in divisibility order).
    """
    work: dict[int, dict[int, int]] = {i: dict(row) for i, row in enumerate(rows) if row}
    col_rows: dict[int, set[int]] = {}
    for i, row in work.items():
        for c in row:
            col_rows.setdefault(c, set()).add(i)

    rank = 0
    while True:
        pivot: tuple[int, int] | None = None
        best_cost = -1
        for i in sorted(work, key=lambda r: len(work[r])):
            for c, value in work[i].items():
                if value in (1, -1):
                    cost = len(work[i]) * len(col_rows[c])
                    if pivot is None or cost < best_cost:
                        pivot, best_cost = (i, c), cost
            if pivot is not None:
                break
        if pivot is None:
            break
        r, c = pivot
        pivot_row = work[r]
        sign = pivot_row[c]
        for i in list(col_rows[c]):
            if i == r:
                continue
            row = work[i]
            factor = row[c] * sign
            for cc, value in pivot_row.items():
                new = row.get(cc, 0) - factor * value
                if new:
                    if cc not in row:
                        col_rows.setdefault(cc, set()).add(i)
                    row[cc] = new
                elif cc in row:
                    del row[cc]
                    col_rows[cc].discard(i)
            if not row:
                del work[i]
        for cc in pivot_row:
            col_rows[cc].discard(r)
        del work[r]
        rank += 1

    torsion: list[int] = []
    if work:
        cols = sorted({c for row in work.values() for c in row})
        position = {c: k for k, c in enumerate(cols)}
        dense = [[0] * len(cols) for _ in work]
        for k, row in enumerate(work.values()):
            for c, value in row.items():
                dense[k][position[c]] = value
        _log.debug("dense Smith form on a %dx%d remainder", len(dense), len(cols))
        d, _, _ = smith_normal_form(dense)
        for value in diagonal(d):
            if value:
                rank += 1
                if abs(value) > 1:
                    torsion.append(abs(value))
    return rank, torsion
