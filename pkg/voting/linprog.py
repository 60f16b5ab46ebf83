"""
Exact linear programming over Fractions.

Dense two-phase tableau simplex with Bland's rule, so it terminates on the
degenerate systems polytope work produces. Problems have the form

    maximize c.x  subject to  A x <= b,  x >= 0 (except `free` columns).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class LPStatus(str, Enum):
    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNBOUNDED = 'unbounded'


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


def _pivot(rows: list[list[Fraction]], objectives: list[list[Fraction]], r: int, col: int) -> None:
    prow = rows[r]
    p = prow[col]
    if p != ONE:
        prow = [v / p for v in prow]
        rows[r] = prow
    nonzero = [k for k, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[col]
        if f:
            for k in nonzero:
                row[k] -= f * prow[k]
    for row in objectives:
        f = row[col]
        if f:
            for k in nonzero:
                row[k] -= f * prow[k]


def _objective_row(cost: Sequence[Fraction], rows, basis, width: int) -> list[Fraction]:
    """Reduced costs c_j - c_B B^-1 A_j, with -value in the last slot."""
    obj = list(cost) + [ZERO] * (width - len(cost))
    obj.append(ZERO)
    for row, var in zip(rows, basis):
        cb = cost[var] if var < len(cost) else ZERO
        if cb:
            for k, v in enumerate(row):
                if v:
                    obj[k] -= cb * v
    return obj


def _iterate(rows, basis, obj, allowed: int, extra_objectives=()) -> LPStatus:
    """Run simplex pivots on columns < allowed until optimal or unbounded."""
    pivots = 0
    while True:
        col = next((j for j in range(allowed) if obj[j] > 0), None)
        if col is None:
            logger.debug('simplex finished after %d pivots', pivots)
            return LPStatus.OPTIMAL
        best = None
        for i, row in enumerate(rows):
            a = row[col]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return LPStatus.UNBOUNDED
        r = best[1]
        _pivot(rows, [obj, *extra_objectives], r, col)
        basis[r] = col
        pivots += 1


def _solve(c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> LPResult:
    m, n = len(A), len(c)
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    artificial_rows = [i for i in range(m) if b[i] < 0]
    width = n + m + len(artificial_rows)
    art_col = n + m
    for i in range(m):
        row = [Fraction(v) for v in A[i]] + [ZERO] * (width - n) + [Fraction(b[i])]
        row[n + i] = ONE
        if b[i] < 0:
            row = [-v for v in row]
            row[art_col] = ONE
            basis.append(art_col)
            art_col += 1
        else:
            basis.append(n + i)
        rows.append(row)

    if artificial_rows:
        phase_one_cost = [ZERO] * (n + m) + [-ONE] * len(artificial_rows)
        obj = _objective_row(phase_one_cost, rows, basis, width)
        _iterate(rows, basis, obj, width)
        if -obj[-1] < 0:
            return LPResult(LPStatus.INFEASIBLE)
        # drive remaining artificial variables out of the basis
        keep = []
        for i, var in enumerate(basis):
            if var < n + m:
                keep.append(i)
                continue
            col = next((j for j in range(n + m) if rows[i][j] != 0), None)
            if col is None:
                continue
            _pivot(rows, [], i, col)
            basis[i] = col
            keep.append(i)
        rows = [rows[i][:n + m] + [rows[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]
        width = n + m

    cost = [Fraction(v) for v in c] + [ZERO] * m
    obj = _objective_row(cost, rows, basis, width)
    status = _iterate(rows, basis, obj, width)
    if status is LPStatus.UNBOUNDED:
        return LPResult(LPStatus.UNBOUNDED)
    x = [ZERO] * n
    for row, var in zip(rows, basis):
        if var < n:
            x[var] = row[-1]
    return LPResult(LPStatus.OPTIMAL, value=-obj[-1], x=tuple(x))


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence, free: Iterable[int] = ()) -> LPResult:
    """Maximize c.x over A x <= b; columns listed in `free` are unrestricted in sign."""
    free = sorted(set(free))
    n = len(c)
    if free:
        c_split = list(c) + [-c[j] for j in free]
        A_split = [list(row) + [-row[j] for j in free] for row in A]
    else:
        c_split, A_split = list(c), [list(row) for row in A]
    result = _solve([Fraction(v) for v in c_split], A_split, [Fraction(v) for v in b])
    if not result.optimal:
        return result
    x = list(result.x[:n])
    for k, j in enumerate(free):
        x[j] -= result.x[n + k]
    return LPResult(LPStatus.OPTIMAL, value=result.value, x=tuple(x))


def minimize(c: Sequence, A: Sequence[Sequence], b: Sequence, free: Iterable[int] = ()) -> LPResult:
    result = maximize([-Fraction(v) for v in c], A, b, free)
    if not result.optimal:
        return result
    return LPResult(LPStatus.OPTIMAL, value=-result.value, x=result.x)
