"""Exact simplex over the rationals with Bland's rule.

Solves ``minimize c.x  subject to  A x = b, x >= 0``.  Rows are scaled to
integers and the dense tableau is kept fraction-free: every entry is an
integer over one common denominator ``D`` and a pivot on ``(r, e)`` maps
``a_ij`` to ``(a_re a_ij - a_ie a_rj) / D`` with exact division.  The
arithmetic stays on Python ints instead of ``Fraction``.

Two phases; artificial variables left in the basis at level zero after phase
one are pivoted out, or their rows dropped as redundant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPResult", "solve_standard", "solve_square", "OPTIMAL", "INFEASIBLE", "UNBOUNDED"]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None = None
    value: Fraction | None = None
    basis: list[int] | None = None
    pivots: int = 0


class _Tableau:
    """Constraint rows ``[a_0 .. a_{k-1}, rhs]`` plus an objective row, all over ``d``."""

    def __init__(self, rows: list[list[int]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.obj: list[int] = []
        self.d = 1
        self.pivots = 0

    def _update(self, row: list[int], prow: list[int], e: int, p: int) -> list[int]:
        f = row[e]
        d = self.d
        if f:
            return [(p * x - f * y) // d for x, y in zip(row, prow)]
        if p == d:
            return row
        return [x * p // d if x else 0 for x in row]

    def pivot(self, r: int, e: int) -> None:
        prow = self.rows[r]
        p = prow[e]
        for i, row in enumerate(self.rows):
            if i != r:
                self.rows[i] = self._update(row, prow, e, p)
        self.obj = self._update(self.obj, prow, e, p)
        self.d = p
        if p < 0:
            self.rows = [[-x for x in row] for row in self.rows]
            self.obj = [-x for x in self.obj]
            self.d = -p
        self.basis[r] = e
        self.pivots += 1

    def set_objective(self, cost: Sequence[int]) -> None:
        """Objective row ``D (c_j - c_B B^-1 A_j)``, last entry ``-D c_B x_B``."""
        obj = [c * self.d for c in cost] + [0]
        for row, bcol in zip(self.rows, self.basis):
            cb = cost[bcol]
            if cb:
                obj = [o - cb * x for o, x in zip(obj, row)]
        self.obj = obj

    def run(self, ncols: int) -> str:
        while True:
            obj = self.obj
            enter = next((j for j in range(ncols) if obj[j] < 0), None)
            if enter is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    if best is None:
                        best = i
                        continue
                    brow = self.rows[best]
                    lhs, rhs = row[-1] * brow[enter], brow[-1] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                        best = i
            if best is None:
                return UNBOUNDED
            self.pivot(best, enter)


def _integer_row(values) -> list[int]:
    vals = [Fraction(x) for x in values]
    scale = math.lcm(*(v.denominator for v in vals))
    return [int(v * scale) for v in vals]


def solve_standard(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    m = len(A)
    n = len(c)
    rows = []
    for i, (row, bi) in enumerate(zip(A, b)):
        ints = _integer_row(list(row) + [bi])
        if ints[-1] < 0:
            ints = [-x for x in ints]
        art = [0] * m
        art[i] = 1
        rows.append(ints[:-1] + art + ints[-1:])
    tab = _Tableau(rows, [n + i for i in range(m)])

    tab.set_objective([0] * n + [1] * m)
    tab.run(n + m)
    if any(row[-1] for row, bc in zip(tab.rows, tab.basis) if bc >= n):
        return LPResult(INFEASIBLE, pivots=tab.pivots)

    # drive zero-level artificials out of the basis
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n:
            col = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if col is None:
                del tab.rows[i], tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1
    tab.rows = [row[:n] + row[-1:] for row in tab.rows]

    tab.set_objective(_integer_row(c))
    status = tab.run(n)
    if status != OPTIMAL:
        return LPResult(status, pivots=tab.pivots)
    x = [Fraction(0)] * n
    for row, bc in zip(tab.rows, tab.basis):
        x[bc] = Fraction(row[-1], tab.d)
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x) if xi), Fraction(0))
    return LPResult(OPTIMAL, x, value, list(tab.basis), tab.pivots)


def solve_square(M: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve a nonsingular square system exactly by Gauss-Jordan elimination."""
    n = len(M)
    a = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        prow = a[col] = [x * inv if x else x for x in a[col]]
        nz = [j for j in range(col, n + 1) if prow[j]]
        for i in range(n):
            row = a[i]
            if i != col and row[col]:
                f = row[col]
                for j in nz:
                    row[j] -= f * prow[j]
    return [a[i][n] for i in range(n)]
