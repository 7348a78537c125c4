"""Realizability of a structure by a Delta-generic metric.

The unknowns are the Gromov products themselves.  They come from a metric
exactly when, for every pair ``{i, j}``, ``D(i,j,k) + D(j,i,k)`` does not
depend on ``k``.  A structure is generic when some such assignment has all
products strictly positive and every node's picked product strictly below
its other products; we maximize a common margin ``t`` on all of those
inequalities under the normalization ``sum of products = 1`` and call the
structure generic iff the optimum is positive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .core import GromovStructure
from .enumerate import is_allowable
from .errors import NotAllowable, NotGeneric
from .metric import DistanceMatrix, GromovTensor, _slots, structure_of_metric
from .simplex import OPTIMAL, solve_square, solve_standard

__all__ = [
    "FeasibilityProblem",
    "GenericityVerdict",
    "build_problem",
    "solve",
    "realize_metric",
    "witness_distances",
]

Row = dict  # variable index -> integer coefficient


@dataclass(frozen=True)
class FeasibilityProblem:
    """Margin-maximization problem for one structure.

    ``positivity`` and ``minimality`` rows read ``row . D >= t``;
    ``equalities`` read ``row . D = 0`` and ``normalization . D = 1``.
    """

    n: int
    structure: GromovStructure
    slots: tuple = field(repr=False)
    equalities: tuple = field(repr=False)
    positivity: tuple = field(repr=False)
    minimality: tuple = field(repr=False)
    normalization: Row = field(repr=False)

    @property
    def n_variables(self) -> int:
        return len(self.slots)


@dataclass(frozen=True)
class GenericityVerdict:
    generic: bool
    margin: Fraction
    witness: GromovTensor | None = None
    pivots: int = 0

    def __bool__(self) -> bool:
        return self.generic


@lru_cache(maxsize=None)
def _slot_layout(n: int):
    slots = tuple(_slots(n))
    index = {s: i for i, s in enumerate(slots)}
    return slots, index


def _var(index, i, j, k):
    return index[(i, (j, k) if j < k else (k, j))]


@lru_cache(maxsize=None)
def _equalities(n: int) -> tuple:
    _, index = _slot_layout(n)
    rows = []
    for i, j in combinations(range(1, n + 1), 2):
        others = [k for k in range(1, n + 1) if k not in (i, j)]
        k0 = others[0]
        for k in others[1:]:
            row: dict[int, int] = {}
            for v, coef in (
                (_var(index, i, j, k), 1),
                (_var(index, j, i, k), 1),
                (_var(index, i, j, k0), -1),
                (_var(index, j, i, k0), -1),
            ):
                row[v] = row.get(v, 0) + coef
            rows.append(row)
    return tuple(rows)


def build_problem(s: GromovStructure, require_allowable: bool = True) -> FeasibilityProblem:
    """Margin problem for ``s``.

    Structures failing the exclusion rule are known infeasible, so asking for
    one is treated as a usage error unless ``require_allowable`` is off (the
    brute-force cross-checks solve every candidate).
    """
    if require_allowable:
        verdict = is_allowable(s)
        if not verdict:
            raise NotAllowable(verdict.reason)
    n = s.n
    slots, index = _slot_layout(n)
    positivity = tuple({v: 1} for v in range(len(slots)))
    minimality = []
    for a in range(1, n + 1):
        chosen = index[(a, s.pick(a))]
        for pair in combinations([x for x in range(1, n + 1) if x != a], 2):
            if pair != s.pick(a):
                minimality.append({index[(a, pair)]: 1, chosen: -1})
    normalization = {v: 1 for v in range(len(slots))}
    return FeasibilityProblem(
        n, s, slots, _equalities(n), positivity, tuple(minimality), normalization
    )


@lru_cache(maxsize=None)
def _parametrization(n: int) -> tuple[tuple[tuple[Fraction, ...], ...], int]:
    """Basis of the solution space of the equalities: ``D = P z``."""
    slots, _ = _slot_layout(n)
    nv = len(slots)
    rows = [[Fraction(r.get(j, 0)) for j in range(nv)] for r in _equalities(n)]
    pivots = []
    r = 0
    for col in range(nv):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(nv) if c not in set(pivots)]
    P = [[Fraction(0)] * len(free) for _ in range(nv)]
    for k, f in enumerate(free):
        P[f][k] = Fraction(1)
        for i, pc in enumerate(pivots):
            P[pc][k] = -rows[i][f]
    return tuple(map(tuple, P)), len(free)


def _project(row: Row, P) -> list[Fraction]:
    k = len(P[0])
    out = [Fraction(0)] * k
    for v, coef in row.items():
        pv = P[v]
        for j in range(k):
            if pv[j]:
                out[j] += coef * pv[j]
    return out


def solve(p: FeasibilityProblem) -> GenericityVerdict:
    """Exact maximum margin via the dual problem; the primal optimum is the witness.

    The equalities are eliminated first (``D = P z``).  The remaining primal
    ``max t  s.t.  a_r . z - t >= 0,  e . z = 1`` has the standard-form dual
    ``min u  s.t.  sum_r y_r a_r = u e,  sum_r y_r = 1,  y >= 0``, whose
    optimal basis gives the primal point by one square solve.
    """
    P, k = _parametrization(p.n)
    ineq = [_project(r, P) for r in p.positivity + p.minimality]
    e = _project(p.normalization, P)
    R = len(ineq)
    A = []
    for j in range(k):
        A.append([-a[j] for a in ineq] + [e[j], -e[j]])
    A.append([Fraction(1)] * R + [Fraction(0), Fraction(0)])
    b = [Fraction(0)] * k + [Fraction(1)]
    c = [Fraction(0)] * R + [Fraction(1), Fraction(-1)]
    res = solve_standard(A, b, c)
    if res.status != OPTIMAL or len(res.basis) != k + 1:
        raise RuntimeError(f"margin problem did not solve cleanly: {res.status}")
    B = [[A[i][col] for i in range(k + 1)] for col in res.basis]
    pi = solve_square(B, [c[col] for col in res.basis])
    z, t = pi[:k], pi[k]
    if t != res.value:
        raise RuntimeError("primal and dual optima differ")

    delta = [sum((P[v][j] * z[j] for j in range(k) if P[v][j]), Fraction(0)) for v in range(len(p.slots))]
    _check_point(p, delta, t)
    if t <= 0:
        return GenericityVerdict(False, t, None, res.pivots)
    witness = GromovTensor(p.n, dict(zip(p.slots, delta)))
    return GenericityVerdict(True, t, witness, res.pivots)


def _check_point(p: FeasibilityProblem, delta: list[Fraction], t: Fraction) -> None:
    def dot(row):
        return sum((coef * delta[v] for v, coef in row.items()), Fraction(0))

    bad = (
        any(dot(r) != 0 for r in p.equalities)
        or dot(p.normalization) != 1
        or any(dot(r) < t for r in p.positivity + p.minimality)
    )
    if bad:
        raise RuntimeError("optimal point violates the margin problem")


def witness_distances(t: GromovTensor) -> DistanceMatrix:
    """Distances from products, scaled to the smallest proportional integer metric."""
    n = t.n
    d = [[Fraction(0)] * n for _ in range(n)]
    for i, j in combinations(range(1, n + 1), 2):
        d[i - 1][j - 1] = d[j - 1][i - 1] = t.distance(i, j)
    den = math.lcm(*(x.denominator for row in d for x in row))
    ints = [[int(x * den) for x in row] for row in d]
    g = math.gcd(*(x for row in ints for x in row))
    return DistanceMatrix.from_rows([[x // g for x in row] for row in ints])


def realize_metric(s: GromovStructure) -> DistanceMatrix:
    verdict = solve(build_problem(s))
    if not verdict.generic:
        raise NotGeneric(f"{s} is not realized by a Delta-generic metric (margin {verdict.margin})")
    d = witness_distances(verdict.witness)
    if structure_of_metric(d) != s:
        raise RuntimeError(f"witness metric does not reproduce {s}")
    return d
