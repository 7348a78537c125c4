"""From distances to Gromov products and back.

All arithmetic is exact (:class:`fractions.Fraction`); ties between Gromov
products are decided with zero tolerance.
"""
from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .core import GromovStructure, Permutation, make_structure
from .errors import LengthMismatch, MetricError, NotDeltaGeneric

__all__ = [
    "Verdict",
    "DistanceMatrix",
    "GromovTensor",
    "WeightedGraph",
    "gromov_products",
    "is_metric",
    "structure_of_metric",
    "verify_gromov_identities",
    "pendant_free_reduction",
    "read_metric",
    "write_metric",
    "format_metric",
    "parse_metric",
]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check; truthy when it passed."""

    ok: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def _rational(x) -> Fraction:
    if isinstance(x, float):
        # go through repr so 0.1 means 1/10, not the binary expansion
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    d: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_rational(x) for x in row) for row in self.d)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise MetricError(f"expected a {self.n}x{self.n} matrix")
        for i in range(self.n):
            if rows[i][i] != 0:
                raise MetricError(f"diagonal entry d[{i + 1}][{i + 1}] is not 0")
            for j in range(i + 1, self.n):
                if rows[i][j] != rows[j][i]:
                    raise MetricError(f"d[{i + 1}][{j + 1}] != d[{j + 1}][{i + 1}]")
                if rows[i][j] <= 0:
                    raise MetricError(f"d[{i + 1}][{j + 1}] must be positive")
        object.__setattr__(self, "d", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "DistanceMatrix":
        return cls(len(rows), tuple(tuple(r) for r in rows))

    def __call__(self, i: int, j: int) -> Fraction:
        return self.d[i - 1][j - 1]

    def scaled(self, factor) -> "DistanceMatrix":
        f = _rational(factor)
        return DistanceMatrix(self.n, tuple(tuple(x * f for x in row) for row in self.d))

    def relabeled(self, p: Permutation) -> "DistanceMatrix":
        """Point ``a`` of ``self`` becomes point ``p(a)`` of the result."""
        if p.n != self.n:
            raise LengthMismatch(self.n, p.n)
        inv = p.inverse()
        return DistanceMatrix(
            self.n,
            tuple(
                tuple(self(inv(i), inv(j)) for j in range(1, self.n + 1))
                for i in range(1, self.n + 1)
            ),
        )


def _slots(n: int) -> Iterator[tuple[int, tuple[int, int]]]:
    for i in range(1, n + 1):
        for j, k in combinations([x for x in range(1, n + 1) if x != i], 2):
            yield i, (j, k)


@dataclass(frozen=True)
class GromovTensor:
    """Gromov products keyed by ``(i, (j, k))`` with ``j < k``."""

    n: int
    delta: dict = field(hash=False)

    def __call__(self, i: int, j: int, k: int) -> Fraction:
        return self.delta[(i, (j, k) if j < k else (k, j))]

    def slots(self) -> Iterator[tuple[int, tuple[int, int]]]:
        return _slots(self.n)

    def distance(self, i: int, j: int) -> Fraction:
        k = min(x for x in range(1, self.n + 1) if x not in (i, j))
        return self(i, j, k) + self(j, i, k)


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    weights: dict = field(hash=False)

    @property
    def edges(self) -> frozenset:
        return frozenset(self.weights)


def gromov_products(d: DistanceMatrix) -> GromovTensor:
    delta = {}
    for i, (j, k) in _slots(d.n):
        delta[(i, (j, k))] = (d(i, j) + d(i, k) - d(j, k)) / 2
    return GromovTensor(d.n, delta)


def is_metric(d: DistanceMatrix) -> Verdict:
    for (i, (j, k)), v in gromov_products(d).delta.items():
        if v < 0:
            return Verdict(False, f"triangle ({i}; {j},{k}) has Gromov product {v}", (i, j, k, v))
    return Verdict(True)


def _minimal_pairs(t: GromovTensor, i: int) -> tuple[Fraction, list[tuple[int, int]]]:
    best = None
    tied: list[tuple[int, int]] = []
    for j, k in combinations([x for x in range(1, t.n + 1) if x != i], 2):
        v = t.delta[(i, (j, k))]
        if best is None or v < best:
            best, tied = v, [(j, k)]
        elif v == best:
            tied.append((j, k))
    return best, tied


def structure_of_metric(d: DistanceMatrix) -> GromovStructure:
    """The pick map of a Delta-generic metric; raises :class:`NotDeltaGeneric` on ties."""
    t = gromov_products(d)
    picks = {}
    for i in range(1, d.n + 1):
        _, tied = _minimal_pairs(t, i)
        if len(tied) > 1:
            raise NotDeltaGeneric(i, tied)
        picks[i] = tied[0]
    return make_structure(d.n, picks)


def verify_gromov_identities(t: GromovTensor) -> Verdict:
    """Check the four-term relations between products at a, b, c and i.

    For distinct a, b, c, i the differences

        D(a,b,i) - D(a,b,c) = D(c,b,i) - D(c,a,i) = D(i,a,c) - D(i,b,c) = D(b,a,c) - D(b,a,i)
        D(a,c,i) - D(a,b,c) = D(b,c,i) - D(b,a,i) = D(i,a,b) - D(i,b,c) = D(c,a,b) - D(c,a,i)

    must agree exactly (``D(x,y,z)`` is the product at x of triangle xyz).
    """
    D = t
    nodes = range(1, t.n + 1)
    for a in nodes:
        for b in nodes:
            for c in nodes:
                if len({a, b, c}) < 3:
                    continue
                for i in nodes:
                    if i in (a, b, c):
                        continue
                    first = [
                        (D(a, b, i) - D(a, b, c), ((a, b, i), (a, b, c))),
                        (D(c, b, i) - D(c, a, i), ((c, b, i), (c, a, i))),
                        (D(i, a, c) - D(i, b, c), ((i, a, c), (i, b, c))),
                        (D(b, a, c) - D(b, a, i), ((b, a, c), (b, a, i))),
                    ]
                    second = [
                        (D(a, c, i) - D(a, b, c), ((a, c, i), (a, b, c))),
                        (D(b, c, i) - D(b, a, i), ((b, c, i), (b, a, i))),
                        (D(i, a, b) - D(i, b, c), ((i, a, b), (i, b, c))),
                        (D(c, a, b) - D(c, a, i), ((c, a, b), (c, a, i))),
                    ]
                    for group in (first, second):
                        ref = group[0][0]
                        for value, entries in group[1:]:
                            if value != ref:
                                return Verdict(
                                    False,
                                    f"identity fails for (a,b,c,i)=({a},{b},{c},{i}): "
                                    f"{group[0][1]} gives {ref}, {entries} gives {value}",
                                    (a, b, c, i, group[0][1] + entries),
                                )
    return Verdict(True)


def pendant_free_reduction(d: DistanceMatrix) -> WeightedGraph:
    """Subtract every node's minimal product from its edges, drop picked edges.

    All minima come from the original metric and are subtracted at once.
    """
    s = structure_of_metric(d)
    t = gromov_products(d)
    m = {i: _minimal_pairs(t, i)[0] for i in range(1, d.n + 1)}
    removed = s.image()
    weights = {}
    for i, j in combinations(range(1, d.n + 1), 2):
        if (i, j) in removed:
            continue
        weights[(i, j)] = d(i, j) - m[i] - m[j]
    return WeightedGraph(d.n, weights)


# -- distance matrix files --------------------------------------------------


def _parse_number(tok: str, line: int, col: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise MetricError(f"cannot read {tok!r} as a rational", line, col) from None


def parse_metric(text: str) -> DistanceMatrix:
    """Read ``n`` then ``n`` rows of rationals (``3/2``) or decimals."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise MetricError("empty metric file")
    lineno, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise MetricError(f"first line must be the point count, got {first!r}", lineno) from None
    if n < 1:
        raise MetricError("point count must be positive", lineno)
    rows = lines[1:]
    if len(rows) != n:
        raise MetricError(f"expected {n} rows, found {len(rows)}", rows[-1][0] if rows else lineno)
    values = []
    for lineno, body in rows:
        toks = body.split()
        if len(toks) != n:
            raise MetricError(f"expected {n} entries, found {len(toks)}", lineno)
        values.append([_parse_number(tok, lineno, col) for col, tok in enumerate(toks, start=1)])
    for r, (lineno, _) in enumerate(rows):
        if values[r][r] != 0:
            raise MetricError("diagonal entry must be 0", lineno, r + 1)
        for c in range(n):
            if values[r][c] != values[c][r]:
                raise MetricError(f"not symmetric (row {c + 1} has {values[c][r]})", lineno, c + 1)
            if r != c and values[r][c] <= 0:
                raise MetricError("off-diagonal distances must be positive", lineno, c + 1)
    return DistanceMatrix.from_rows(values)


def format_metric(d: DistanceMatrix) -> str:
    out = io.StringIO()
    out.write(f"{d.n}\n")
    width = max(len(str(x)) for row in d.d for x in row)
    for row in d.d:
        out.write(" ".join(str(x).rjust(width) for x in row).rstrip() + "\n")
    return out.getvalue()


def read_metric(path: str | os.PathLike) -> DistanceMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_metric(fh.read())


def write_metric(d: DistanceMatrix, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_metric(d))
