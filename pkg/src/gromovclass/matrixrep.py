"""Matrix representation of a structure and the invariants derived from it.

``g[i][j] = 1`` iff node ``j`` is in the pair picked by node ``i``; every row
sums to 2.  The symmetric part ``h`` keeps only mutual selections and its
components are the chains and cycles of the structure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import GromovStructure, make_structure

__all__ = [
    "StructureMatrix",
    "ChainDecomposition",
    "InvariantVector",
    "ClosedSubset",
    "structure_matrix",
    "trace_powers",
    "exact_rank",
    "is_irreducible",
    "chain_decomposition",
    "type_label",
    "invariants",
    "closed_subsets",
    "chain_diagram",
]

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class StructureMatrix:
    n: int
    g: Matrix
    h: Matrix


@dataclass(frozen=True)
class ChainDecomposition:
    """Components of the mutual-selection graph, longest first.

    Each component is ``(kind, nodes)`` with kind ``"cycle"`` or ``"chain"``;
    nodes are listed in path order (a singleton is an isolated point).
    """

    components: tuple[tuple[str, tuple[int, ...]], ...]
    isolated: int
    end: int
    interior: int
    label: str

    @property
    def roles(self) -> tuple[int, int, int]:
        return (self.isolated, self.end, self.interior)


@dataclass(frozen=True)
class InvariantVector:
    traces: tuple[int, ...]
    rank: int
    removed: int
    irreducible: bool
    block: int
    roles: tuple[int, int, int]
    type_label: str


@dataclass(frozen=True)
class ClosedSubset:
    nodes: tuple[int, ...]
    # None when fewer than 4 nodes; allowable structures never have such subsets
    structure: GromovStructure | None
    index_map: dict


def structure_matrix(s: GromovStructure) -> StructureMatrix:
    n = s.n
    g = [[0] * n for _ in range(n)]
    for a, (b, c) in enumerate(s.picks):
        g[a][b - 1] = 1
        g[a][c - 1] = 1
    h = [[g[i][j] & g[j][i] for j in range(n)] for i in range(n)]
    return StructureMatrix(n, tuple(map(tuple, g)), tuple(map(tuple, h)))


def _matmul(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*y))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in x]


def trace_powers(m: StructureMatrix) -> tuple[int, ...]:
    """``tr(g^k)`` for k = 2..n."""
    out = []
    power = [list(r) for r in m.g]
    for _ in range(2, m.n + 1):
        power = _matmul(power, m.g)
        out.append(sum(power[i][i] for i in range(m.n)))
    return tuple(out)


def exact_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][col]
        for i in range(r + 1, nrows):
            f = a[i][col]
            a[i] = [(pv * x - f * y) // prev for x, y in zip(a[i], a[r])]
        prev = pv
        r += 1
        if r == nrows:
            break
    return r


def _strongly_connected(m: StructureMatrix) -> bool:
    n = m.n

    def reach(adj):
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in range(n):
                if adj(v, w) and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    return reach(lambda v, w: m.g[v][w]) and reach(lambda v, w: m.g[w][v])


def is_irreducible(m: StructureMatrix) -> tuple[bool, int]:
    """Irreducibility of ``g`` and the number of all-nonzero columns of sum g^i."""
    n = m.n
    total = [[int(i == j) for j in range(n)] for i in range(n)]
    power = [row[:] for row in total]
    for _ in range(n):
        power = _matmul(power, m.g)
        total = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, power)]
    flag = all(x != 0 for row in total for x in row)
    block = sum(1 for j in range(n) if all(total[i][j] != 0 for i in range(n)))
    if flag != _strongly_connected(m):
        raise RuntimeError("matrix irreducibility disagrees with strong connectivity")
    return flag, block


def type_label(components: Sequence[tuple[str, Sequence[int]]], n: int) -> str:
    """Render component lengths the way the published tables do.

    Lengths are joined with ``+`` (``k+0`` for a single component, ``1×n``
    when every point is isolated); ``(Cycle)`` marks a cycle component and
    ``(Chain)`` a chain of length at least 4, the shortest length at which a
    cycle of the same shape can occur.
    """
    lengths = sorted((len(nodes) for _, nodes in components), reverse=True)
    if all(x == 1 for x in lengths):
        return f"1×{n}"
    text = "+".join(map(str, lengths))
    if len(lengths) == 1:
        text += "+0"
    if any(kind == "cycle" for kind, _ in components):
        return text + " (Cycle)"
    if lengths[0] >= 4:
        return text + " (Chain)"
    return text


def chain_decomposition(s: GromovStructure) -> ChainDecomposition:
    n = s.n
    nbrs = {a: [] for a in range(1, n + 1)}
    for a in range(1, n + 1):
        for b in s.pick(a):
            if b > a and a in s.pick(b):
                nbrs[a].append(b)
                nbrs[b].append(a)
    seen: set[int] = set()
    comps = []
    # paths first, walked from their lower-numbered end
    for start in range(1, n + 1):
        if start in seen or len(nbrs[start]) == 2:
            continue
        path = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            nxt = [w for w in nbrs[cur] if w != prev and w not in seen]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            path.append(cur)
            seen.add(cur)
        comps.append(("chain", tuple(path)))
    for start in range(1, n + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            nxt = [w for w in nbrs[cur] if w != prev and w not in seen]
            if not nxt:
                break
            prev, cur = cur, min(nxt)
            cyc.append(cur)
            seen.add(cur)
        comps.append(("cycle", tuple(cyc)))
    comps.sort(key=lambda c: (-len(c[1]), c[0] != "cycle", c[1]))
    deg = [len(nbrs[a]) for a in range(1, n + 1)]
    return ChainDecomposition(
        components=tuple(comps),
        isolated=deg.count(0),
        end=deg.count(1),
        interior=deg.count(2),
        label=type_label(comps, n),
    )


def invariants(m: StructureMatrix, s: GromovStructure) -> InvariantVector:
    irr, block = is_irreducible(m)
    dec = chain_decomposition(s)
    return InvariantVector(
        traces=trace_powers(m),
        rank=exact_rank(m.g),
        removed=len(s.image()),
        irreducible=irr,
        block=block,
        roles=dec.roles,
        type_label=dec.label,
    )


def closed_subsets(s: GromovStructure) -> list[ClosedSubset]:
    """Proper nonempty node sets containing the picks of all their members."""
    n = s.n
    out = []
    for mask in range(1, (1 << n) - 1):
        nodes = tuple(a for a in range(1, n + 1) if mask >> (a - 1) & 1)
        if not all(mask >> (b - 1) & 1 for a in nodes for b in s.pick(a)):
            continue
        index = {old: new for new, old in enumerate(nodes, start=1)}
        sub = None
        if len(nodes) >= 4:
            sub = make_structure(
                len(nodes), {index[a]: (index[s.pick(a)[0]], index[s.pick(a)[1]]) for a in nodes}
            )
        out.append(ClosedSubset(nodes, sub, index))
    out.sort(key=lambda c: (len(c.nodes), c.nodes))
    return out


def chain_diagram(s: GromovStructure) -> str:
    """One line per component: hollow outer picks around the filled path."""
    lines = []
    for kind, nodes in chain_decomposition(s).components:
        first, last = nodes[0], nodes[-1]
        if kind == "cycle":
            left, right = last, first
        elif len(nodes) == 1:
            left, right = s.pick(first)
        else:
            left = next(x for x in s.pick(first) if x != nodes[1])
            right = next(x for x in s.pick(last) if x != nodes[-2])
        body = "—".join(f"{a}•" for a in nodes)
        lines.append(f"{left}∘—{body}—{right}∘")
    return "\n".join(lines)
