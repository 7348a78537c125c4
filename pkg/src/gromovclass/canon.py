"""Canonical forms under relabeling, and invariant keys for bucketing.

The canonical form of a structure is the lexicographically least
serialization over all relabelings, tokens compared as integer triples.

Search: labels are handed out in increasing order.  When the node carrying
label ``q`` is processed, any of its picks still unlabeled must receive the
smallest free labels (giving one a larger label makes token ``q`` strictly
larger without affecting earlier tokens), so the only branching is which
unlabeled node opens a new label when none is pending, and in which order
two unlabeled picks are labeled.  Prefixes worse than the best form found so
far are cut.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import GromovStructure, Permutation, apply_permutation, serialize
from .errors import SizeMismatch
from .matrixrep import invariants, structure_matrix

__all__ = ["InvariantKey", "CanonicalForm", "invariant_key", "canonical_form", "equivalent"]


@dataclass(frozen=True, order=True)
class InvariantKey:
    n: int
    type_label: str
    roles: tuple[int, int, int]
    removed: int
    rank: int
    traces: tuple[int, ...]
    irreducible: bool


@dataclass(frozen=True)
class CanonicalForm:
    text: str
    structure: GromovStructure
    permutation: Permutation


def invariant_key(s: GromovStructure) -> InvariantKey:
    v = invariants(structure_matrix(s), s)
    return InvariantKey(
        n=s.n,
        type_label=v.type_label,
        roles=v.roles,
        removed=v.removed,
        rank=v.rank,
        traces=v.traces,
        irreducible=v.irreducible,
    )


def canonical_form(s: GromovStructure) -> CanonicalForm:
    n = s.n
    picks = [(b - 1, c - 1) for b, c in s.picks]
    label = [-1] * n
    node_of = [-1] * n
    cur: list[tuple[int, int]] = [(0, 0)] * n
    best: list = [None]
    best_label: list = [None]

    def step(q, nlab, equal, tok, fresh):
        if best[0] is not None and equal:
            if tok > best[0][q]:
                return False
            if tok < best[0][q]:
                equal = False
        cur[q] = tok
        for u in fresh:
            label[u] = nlab
            node_of[nlab] = u
            nlab += 1
        updated = search(q + 1, nlab, equal)
        for u in fresh:
            label[u] = -1
        return updated

    def search(q, nlab, equal):
        if q == n:
            if best[0] is None or not equal:
                best[0] = list(cur)
                best_label[0] = list(label)
                return True
            return False
        if q == nlab:
            updated = False
            for v in range(n):
                if label[v] < 0:
                    label[v] = q
                    node_of[q] = v
                    if search(q, nlab + 1, equal):
                        updated = equal = True
                    label[v] = -1
            return updated
        b, c = picks[node_of[q]]
        x, y = label[b], label[c]
        if x >= 0 and y >= 0:
            return step(q, nlab, equal, (min(x, y), max(x, y)), ())
        if x >= 0:
            return step(q, nlab, equal, (x, nlab), (c,))
        if y >= 0:
            return step(q, nlab, equal, (y, nlab), (b,))
        tok = (nlab, nlab + 1)
        updated = step(q, nlab, equal, tok, (b, c))
        if updated:
            equal = True
        return step(q, nlab, equal, tok, (c, b)) or updated

    search(0, 0, True)
    perm = Permutation(tuple(x + 1 for x in best_label[0]))
    structure = apply_permutation(s, perm)
    return CanonicalForm(serialize(structure), structure, perm)


def equivalent(s1: GromovStructure, s2: GromovStructure) -> bool:
    if s1.n != s2.n:
        raise SizeMismatch(s1.n, s2.n)
    if invariant_key(s1) != invariant_key(s2):
        return False
    return canonical_form(s1).text == canonical_form(s2).text
