"""Candidate structures and the combinatorial allowability filter.

If the minimal product at ``a`` sits on ``{b, c}``, the four-term relations
between products force

* node ``b`` not to pick any pair containing ``c``,
* node ``c`` not to pick any pair containing ``b``,
* every other node ``i`` not to pick ``{a, b}`` or ``{a, c}``.

A structure is allowable when none of its picks is excluded by another.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterator

import numpy as np

from . import kernels
from .core import GromovStructure, from_code
from .errors import UnsupportedN
from .kernels import _tables as T
from .metric import Verdict

__all__ = [
    "exclusions_of",
    "is_allowable",
    "enumerate_allowable",
    "allowable_codes",
    "subtree_masks",
    "MIN_N",
    "MAX_N",
]

MIN_N = 4
MAX_N = 8
MODES = ("full", "chain-seeded")


def exclusions_of(a: int, pair: tuple[int, int], n: int) -> dict[int, frozenset[tuple[int, int]]]:
    """Picks forbidden at each node once ``a`` picks ``pair`` (1-based)."""
    b, c = sorted(pair)
    out: dict[int, set[tuple[int, int]]] = {x: set() for x in range(1, n + 1)}
    for x, y in combinations(range(1, n + 1), 2):
        if c in (x, y) and b not in (x, y):
            out[b].add((x, y))
        if b in (x, y) and c not in (x, y):
            out[c].add((x, y))
    for i in range(1, n + 1):
        if i not in (a, b, c):
            out[i].add(tuple(sorted((a, b))))
            out[i].add(tuple(sorted((a, c))))
    return {x: frozenset(v) for x, v in out.items() if v}


def is_allowable(s: GromovStructure) -> Verdict:
    for a, pair in enumerate(s.picks, start=1):
        for node, banned in sorted(exclusions_of(a, pair, s.n).items()):
            if s.pick(node) in banned:
                b, c = s.pick(node)
                return Verdict(
                    False,
                    f"exclusion rule violated at node {node}: pick {{{b},{c}}} is excluded "
                    f"because node {a} picks {{{pair[0]},{pair[1]}}}",
                    (node, a),
                )
    return Verdict(True)


def _check_n(n: int) -> None:
    if not MIN_N <= n <= MAX_N:
        raise UnsupportedN(n, MIN_N, MAX_N)


def subtree_masks(n: int) -> list[np.ndarray]:
    """Pick masks splitting the search at the joint choice of the first two nodes."""
    legal = T.legal_picks(n)
    out = []
    for p0 in range(len(T.pairs(n))):
        if not (int(legal[0]) >> p0) & 1:
            continue
        for p1 in range(len(T.pairs(n))):
            if not (int(legal[1]) >> p1) & 1:
                continue
            mask = legal.copy()
            mask[0] = np.uint32(1 << p0)
            mask[1] = np.uint32(1 << p1)
            out.append(mask)
    return out


def _chain_seed_masks(n: int, k: int) -> np.ndarray:
    """Masks placing a length-``k`` chain or cycle on nodes 0..k-1 in path order."""
    mask = T.legal_picks(n).copy()
    if k == 1:
        return mask
    pid = T.pair_id(n)
    cont = T.containing(n)
    mask[0] &= cont[1]
    mask[k - 1] &= cont[k - 2]
    for m in range(1, k - 1):
        mask[m] = np.uint32(1 << int(pid[m - 1, m + 1]))
    return mask


def _component_sizes(codes: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Size of node 0's mutual-selection component and the largest component size."""
    from .kernels._pykernels import _matrices

    G = _matrices(codes.astype(np.int64), n)
    H = G * G.transpose(0, 2, 1)
    labels = np.broadcast_to(np.arange(n), (len(codes), n)).copy()
    for _ in range(n):
        labels = np.minimum(labels, np.where(H > 0, labels[:, None, :], n).min(axis=2))
    onehot = labels[:, :, None] == np.arange(n)[None, None, :]
    size = onehot.sum(axis=1)
    return size[:, 0], size.max(axis=1)


def allowable_codes(n: int, mode: str = "full") -> np.ndarray:
    """Allowable structures as rows of 0-based pair indices."""
    _check_n(n)
    if mode == "full":
        return kernels.enumerate_codes(n)
    if mode != "chain-seeded":
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    parts = []
    for k in range(1, n + 1):
        codes = kernels.enumerate_codes(n, _chain_seed_masks(n, k))
        if len(codes) == 0:
            continue
        for start in range(0, len(codes), 100_000):
            chunk = codes[start : start + 100_000]
            own, longest = _component_sizes(chunk, n)
            parts.append(chunk[(longest == k) & (own == k)])
    out = np.concatenate(parts) if parts else np.zeros((0, n), dtype=np.uint8)
    return np.unique(out, axis=0)


def enumerate_allowable(n: int, mode: str = "full") -> Iterator[GromovStructure]:
    """Stream allowable structures.

    ``full`` walks every pick assignment depth first with exclusion pruning
    and yields each allowable structure once.  ``chain-seeded`` only yields
    structures whose longest chain or cycle is laid out on nodes 1..k in
    order; every class has such a member, so it is a cross-check, not a
    replacement.
    """
    for row in allowable_codes(n, mode):
        yield from_code(n, row)
