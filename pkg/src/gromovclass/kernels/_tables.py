"""Lookup tables shared by both kernel backends.

Nodes and pairs are 0-based here.  Pair ``p`` of an ``n``-point space is the
``p``-th element of ``itertools.combinations(range(n), 2)``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np

MAX_N = 8

# invariant table layout; trace columns tr(G^2)..tr(G^n) follow
COL_REMOVED = 0
COL_RANK = 1
COL_IRREDUCIBLE = 2
COL_BLOCK = 3
COL_ISOLATED = 4
COL_END = 5
COL_INTERIOR = 6
COL_TYPE = 7
COL_TRACE0 = 8


def n_columns(n: int) -> int:
    return COL_TRACE0 + n - 1


@lru_cache(maxsize=None)
def pairs(n: int) -> np.ndarray:
    """(P, 2) array of pair endpoints."""
    return np.array(list(combinations(range(n), 2)), dtype=np.int64)


@lru_cache(maxsize=None)
def pair_id(n: int) -> np.ndarray:
    """(n, n) array mapping two distinct nodes to their pair index (-1 on the diagonal)."""
    out = -np.ones((n, n), dtype=np.int64)
    for p, (b, c) in enumerate(pairs(n)):
        out[b, c] = out[c, b] = p
    return out


@lru_cache(maxsize=None)
def containing(n: int) -> np.ndarray:
    """Bitmask of the pairs containing each node."""
    out = np.zeros(n, dtype=np.uint32)
    for p, (b, c) in enumerate(pairs(n)):
        out[b] |= np.uint32(1 << p)
        out[c] |= np.uint32(1 << p)
    return out


@lru_cache(maxsize=None)
def legal_picks(n: int) -> np.ndarray:
    """Per node, the mask of pairs not containing the node itself."""
    full = np.uint32((1 << len(pairs(n))) - 1)
    return np.array([full & ~containing(n)[a] for a in range(n)], dtype=np.uint32)


@lru_cache(maxsize=None)
def exclusion_masks(n: int) -> np.ndarray:
    """``excl[a, p, j]``: pairs node ``j`` may not pick once ``a`` picks pair ``p``.

    If the minimal product at ``a`` is on ``{b, c}`` then ``b`` cannot pick a
    pair containing ``c``, ``c`` cannot pick a pair containing ``b``, and any
    other node ``i`` cannot pick ``{a, b}`` or ``{a, c}``.
    """
    pr = pairs(n)
    pid = pair_id(n)
    cont = containing(n)
    excl = np.zeros((n, len(pr), n), dtype=np.uint32)
    for a in range(n):
        for p, (b, c) in enumerate(pr):
            if a in (b, c):
                continue
            excl[a, p, b] |= cont[c]
            excl[a, p, c] |= cont[b]
            ab = np.uint32(1 << pid[a, b])
            ac = np.uint32(1 << pid[a, c])
            for i in range(n):
                if i not in (a, b, c):
                    excl[a, p, i] |= ab | ac
    return excl


def encode_components(components) -> int:
    """Pack (length, is_cycle) components, longest first, into one integer."""
    code = 0
    for length, cyc in sorted(components, reverse=True):
        code = code * 32 + 2 * length + int(cyc)
    return code


def decode_components(code: int) -> list[tuple[int, bool]]:
    out = []
    while code:
        code, v = divmod(code, 32)
        out.append((v // 2, bool(v % 2)))
    return out[::-1]
