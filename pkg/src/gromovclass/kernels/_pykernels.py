"""Pure Python / numpy implementations of the hot kernels.

Same contracts as the compiled module; used when it is not built or when
``GROMOVCLASS_BACKEND=python``.
"""
from __future__ import annotations

from itertools import permutations

import numpy as np

from . import _tables as T

NAME = "python"


def enumerate_codes(n: int, allowed=None) -> np.ndarray:
    """All allowable structures, as rows of pair indices, in lexicographic order.

    ``allowed`` optionally restricts each node's picks to a pair mask.
    """
    excl = T.exclusion_masks(n).tolist()
    legal = T.legal_picks(n)
    if allowed is not None:
        legal = legal & np.asarray(allowed, dtype=np.uint32)
    legal = [int(x) for x in legal]
    P = len(T.pairs(n))
    out: list[tuple[int, ...]] = []
    picks = [0] * n

    def rec(a: int, forb: list[int]) -> None:
        if a == n:
            out.append(tuple(picks))
            return
        avail = legal[a] & ~forb[a]
        for p in range(P):
            if not (avail >> p) & 1:
                continue
            m = excl[a][p]
            if any((m[j] >> picks[j]) & 1 for j in range(a)):
                continue
            picks[a] = p
            rec(a + 1, [f | x for f, x in zip(forb, m)])

    rec(0, [0] * n)
    return np.array(out, dtype=np.uint8).reshape(len(out), n)


def _matrices(codes: np.ndarray, n: int) -> np.ndarray:
    pr = T.pairs(n)
    N = len(codes)
    G = np.zeros((N, n, n), dtype=np.int64)
    rows = np.arange(N)
    for a in range(n):
        G[rows, a, pr[codes[:, a], 0]] = 1
        G[rows, a, pr[codes[:, a], 1]] = 1
    return G


def _batched_rank(G: np.ndarray) -> np.ndarray:
    """Exact rank of each integer matrix by fraction-free elimination."""
    A = G.copy()
    N, n, _ = A.shape
    prev = np.ones(N, dtype=np.int64)
    r = np.zeros(N, dtype=np.int64)
    idx_n = np.arange(n)
    for col in range(n):
        cand = (A[:, :, col] != 0) & (idx_n[None, :] >= r[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = np.nonzero(has)[0]
        piv = cand[sel].argmax(axis=1)
        ri = r[sel]
        top = A[sel, ri].copy()
        A[sel, ri] = A[sel, piv]
        A[sel, piv] = top
        Ak = A[sel]
        pivrow = Ak[np.arange(len(sel)), ri]
        pv = pivrow[:, col]
        new = (pv[:, None, None] * Ak - Ak[:, :, col][:, :, None] * pivrow[:, None, :]) // prev[sel][
            :, None, None
        ]
        below = idx_n[None, :] > ri[:, None]
        A[sel] = np.where(below[:, :, None], new, Ak)
        prev[sel] = pv
        r[sel] += 1
    return r


def invariant_table(codes: np.ndarray, n: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64).reshape(-1, n)
    N = len(codes)
    out = np.zeros((N, T.n_columns(n)), dtype=np.int64)
    if N == 0:
        return out
    G = _matrices(codes, n)

    M = G
    for k in range(2, n + 1):
        M = M @ G
        out[:, T.COL_TRACE0 + k - 2] = np.einsum("kii->k", M)

    s = np.sort(codes, axis=1)
    out[:, T.COL_REMOVED] = 1 + (np.diff(s, axis=1) != 0).sum(axis=1)
    out[:, T.COL_RANK] = _batched_rank(G)

    R = (G + np.eye(n, dtype=np.int64)[None] > 0).astype(np.int64)
    for _ in range(n.bit_length()):
        R = ((R @ R) > 0).astype(np.int64)
    full = R.astype(bool)
    out[:, T.COL_IRREDUCIBLE] = full.all(axis=(1, 2))
    out[:, T.COL_BLOCK] = full.all(axis=1).sum(axis=1)

    H = G * G.transpose(0, 2, 1)
    deg = H.sum(axis=2)
    out[:, T.COL_ISOLATED] = (deg == 0).sum(axis=1)
    out[:, T.COL_END] = (deg == 1).sum(axis=1)
    out[:, T.COL_INTERIOR] = (deg == 2).sum(axis=1)

    # connected components of the mutual-selection graph by min-label propagation
    labels = np.broadcast_to(np.arange(n), (N, n)).copy()
    big = n + 1
    for _ in range(n):
        nb = np.where(H > 0, labels[:, None, :], big).min(axis=2)
        labels = np.minimum(labels, nb)
    onehot = labels[:, :, None] == np.arange(n)[None, None, :]
    size = onehot.sum(axis=1)
    edges = (onehot * deg[:, :, None]).sum(axis=1) // 2
    cyc = (edges == size) & (size >= 3)
    vals = np.where(size > 0, 2 * size + cyc, 0)
    vals = -np.sort(-vals, axis=1)
    code = np.zeros(N, dtype=np.int64)
    for c in range(n):
        v = vals[:, c]
        code = np.where(v > 0, code * 32 + v, code)
    out[:, T.COL_TYPE] = code
    return out


_PERM_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _orbit_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _PERM_CACHE:
        perms = np.array(list(permutations(range(n))), dtype=np.int64)
        pr = T.pairs(n)
        pid = T.pair_id(n)
        pairmap = pid[perms[:, pr[:, 0]], perms[:, pr[:, 1]]]
        _PERM_CACHE[n] = (perms, pairmap)
    return _PERM_CACHE[n]


def canonical_codes(codes: np.ndarray, n: int) -> np.ndarray:
    """Lexicographically least relabeling of every row.

    Each distinct orbit is expanded once over the full symmetric group and
    all its members are memoized, so the cost scales with the number of
    classes rather than the number of rows.
    """
    codes = np.asarray(codes, dtype=np.int64).reshape(-1, n)
    perms, pairmap = _orbit_tables(n)
    P = len(T.pairs(n))
    weights = P ** np.arange(n - 1, -1, -1, dtype=np.int64)
    keys = codes @ weights
    memo: dict[int, int] = {}
    out = np.empty_like(codes)
    rows = np.arange(len(perms))[:, None]
    for i, key in enumerate(keys.tolist()):
        canon = memo.get(key)
        if canon is None:
            img = np.empty((len(perms), n), dtype=np.int64)
            img[rows, perms] = pairmap[:, codes[i]]
            orbit = img @ weights
            canon = int(orbit.min())
            memo.update(dict.fromkeys(orbit.tolist(), canon))
        out[i] = _digits(canon, P, n)
    return out.astype(np.uint8)


def _digits(key: int, base: int, n: int) -> list[int]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        key, out[i] = divmod(key, base)
    return out
