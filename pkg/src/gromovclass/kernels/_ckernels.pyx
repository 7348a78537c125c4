# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: allowable enumeration, invariant rows, canonical forms."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint8_t, uint32_t, int64_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy

from . import _tables as T

cnp.import_array()

NAME = "cython"

cdef enum:
    MAXN = 8


cdef extern from *:
    int __builtin_ctz(unsigned int) nogil


cdef struct EnumState:
    int n
    int P
    const uint32_t* excl
    uint32_t legal[MAXN]
    uint8_t picks[MAXN]
    uint8_t* out
    Py_ssize_t count
    Py_ssize_t cap


cdef int _enum(EnumState* st, int a, uint32_t* forb) noexcept nogil:
    cdef uint32_t avail, nf[MAXN]
    cdef const uint32_t* m
    cdef int p, j, ok, n = st.n
    cdef uint8_t* grown
    if a == n:
        if st.count == st.cap:
            grown = <uint8_t*> realloc(st.out, 2 * st.cap * n)
            if grown == NULL:
                return -1
            st.out = grown
            st.cap *= 2
        memcpy(st.out + st.count * n, st.picks, n)
        st.count += 1
        return 0
    avail = st.legal[a] & ~forb[a]
    while avail:
        p = __builtin_ctz(avail)
        avail &= avail - 1
        m = st.excl + (a * st.P + p) * n
        ok = 1
        for j in range(a):
            if (m[j] >> st.picks[j]) & 1:
                ok = 0
                break
        if not ok:
            continue
        st.picks[a] = <uint8_t> p
        for j in range(n):
            nf[j] = forb[j] | m[j]
        if _enum(st, a + 1, nf) < 0:
            return -1
    return 0


def enumerate_codes(int n, allowed=None):
    """All allowable structures as rows of pair indices, lexicographic order."""
    cdef cnp.ndarray[uint32_t, ndim=3, mode="c"] excl = np.ascontiguousarray(T.exclusion_masks(n))
    legal = T.legal_picks(n)
    if allowed is not None:
        legal = legal & np.asarray(allowed, dtype=np.uint32)
    cdef EnumState st
    cdef uint32_t forb[MAXN]
    cdef int i, rc
    st.n = n
    st.P = len(T.pairs(n))
    st.excl = &excl[0, 0, 0]
    for i in range(n):
        st.legal[i] = int(legal[i])
        forb[i] = 0
    st.cap = 1024
    st.count = 0
    st.out = <uint8_t*> malloc(st.cap * n)
    if st.out == NULL:
        raise MemoryError()
    with nogil:
        rc = _enum(&st, 0, forb)
    try:
        if rc < 0:
            raise MemoryError()
        result = np.empty((st.count, n), dtype=np.uint8)
        if st.count:
            memcpy(cnp.PyArray_DATA(result), st.out, st.count * n)
        return result
    finally:
        free(st.out)


cdef void _invariants(const uint8_t* code, int n, const int64_t* pr, int64_t* row) noexcept nogil:
    cdef int64_t G[MAXN][MAXN]
    cdef int64_t M[MAXN][MAXN]
    cdef int64_t W[MAXN][MAXN]
    cdef int64_t A[MAXN][MAXN]
    cdef int64_t R[MAXN][MAXN]
    cdef int64_t tmp, pv, prev
    cdef int i, j, k, kk, col, r, piv, deg[MAXN], seen, comp, size, edges, cnt
    cdef int stack[MAXN], top, v, vals[MAXN], nvals, allrow
    cdef int label[MAXN]
    cdef int64_t tcode

    for i in range(n):
        for j in range(n):
            G[i][j] = 0
        G[i][pr[2 * code[i]]] = 1
        G[i][pr[2 * code[i] + 1]] = 1

    # trace powers
    for i in range(n):
        for j in range(n):
            M[i][j] = G[i][j]
    for k in range(2, n + 1):
        for i in range(n):
            for j in range(n):
                tmp = 0
                for kk in range(n):
                    tmp += M[i][kk] * G[kk][j]
                W[i][j] = tmp
        tmp = 0
        for i in range(n):
            for j in range(n):
                M[i][j] = W[i][j]
            tmp += M[i][i]
        row[8 + k - 2] = tmp

    # distinct picks
    cnt = 0
    for i in range(n):
        seen = 0
        for j in range(i):
            if code[j] == code[i]:
                seen = 1
                break
        if not seen:
            cnt += 1
    row[0] = cnt

    # rank by fraction-free elimination
    for i in range(n):
        for j in range(n):
            A[i][j] = G[i][j]
    r = 0
    prev = 1
    for col in range(n):
        piv = -1
        for i in range(r, n):
            if A[i][col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                tmp = A[r][j]
                A[r][j] = A[piv][j]
                A[piv][j] = tmp
        pv = A[r][col]
        for i in range(r + 1, n):
            tmp = A[i][col]
            for j in range(n):
                A[i][j] = (pv * A[i][j] - tmp * A[r][j]) // prev
        prev = pv
        r += 1
    row[1] = r

    # reachability closure of I + G
    for i in range(n):
        for j in range(n):
            R[i][j] = 1 if (i == j or G[i][j]) else 0
    for kk in range(n):
        for i in range(n):
            if R[i][kk]:
                for j in range(n):
                    if R[kk][j]:
                        R[i][j] = 1
    allrow = 1
    cnt = 0
    for j in range(n):
        seen = 1
        for i in range(n):
            if not R[i][j]:
                seen = 0
                allrow = 0
        cnt += seen
    row[2] = allrow
    row[3] = cnt

    # mutual-selection graph: roles and components
    for i in range(n):
        deg[i] = 0
        for j in range(n):
            if G[i][j] and G[j][i]:
                deg[i] += 1
    row[4] = 0
    row[5] = 0
    row[6] = 0
    for i in range(n):
        row[4 + deg[i]] += 1
    for i in range(n):
        label[i] = -1
    nvals = 0
    for i in range(n):
        if label[i] >= 0:
            continue
        size = 0
        edges = 0
        top = 0
        stack[top] = i
        top += 1
        label[i] = i
        while top:
            top -= 1
            v = stack[top]
            size += 1
            edges += deg[v]
            for j in range(n):
                if G[v][j] and G[j][v] and label[j] < 0:
                    label[j] = i
                    stack[top] = j
                    top += 1
        edges //= 2
        vals[nvals] = 2 * size + (1 if (edges == size and size >= 3) else 0)
        nvals += 1
    # insertion sort, descending
    for i in range(1, nvals):
        v = vals[i]
        j = i - 1
        while j >= 0 and vals[j] < v:
            vals[j + 1] = vals[j]
            j -= 1
        vals[j + 1] = v
    tcode = 0
    for i in range(nvals):
        tcode = tcode * 32 + vals[i]
    row[7] = tcode


def invariant_table(codes, int n):
    cdef cnp.ndarray[uint8_t, ndim=2, mode="c"] c = np.ascontiguousarray(codes, dtype=np.uint8).reshape(-1, n)
    cdef Py_ssize_t N = c.shape[0], i
    cdef int K = T.n_columns(n)
    cdef cnp.ndarray[int64_t, ndim=2, mode="c"] out = np.zeros((N, K), dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2, mode="c"] pr = np.ascontiguousarray(T.pairs(n), dtype=np.int64)
    if N == 0:
        return out
    with nogil:
        for i in range(N):
            _invariants(&c[i, 0], n, &pr[0, 0], &out[i, 0])
    return out


cdef struct CanonState:
    int n
    int b[MAXN]
    int c[MAXN]
    int pid[MAXN][MAXN]
    int label[MAXN]
    int node_of[MAXN]
    int cur[MAXN]
    int best[MAXN]
    int best_label[MAXN]
    int have_best


cdef int _canon(CanonState* st, int q, int nlab, int equal) noexcept nogil:
    """Branch over labelings that give unlabeled picks the smallest free labels.

    ``equal`` is 1 while the current prefix equals the best one found so far.
    Returns 1 when the best form was replaced somewhere below.
    """
    cdef int n = st.n, v, a, x, y, tok, updated = 0, r, i
    if q == n:
        if not st.have_best or not equal:
            for i in range(n):
                st.best[i] = st.cur[i]
                st.best_label[i] = st.label[i]
            st.have_best = 1
            return 1
        return 0
    if q == nlab:
        for v in range(n):
            if st.label[v] < 0:
                st.label[v] = q
                st.node_of[q] = v
                r = _canon(st, q, nlab + 1, equal)
                st.label[v] = -1
                if r:
                    updated = 1
                    equal = 1
        return updated
    a = st.node_of[q]
    x = st.label[st.b[a]]
    y = st.label[st.c[a]]
    if x >= 0 and y >= 0:
        tok = st.pid[x][y]
        return _step(st, q, nlab, equal, tok, -1, -1)
    if x >= 0:
        return _step(st, q, nlab, equal, st.pid[x][nlab], st.c[a], -1)
    if y >= 0:
        return _step(st, q, nlab, equal, st.pid[y][nlab], st.b[a], -1)
    tok = st.pid[nlab][nlab + 1]
    r = _step(st, q, nlab, equal, tok, st.b[a], st.c[a])
    if r:
        updated = 1
        equal = 1
    r = _step(st, q, nlab, equal, tok, st.c[a], st.b[a])
    if r:
        updated = 1
    return updated


cdef int _step(CanonState* st, int q, int nlab, int equal, int tok, int u1, int u2) noexcept nogil:
    cdef int r, m = nlab
    if st.have_best and equal:
        if tok > st.best[q]:
            return 0
        if tok < st.best[q]:
            equal = 0
    st.cur[q] = tok
    if u1 >= 0:
        st.label[u1] = m
        st.node_of[m] = u1
        m += 1
    if u2 >= 0:
        st.label[u2] = m
        st.node_of[m] = u2
        m += 1
    r = _canon(st, q + 1, m, equal)
    if u2 >= 0:
        st.label[u2] = -1
    if u1 >= 0:
        st.label[u1] = -1
    return r


cdef void _canon_one(CanonState* st, const uint8_t* code, const int64_t* pr, uint8_t* out, int64_t* perm) noexcept nogil:
    cdef int i, n = st.n
    for i in range(n):
        st.b[i] = <int> pr[2 * code[i]]
        st.c[i] = <int> pr[2 * code[i] + 1]
        st.label[i] = -1
    st.have_best = 0
    _canon(st, 0, 0, 1)
    for i in range(n):
        out[i] = <uint8_t> st.best[i]
        if perm != NULL:
            perm[i] = st.best_label[i]


cdef int _prepare(CanonState* st, int n) except -1:
    pid = T.pair_id(n)
    st.n = n
    for i in range(n):
        for j in range(n):
            st.pid[i][j] = int(pid[i, j])
    return 0


def canonical_codes(codes, int n):
    """Lexicographically least relabeling of every row."""
    cdef cnp.ndarray[uint8_t, ndim=2, mode="c"] c = np.ascontiguousarray(codes, dtype=np.uint8).reshape(-1, n)
    cdef Py_ssize_t N = c.shape[0], i
    cdef cnp.ndarray[uint8_t, ndim=2, mode="c"] out = np.empty((N, n), dtype=np.uint8)
    cdef cnp.ndarray[int64_t, ndim=2, mode="c"] pr = np.ascontiguousarray(T.pairs(n), dtype=np.int64)
    cdef CanonState st
    _prepare(&st, n)
    if N == 0:
        return out
    with nogil:
        for i in range(N):
            _canon_one(&st, &c[i, 0], &pr[0, 0], &out[i, 0], NULL)
    return out


def canonical_with_perm(code, int n):
    """Canonical row of one structure plus the 0-based labeling attaining it."""
    cdef cnp.ndarray[uint8_t, ndim=1, mode="c"] c = np.ascontiguousarray(code, dtype=np.uint8)
    cdef cnp.ndarray[uint8_t, ndim=1, mode="c"] out = np.empty(n, dtype=np.uint8)
    cdef cnp.ndarray[int64_t, ndim=1, mode="c"] perm = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2, mode="c"] pr = np.ascontiguousarray(T.pairs(n), dtype=np.int64)
    cdef CanonState st
    _prepare(&st, n)
    _canon_one(&st, &c[0], &pr[0, 0], &out[0], &perm[0])
    return out, perm
