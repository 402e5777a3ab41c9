# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``."""

import numpy as np

from libc.stdlib cimport malloc, free


def bfs_distances(const int[::1] indptr, const int[::1] indices, int source):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(max(n, 1), dtype=np.int32)
    cdef int[::1] d = dist
    cdef int[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0, k
    cdef int v, w, dv
    d[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = d[v] + 1
        for k in range(indptr[v], indptr[v + 1]):
            w = indices[k]
            if d[w] < 0:
                d[w] = dv
                queue[tail] = w
                tail += 1
    return dist


def multi_source_bfs(const int[::1] indptr, const int[::1] indices, sources):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int32)
    owner = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(max(n, 1), dtype=np.int32)
    cdef int[::1] d = dist
    cdef int[::1] o = owner
    cdef int[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0, k
    cdef int v, w, dv, pos, s
    for pos, s in enumerate(sources):
        if d[s] < 0:
            d[s] = 0
            o[s] = pos
            queue[tail] = s
            tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = d[v] + 1
        for k in range(indptr[v], indptr[v + 1]):
            w = indices[k]
            if d[w] < 0:
                d[w] = dv
                o[w] = o[v]
                queue[tail] = w
                tail += 1
    return dist, owner


cdef bint _has_edge(const int[::1] indptr, const int[::1] indices, int u, int w):
    cdef Py_ssize_t lo = indptr[u], hi = indptr[u + 1], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if indices[mid] < w:
            lo = mid + 1
        else:
            hi = mid
    return lo < indptr[u + 1] and indices[lo] == w


def is_automorphism(perm, const int[::1] indptr, const int[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    if len(perm) != n:
        return False
    p_arr = np.asarray(perm, dtype=np.int32)
    cdef int[::1] p = p_arr
    seen_arr = np.zeros(max(n, 1), dtype=np.uint8)
    cdef unsigned char[::1] seen = seen_arr
    cdef Py_ssize_t v, k
    cdef int pv
    for v in range(n):
        pv = p[v]
        if pv < 0 or pv >= n or seen[pv]:
            return False
        seen[pv] = 1
    for v in range(n):
        pv = p[v]
        if indptr[v + 1] - indptr[v] != indptr[pv + 1] - indptr[pv]:
            return False
        for k in range(indptr[v], indptr[v + 1]):
            if not _has_edge(indptr, indices, pv, p[indices[k]]):
                return False
    return True


cdef struct _Search:
    int length
    long long growth
    long long delta
    long long best
    long long count
    int *a


cdef void _rec(_Search *st, int i, long long remaining, long long prod, list out):
    cdef long long cap, hi, value
    if i == st.length:
        if remaining == 0:
            st.count += 1
            if st.best < 0 or prod < st.best:
                st.best = prod
                del out[:]
                out.append(tuple([st.a[j] for j in range(st.length)]))
            elif prod == st.best:
                out.append(tuple([st.a[j] for j in range(st.length)]))
        return
    cap = st.delta if i == 0 else st.a[i - 1] * st.growth
    hi = remaining - (st.length - i - 1)
    if cap < hi:
        hi = cap
    value = 1
    while value <= hi:
        st.a[i] = <int>value
        if i >= 2:
            _rec(st, i + 1, remaining - value, prod * (value + 1), out)
        else:
            _rec(st, i + 1, remaining - value, prod, out)
        value += 1


def min_product_search(long long delta, int length, long long total):
    cdef _Search st
    st.length = length
    st.delta = delta
    st.growth = delta - 1
    st.best = -1
    st.count = 0
    st.a = <int *>malloc(max(length, 1) * sizeof(int))
    out = []
    try:
        _rec(&st, 0, total, 1, out)
    finally:
        free(st.a)
    return (None if st.best < 0 else st.best), out, st.count
