# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same semantics as altconn._kernels_py."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64

cdef i64 INF = 1LL << 62


def hopcroft_karp(Py_ssize_t na, Py_ssize_t nb, indptr, indices, match_a=None):
    cdef const i64[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const i64[::1] idx = np.ascontiguousarray(indices, dtype=np.int64)
    out = np.full(na, -1, dtype=np.int64)
    if match_a is not None:
        out[:] = match_a
    cdef i64[::1] ma = out
    cdef i64[::1] mb = np.full(nb, -1, dtype=np.int64)
    cdef i64[::1] dist = np.zeros(na, dtype=np.int64)
    cdef i64[::1] queue = np.zeros(na + 1, dtype=np.int64)
    cdef i64[::1] it = np.zeros(na + 1, dtype=np.int64)
    cdef i64[::1] stack = np.zeros(na + 1, dtype=np.int64)
    cdef Py_ssize_t a, a0, a2, b, j, s, head, tail, top, augmented, bs
    cdef i64 dist_free

    for a in range(na):
        if ma[a] >= 0:
            mb[ma[a]] = a

    while True:
        tail = 0
        for a in range(na):
            if ma[a] < 0:
                dist[a] = 0
                queue[tail] = a
                tail += 1
            else:
                dist[a] = INF
        dist_free = INF
        head = 0
        while head < tail:
            a = queue[head]
            head += 1
            if dist[a] >= dist_free:
                continue
            for j in range(ptr[a], ptr[a + 1]):
                a2 = mb[idx[j]]
                if a2 < 0:
                    if dist_free == INF:
                        dist_free = dist[a] + 1
                elif dist[a2] == INF:
                    dist[a2] = dist[a] + 1
                    queue[tail] = a2
                    tail += 1
        if dist_free == INF:
            break

        for a in range(na):
            it[a] = ptr[a]
        augmented = 0
        for a0 in range(na):
            if ma[a0] >= 0:
                continue
            top = 0
            stack[0] = a0
            while top >= 0:
                a = stack[top]
                if it[a] == ptr[a + 1]:
                    dist[a] = INF
                    top -= 1
                    continue
                b = idx[it[a]]
                it[a] += 1
                a2 = mb[b]
                if a2 < 0:
                    if dist[a] + 1 == dist_free:
                        for j in range(top + 1):
                            s = stack[j]
                            bs = idx[it[s] - 1]
                            ma[s] = bs
                            mb[bs] = s
                        augmented += 1
                        break
                elif dist[a2] == dist[a] + 1:
                    top += 1
                    stack[top] = a2
        if augmented == 0:
            break
    return out


def bfs_eccentricity(Py_ssize_t n, indptr, indices):
    cdef const i64[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const i64[::1] idx = np.ascontiguousarray(indices, dtype=np.int64)
    out = np.zeros(n, dtype=np.int64)
    cdef i64[::1] ecc = out
    cdef i64[::1] dist = np.zeros(n, dtype=np.int64)
    cdef i64[::1] queue = np.zeros(n + 1, dtype=np.int64)
    cdef Py_ssize_t s, i, x, y, j, head, tail
    cdef i64 dx
    for s in range(n):
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            x = queue[head]
            head += 1
            dx = dist[x] + 1
            for j in range(ptr[x], ptr[x + 1]):
                y = idx[j]
                if dist[y] < 0:
                    dist[y] = dx
                    queue[tail] = y
                    tail += 1
        ecc[s] = dist[queue[tail - 1]] if tail == n else -1
    return out
