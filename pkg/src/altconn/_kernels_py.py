"""Pure-Python kernels. Reference semantics for the compiled twin in _kernels.pyx.

Both implementations must return bit-identical results; tests compare them.
"""

import numpy as np

INF = 1 << 62


def hopcroft_karp(na, nb, indptr, indices, match_a=None):
    """Maximum bipartite matching on a CSR graph (rows = A side).

    Phases alternate a BFS layering from the free A vertices with iterative
    DFS augmentation. Free A vertices and neighbours are scanned in ascending
    index order, so the result is deterministic. ``match_a`` (A -> B index or
    -1) may carry a valid warm-start matching; B vertices matched by it stay
    matched.
    """
    ptr = [int(x) for x in indptr]
    idx = [int(x) for x in indices]
    if match_a is None:
        ma = [-1] * na
    else:
        ma = [int(x) for x in match_a]
    mb = [-1] * nb
    for a in range(na):
        if ma[a] >= 0:
            mb[ma[a]] = a
    dist = [0] * na

    while True:
        queue = []
        for a in range(na):
            if ma[a] < 0:
                dist[a] = 0
                queue.append(a)
            else:
                dist[a] = INF
        dist_free = INF
        head = 0
        while head < len(queue):
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
                    queue.append(a2)
        if dist_free == INF:
            break

        it = ptr[:-1]
        augmented = 0
        for a0 in range(na):
            if ma[a0] >= 0:
                continue
            stack = [a0]
            while stack:
                a = stack[-1]
                if it[a] == ptr[a + 1]:
                    dist[a] = INF
                    stack.pop()
                    continue
                b = idx[it[a]]
                it[a] += 1
                a2 = mb[b]
                if a2 < 0:
                    if dist[a] + 1 == dist_free:
                        for s in stack:
                            bs = idx[it[s] - 1]
                            ma[s] = bs
                            mb[bs] = s
                        augmented += 1
                        break
                elif dist[a2] == dist[a] + 1:
                    stack.append(a2)
        if augmented == 0:
            break
    return np.array(ma, dtype=np.int64)


def bfs_eccentricity(n, indptr, indices):
    """Eccentricity of every vertex; -1 where some vertex is unreachable."""
    ptr = [int(x) for x in indptr]
    idx = [int(x) for x in indices]
    ecc = [0] * n
    dist = [-1] * n
    for s in range(n):
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        queue = [s]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            dx = dist[x] + 1
            for j in range(ptr[x], ptr[x + 1]):
                y = idx[j]
                if dist[y] < 0:
                    dist[y] = dx
                    queue.append(y)
        ecc[s] = dist[queue[-1]] if len(queue) == n else -1
    return np.array(ecc, dtype=np.int64)
