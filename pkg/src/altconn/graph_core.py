"""Graph and colored-graph types, seeded generators and small utilities.

Graphs are stored in CSR form (``indptr``/``indices``) with every adjacency
list strictly increasing. Edges are keyed as ``(min(u, v), max(u, v))`` and
enumerated in lexicographic order; that order is the canonical edge id used
by colorings and serialization. Colors are 0-based; with two colors, red is
0 and blue is 1.
"""

import math

import numpy as np

from ._backend import kernels
from .errors import ParameterError
from .rng import make_rng

RED = 0
BLUE = 1

# Below this edge probability, G(n, p) is sampled by geometric skipping.
SKIP_THRESHOLD = 0.05
_CHUNK = 1 << 20


def _readonly(a):
    a.setflags(write=False)
    return a


def _pair_count(n):
    return n * (n - 1) // 2


def _row_offsets(n):
    """Linear index of pair (u, u+1) in the lexicographic pair stream."""
    u = np.arange(n, dtype=np.int64)
    return u * (2 * n - u - 1) // 2


def decode_pairs(n, lin):
    """Map lexicographic pair indices to ``(u, v)`` arrays with ``u < v``."""
    lin = np.asarray(lin, dtype=np.int64)
    offsets = _row_offsets(n)
    u = np.searchsorted(offsets, lin, side="right") - 1
    v = lin - offsets[u] + u + 1
    return u, v


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Immutable once built; all arrays are read-only so instances can be shared
    between workers.
    """

    __slots__ = ("n", "indptr", "indices", "_eu", "_ev", "_edge_at")

    def __init__(self, n, indptr, indices):
        self.n = int(n)
        self.indptr = _readonly(np.asarray(indptr, dtype=np.int64))
        self.indices = _readonly(np.asarray(indices, dtype=np.int64))
        self._eu = None
        self._ev = None
        self._edge_at = None

    @classmethod
    def from_edges(cls, n, edges):
        """Build from an iterable of pairs (any orientation, no duplicates)."""
        if n < 1:
            raise ParameterError(f"n must be >= 1, got {n}")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        u = np.minimum(arr[:, 0], arr[:, 1])
        v = np.maximum(arr[:, 0], arr[:, 1])
        if len(arr) and (u.min() < 0 or v.max() >= n):
            raise ParameterError("edge endpoint out of range")
        if np.any(u == v):
            raise ParameterError("self-loops are not allowed")
        order = np.lexsort((v, u))
        u, v = u[order], v[order]
        if len(u) > 1 and np.any((u[1:] == u[:-1]) & (v[1:] == v[:-1])):
            raise ParameterError("duplicate edge")
        return cls._from_sorted_pairs(n, u, v)

    @classmethod
    def _from_sorted_pairs(cls, n, u, v):
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        eid = np.concatenate([np.arange(len(u)), np.arange(len(u))])
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        g = cls(n, indptr, dst[order])
        g._eu = _readonly(np.asarray(u, dtype=np.int64))
        g._ev = _readonly(np.asarray(v, dtype=np.int64))
        g._edge_at = _readonly(eid[order].astype(np.int64))
        return g

    def _ensure_edges(self):
        if self._eu is None:
            src = np.repeat(np.arange(self.n), np.diff(self.indptr))
            keep = src < self.indices
            self._eu = _readonly(src[keep])
            self._ev = _readonly(self.indices[keep].copy())
            # edge id of each CSR slot
            lin = _row_offsets(self.n)
            lo = np.minimum(src, self.indices)
            hi = np.maximum(src, self.indices)
            key = lin[lo] + hi - lo - 1
            ekey = lin[self._eu] + self._ev - self._eu - 1
            self._edge_at = _readonly(np.searchsorted(ekey, key).astype(np.int64))

    @property
    def m(self):
        return len(self.indices) // 2

    @property
    def edge_u(self):
        self._ensure_edges()
        return self._eu

    @property
    def edge_v(self):
        self._ensure_edges()
        return self._ev

    @property
    def edge_at(self):
        """Edge id (lexicographic rank) of every CSR slot."""
        self._ensure_edges()
        return self._edge_at

    def edges(self):
        return list(zip(self.edge_u.tolist(), self.edge_v.tolist()))

    @property
    def adj(self):
        return [self.neighbors(v).tolist() for v in range(self.n)]

    def neighbors(self, v):
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v):
        return int(self.indptr[v + 1] - self.indptr[v])

    @property
    def degrees(self):
        return np.diff(self.indptr)

    def has_edge(self, u, v):
        return self.edge_id(u, v) >= 0

    def edge_id(self, u, v):
        """Lexicographic edge id of ``{u, v}``, or -1 if absent."""
        if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
            return -1
        lo, hi = self.indptr[u], self.indptr[u + 1]
        j = lo + np.searchsorted(self.indices[lo:hi], v)
        if j < hi and self.indices[j] == v:
            return int(self.edge_at[j])
        return -1

    def density(self):
        """Empirical edge density ``m / C(n, 2)``."""
        pairs = _pair_count(self.n)
        return self.m / pairs if pairs else 0.0

    def check_invariants(self):
        """Raise AssertionError unless the adjacency is a valid simple graph."""
        for v in range(self.n):
            nb = self.neighbors(v)
            assert not np.any(nb == v), f"self-loop at {v}"
            assert np.all(np.diff(nb) > 0), f"adjacency of {v} not strictly increasing"
            for w in nb.tolist():
                assert self.has_edge(w, v), f"asymmetric edge {v}-{w}"

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.n, self.indices.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class BipartiteGraph:
    """Bipartite graph with sides ``A = 0..size_a-1`` and ``B = 0..size_b-1``.

    Rows of the CSR structure are A vertices; each row is a strictly increasing
    list of B indices.
    """

    __slots__ = ("size_a", "size_b", "indptr", "indices")

    def __init__(self, size_a, size_b, indptr, indices):
        self.size_a = int(size_a)
        self.size_b = int(size_b)
        self.indptr = _readonly(np.asarray(indptr, dtype=np.int64))
        self.indices = _readonly(np.asarray(indices, dtype=np.int64))

    @classmethod
    def from_lists(cls, size_a, size_b, edges):
        """``edges[a]`` is an iterable of B indices adjacent to A vertex ``a``."""
        if len(edges) != size_a:
            raise ParameterError("need one adjacency list per A vertex")
        rows = [sorted(set(int(b) for b in row)) for row in edges]
        for row in rows:
            if row and (row[0] < 0 or row[-1] >= size_b):
                raise ParameterError("B index out of range")
        indptr = np.zeros(size_a + 1, dtype=np.int64)
        np.cumsum([len(r) for r in rows], out=indptr[1:])
        flat = [b for r in rows for b in r]
        return cls(size_a, size_b, indptr, np.array(flat, dtype=np.int64))

    @classmethod
    def from_pairs(cls, size_a, size_b, pairs):
        rows = [[] for _ in range(size_a)]
        for a, b in pairs:
            rows[a].append(b)
        return cls.from_lists(size_a, size_b, rows)

    @property
    def edges(self):
        return [self.row(a).tolist() for a in range(self.size_a)]

    def row(self, a):
        return self.indices[self.indptr[a]:self.indptr[a + 1]]

    @property
    def m(self):
        return len(self.indices)

    def has_edge(self, a, b):
        row = self.row(a)
        j = np.searchsorted(row, b)
        return bool(j < len(row) and row[j] == b)

    def __repr__(self):
        return f"BipartiteGraph(size_a={self.size_a}, size_b={self.size_b}, m={self.m})"


class ColoredGraph:
    """A graph with a total edge coloring into ``r`` colors.

    ``colors[e]`` is the color of edge id ``e`` (lexicographic order);
    ``slot_colors`` mirrors it onto the CSR slots for fast neighbourhood
    filtering.
    """

    __slots__ = ("graph", "r", "colors", "slot_colors")

    def __init__(self, graph, r, colors):
        if r < 2:
            raise ParameterError(f"need at least 2 colors, got r={r}")
        colors = np.asarray(colors, dtype=np.int64)
        if colors.shape != (graph.m,):
            raise ParameterError(f"expected {graph.m} edge colors, got {colors.shape}")
        if len(colors) and (colors.min() < 0 or colors.max() >= r):
            raise ParameterError("color index out of range")
        self.graph = graph
        self.r = int(r)
        self.colors = _readonly(colors)
        self.slot_colors = _readonly(colors[graph.edge_at])

    @property
    def n(self):
        return self.graph.n

    def edge_color(self, u, v):
        """Color of edge ``{u, v}``, or -1 if it is not an edge."""
        e = self.graph.edge_id(u, v)
        return int(self.colors[e]) if e >= 0 else -1

    def color_map(self):
        return {(u, v): int(c) for (u, v), c in zip(self.graph.edges(), self.colors.tolist())}

    def neighbor_colors(self, v):
        g = self.graph
        return self.slot_colors[g.indptr[v]:g.indptr[v + 1]]

    def __eq__(self, other):
        return (isinstance(other, ColoredGraph) and self.r == other.r
                and self.graph == other.graph
                and np.array_equal(self.colors, other.colors))

    def __hash__(self):
        return hash((hash(self.graph), self.r, self.colors.tobytes()))

    def __repr__(self):
        return f"ColoredGraph(n={self.n}, m={self.graph.m}, r={self.r})"


def _check_prob(p, name="p"):
    if not (isinstance(p, (int, float, np.floating)) and 0.0 <= p <= 1.0):
        raise ParameterError(f"{name} must lie in [0, 1], got {p!r}")
    return float(p)


def _sample_pair_stream(rng, total, p):
    """Indices of the successes among ``total`` Bernoulli(p) trials, ascending."""
    if p == 0.0 or total == 0:
        return np.zeros(0, dtype=np.int64)
    if p <= SKIP_THRESHOLD:
        # geometric skipping: gaps between successes are Geometric(p)
        chunks = []
        pos = -1
        while True:
            gaps = rng.geometric(p, size=_CHUNK)
            hits = pos + np.cumsum(gaps, dtype=np.int64)
            inside = hits[hits < total]
            chunks.append(inside)
            if len(inside) < _CHUNK:
                break
            pos = int(hits[-1])
        return np.concatenate(chunks)
    chunks = []
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        draw = rng.random(stop - start)
        chunks.append(start + np.flatnonzero(draw < p))
    return np.concatenate(chunks).astype(np.int64)


def gnp_generate(n, p, seed):
    """Sample G(n, p); each of the C(n, 2) pairs is an edge independently."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    p = _check_prob(p)
    rng = make_rng(seed)
    lin = _sample_pair_stream(rng, _pair_count(n), p)
    u, v = decode_pairs(n, lin)
    return Graph._from_sorted_pairs(n, u, v)


def bipartite_gnp(size_a, size_b, q, seed):
    """Sample G(size_a, size_b, q) as a :class:`BipartiteGraph`."""
    if size_a < 1 or size_b < 1:
        raise ParameterError("side sizes must be >= 1")
    q = _check_prob(q, "q")
    rng = make_rng(seed)
    lin = _sample_pair_stream(rng, size_a * size_b, q)
    a = lin // size_b
    indptr = np.zeros(size_a + 1, dtype=np.int64)
    np.cumsum(np.bincount(a, minlength=size_a), out=indptr[1:])
    return BipartiteGraph(size_a, size_b, indptr, lin % size_b)


def color_uniform(g, r, seed):
    """Color every edge independently and uniformly from ``r`` colors."""
    if r < 2:
        raise ParameterError(f"need at least 2 colors, got r={r}")
    rng = make_rng(seed)
    return ColoredGraph(g, r, rng.integers(0, r, size=g.m, dtype=np.int64))


def _check_vertex(g, v):
    if not (isinstance(v, (int, np.integer)) and 0 <= v < g.n):
        raise ParameterError(f"vertex {v!r} out of range for n={g.n}")
    return int(v)


def _check_color(cg, i):
    if not (isinstance(i, (int, np.integer)) and 0 <= i < cg.r):
        raise ParameterError(f"color {i!r} out of range for r={cg.r}")
    return int(i)


def colored_neighborhood(cg, v, i):
    """N_i(v): neighbours joined to ``v`` by an edge of color ``i``."""
    v = _check_vertex(cg.graph, v)
    i = _check_color(cg, i)
    return set(cg.graph.neighbors(v)[cg.neighbor_colors(v) == i].tolist())


def _pair_colors(cg, u, v):
    """Common neighbours of u, v with the colors of their edges to u and v."""
    g = cg.graph
    common, iu, iv = np.intersect1d(g.neighbors(u), g.neighbors(v),
                                    assume_unique=True, return_indices=True)
    return common, cg.neighbor_colors(u)[iu], cg.neighbor_colors(v)[iv]


def pair_colored_neighborhood(cg, u, v, i, j):
    """N_ij(u, v): vertices w with c(uw) = i and c(vw) = j."""
    u = _check_vertex(cg.graph, u)
    v = _check_vertex(cg.graph, v)
    if u == v:
        raise ParameterError("u and v must differ")
    i = _check_color(cg, i)
    j = _check_color(cg, j)
    common, cu, cv = _pair_colors(cg, u, v)
    return set(common[(cu == i) & (cv == j)].tolist())


def codegree(g, u, v):
    """|N(u) ∩ N(v)|."""
    u = _check_vertex(g, u)
    v = _check_vertex(g, v)
    if u == v:
        raise ParameterError("u and v must differ")
    return len(np.intersect1d(g.neighbors(u), g.neighbors(v), assume_unique=True))


def diameter(g):
    """Largest BFS distance over all pairs; ``math.inf`` if disconnected."""
    if g.n == 1:
        return 0
    ecc = kernels.bfs_eccentricity(g.n, g.indptr, g.indices)
    if np.any(ecc < 0):
        return math.inf
    return int(ecc.max())


def _check_chernoff(mu, delta):
    if not mu > 0:
        raise ParameterError(f"mu must be positive, got {mu!r}")
    if not 0 < delta < 1:
        raise ParameterError(f"delta must lie in (0, 1), got {delta!r}")


def chernoff_upper(mu, delta):
    """Bound on P(X >= (1 + delta) mu) for a binomial X with mean mu."""
    _check_chernoff(mu, delta)
    return math.exp(-mu * delta**2 / 3)


def chernoff_lower(mu, delta):
    """Bound on P(X <= (1 - delta) mu) for a binomial X with mean mu."""
    _check_chernoff(mu, delta)
    return math.exp(-mu * delta**2 / 2)


ALL_PAIRS_LIMIT = 10_000


def sample_pairs(n, count, seed, *keys):
    """Distinct unordered pairs ``(u, v)``, ``u < v``, in ascending order.

    Every pair is returned when C(n, 2) <= ALL_PAIRS_LIMIT; otherwise ``count``
    pairs are drawn without replacement from the substream ``(seed, *keys)``.
    """
    total = _pair_count(n)
    if total <= ALL_PAIRS_LIMIT or count >= total:
        lin = np.arange(total, dtype=np.int64)
    else:
        if count < 1:
            raise ParameterError(f"pair count must be >= 1, got {count}")
        rng = make_rng(seed, *keys)
        lin = np.sort(rng.choice(total, size=count, replace=False))
    u, v = decode_pairs(n, lin)
    return list(zip(u.tolist(), v.tolist()))
