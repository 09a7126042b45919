"""Exact ground truth for small instances.

Brute-force enumeration of alternating paths, exact packing of internally
disjoint paths, exhaustive alternating connectivity over all colorings,
alternating 3-path counting, and the coloring/code correspondence on
complete bipartite hosts. Budgets are hard errors: an oracle never returns a
truncated answer.
"""

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import BudgetError, ParameterError
from .graph_core import ColoredGraph, Graph, _check_vertex, sample_pairs

PATH_BUDGET = 10**7
COLORING_BUDGET = 1 << 24
LAMBDA_ALL_PAIRS_MAX_N = 400
LAMBDA_SAMPLE = 200


def _colored_adj(cg):
    g = cg.graph
    return [list(zip(g.neighbors(v).tolist(), cg.neighbor_colors(v).tolist()))
            for v in range(g.n)]


def enumerate_alt_paths(cg, u, v, ell, budget=PATH_BUDGET, _adj=None):
    """All simple alternating u-v paths with exactly ``ell`` edges, sorted.

    Partial paths are extended one level at a time; every partial path
    created counts against ``budget``.
    """
    u = _check_vertex(cg.graph, u)
    v = _check_vertex(cg.graph, v)
    if u == v:
        raise ParameterError("u and v must differ")
    if ell < 1:
        raise ParameterError(f"ell must be >= 1, got {ell}")
    adj = _adj if _adj is not None else _colored_adj(cg)
    frontier = [((u,), -1)]
    explored = 0
    for _ in range(ell - 1):
        nxt = []
        for path, last in frontier:
            for w, c in adj[path[-1]]:
                if c == last or w == v or w in path:
                    continue
                explored += 1
                if explored > budget:
                    raise BudgetError(f"more than {budget} partial paths explored")
                nxt.append((path + (w,), c))
        frontier = nxt
    into_v = dict(adj[v])
    out = []
    for path, last in frontier:
        c = into_v.get(path[-1], -1)
        if c >= 0 and c != last:
            out.append(path + (v,))
    out.sort()
    return out


def _pack(masks, ell):
    """Maximum number of pairwise disjoint masks (branch and bound)."""
    if not masks:
        return 0, []
    if ell == 1:
        return len(masks), list(range(len(masks)))
    load = {}
    for m in masks:
        for b in _bits(m):
            load[b] = load.get(b, 0) + 1
    # paths through lightly shared vertices first, ties by index
    order = sorted(range(len(masks)),
                   key=lambda i: (sum(load[b] for b in _bits(masks[i])), i))
    # greedy incumbent
    best_set, used = [], 0
    for i in order:
        if not masks[i] & used:
            best_set.append(i)
            used |= masks[i]
    best = [len(best_set), best_set]
    inner = ell - 1

    def bound(cands, used):
        free = len(load) - sum(1 for b in load if used >> b & 1)
        firsts = len({masks[i] & -masks[i] for i in cands})
        return min(len(cands), free // inner, firsts)

    def search(cands, used, chosen):
        if len(chosen) > best[0]:
            best[0], best[1] = len(chosen), list(chosen)
        if not cands or len(chosen) + bound(cands, used) <= best[0]:
            return
        first, rest = cands[0], cands[1:]
        m = masks[first]
        chosen.append(first)
        search([c for c in rest if not masks[c] & m], used | m, chosen)
        chosen.pop()
        search(rest, used, chosen)

    search(order, 0, [])
    return best[0], sorted(best[1])


def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _internal_mask(path):
    m = 0
    for w in path[1:-1]:
        m |= 1 << w
    return m


def max_disjoint_alt_paths_exact(cg, u, v, ell, budget=PATH_BUDGET, _adj=None):
    """Largest family of internally disjoint alternating u-v paths of length ell."""
    paths = enumerate_alt_paths(cg, u, v, ell, budget, _adj)
    return _pack([_internal_mask(p) for p in paths], ell)[0]


def best_disjoint_alt_paths(cg, u, v, ell, budget=PATH_BUDGET):
    """An optimal packing itself, as a list of paths."""
    paths = enumerate_alt_paths(cg, u, v, ell, budget)
    _, chosen = _pack([_internal_mask(p) for p in paths], ell)
    return [paths[i] for i in chosen]


def kappa_exact(g, r, ell, budget=COLORING_BUDGET):
    """max over r-colorings of min over pairs of the exact packing number.

    Permuting colors preserves alternation, so the first edge is fixed to
    color 0 without loss.
    """
    if r < 2:
        raise ParameterError(f"need at least 2 colors, got r={r}")
    if g.n < 2:
        raise ParameterError("need at least two vertices")
    m = g.m
    if r**m > budget:
        raise BudgetError(f"r^|E| = {r}^{m} colorings exceed the budget of {budget}")
    pairs = list(combinations(range(g.n), 2))
    if m == 0:
        return 0
    best = 0
    for tail in product(range(r), repeat=m - 1):
        cg = ColoredGraph(g, r, (0,) + tail)
        adj = _colored_adj(cg)
        worst = math.inf
        for u, v in pairs:
            t = max_disjoint_alt_paths_exact(cg, u, v, ell, _adj=adj)
            worst = min(worst, t)
            if worst <= best:
                break
        best = max(best, worst)
    return best


def _require_two_colors(cg):
    if cg.r != 2:
        raise ParameterError(f"needs exactly 2 colors, got r={cg.r}")


def _red_degrees(cg):
    g = cg.graph
    red = np.zeros(g.n, dtype=np.int64)
    is_red = cg.colors == 0
    np.add.at(red, g.edge_u[is_red], 1)
    np.add.at(red, g.edge_v[is_red], 1)
    return red, g.degrees - red


def alt_p3_walk_sum(cg):
    """Sum over blue edges ij of r_i r_j plus over red edges kl of b_k b_l."""
    _require_two_colors(cg)
    g = cg.graph
    red, blue = _red_degrees(cg)
    eu, ev = g.edge_u, g.edge_v
    is_red = cg.colors == 0
    return int(np.sum(red[eu[~is_red]] * red[ev[~is_red]])
               + np.sum(blue[eu[is_red]] * blue[ev[is_red]]))


def bichromatic_triangles(cg):
    """Number of triangles using both colors."""
    g = cg.graph
    total = 0
    for a, b, c in zip(g.edge_u.tolist(), g.edge_v.tolist(), cg.colors.tolist()):
        common, ia, ib = np.intersect1d(g.neighbors(a), g.neighbors(b),
                                        assume_unique=True, return_indices=True)
        above = common > b
        ca = cg.neighbor_colors(a)[ia][above]
        cb = cg.neighbor_colors(b)[ib][above]
        total += int(np.sum(~((ca == c) & (cb == c))))
    return total


def count_alt_p3_formula(cg):
    """Number of alternating paths with 3 edges, from red/blue degrees.

    The degree sum counts alternating 3-walks by their middle edge; the only
    walks that are not paths close a triangle, and each triangle with both
    colors contributes exactly one of them.
    """
    return alt_p3_walk_sum(cg) - bichromatic_triangles(cg)


def lambda23_upper_bound(d, n):
    """d^3 / (4(n - 1))."""
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    if d < 0:
        raise ParameterError(f"d must be >= 0, got {d}")
    return d**3 / (4 * (n - 1))


def alt_p3_pair_count(cg, u, v):
    """Alternating u-v paths with 3 edges (shared vertices allowed across paths)."""
    _require_two_colors(cg)
    g = cg.graph
    u = _check_vertex(g, u)
    v = _check_vertex(g, v)
    if u == v:
        raise ParameterError("u and v must differ")
    total = 0
    nu, cu = g.neighbors(u), cg.neighbor_colors(u)
    nv, cv = g.neighbors(v), cg.neighbor_colors(v)
    for c in (0, 1):
        mark = np.zeros(g.n, dtype=bool)
        mark[nv[cv == c]] = True
        for x in nu[cu == c].tolist():
            nx = g.neighbors(x)
            total += int(np.sum(mark[nx[cg.neighbor_colors(x) != c]]))
    return total


def alt_p3_pair_matrix(cg):
    """Dense matrix of alternating 3-path counts, (R B R + B R B)[u, v]."""
    _require_two_colors(cg)
    g = cg.graph
    R = np.zeros((g.n, g.n), dtype=np.int64)
    B = np.zeros((g.n, g.n), dtype=np.int64)
    for (a, b), c in zip(g.edges(), cg.colors.tolist()):
        M = R if c == 0 else B
        M[a, b] = M[b, a] = 1
    out = R @ B @ R + B @ R @ B
    np.fill_diagonal(out, 0)
    return out


def lambda_estimate(cg, seed=0):
    """Min over pairs of the alternating 3-path count.

    All pairs when n <= 400, otherwise 200 pairs drawn from ``seed``.
    """
    _require_two_colors(cg)
    n = cg.n
    if n < 2:
        raise ParameterError("need at least two vertices")
    if n <= LAMBDA_ALL_PAIRS_MAX_N:
        mat = alt_p3_pair_matrix(cg)
        iu = np.triu_indices(n, 1)
        return int(mat[iu].min())
    pairs = sample_pairs(n, LAMBDA_SAMPLE, seed, 3)
    return min(alt_p3_pair_count(cg, u, v) for u, v in pairs)


# coding correspondence on K_{m,n}: vertices 0..m-1 form [m], m..m+n-1 form [n]

@dataclass(frozen=True)
class CodeBook:
    m: int
    r: int
    words: tuple

    def __post_init__(self):
        words = tuple(tuple(int(x) for x in w) for w in self.words)
        for w in words:
            if len(w) != self.m:
                raise ParameterError(f"word {w} does not have length {self.m}")
            if any(not 0 <= x < self.r for x in w):
                raise ParameterError(f"word {w} has a symbol outside 0..{self.r - 1}")
        object.__setattr__(self, "words", words)

    @property
    def n(self):
        return len(self.words)


def hamming(x, y):
    if len(x) != len(y):
        raise ParameterError("words must have equal length")
    return sum(a != b for a, b in zip(x, y))


def complete_bipartite(m, n):
    return Graph.from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def code_from_coloring(cg, m):
    """Word of the j-th [n] vertex: the colors of its edges to 0..m-1."""
    g = cg.graph
    n = g.n - m
    if m < 1 or n < 1 or g != complete_bipartite(m, n):
        raise ParameterError(f"host is not the complete bipartite graph K_({m},{n})")
    cmap = cg.color_map()
    return CodeBook(m, cg.r, tuple(tuple(cmap[(i, m + j)] for i in range(m))
                                   for j in range(n)))


def coloring_from_code(cb, n):
    """Coloring of K_(m,n) whose [n] vertices carry the words of ``cb``."""
    if n != cb.n:
        raise ParameterError(f"codebook has {cb.n} words, expected {n}")
    g = complete_bipartite(cb.m, n)
    colors = np.zeros(g.m, dtype=np.int64)
    for j, word in enumerate(cb.words):
        for i, c in enumerate(word):
            colors[g.edge_id(i, cb.m + j)] = c
    return ColoredGraph(g, cb.r, colors)
