"""Tree-growing construction of alternating paths for sparse graphs.

Four families of vertex-disjoint trees are grown: X and X' rooted at the red
and blue neighbours of u, Y and Y' at those of v. Each level hangs a star of
``d`` fresh vertices (a d-matching) under every current leaf, alternating
colors. The leaves of each tree form one partition class; an auxiliary
bipartite graph on the classes (an edge when some suitably colored edge joins
two classes) is matched, and every matched class pair yields one path, routed
through the unique tree ancestry on both sides. Relay levels extend leaves by
one vertex each when the requested length exceeds what the trees provide; if
no Y side is needed, X classes are joined straight to v.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ParameterError
from ..graph_core import BipartiteGraph, _check_vertex
from ..matching import floor_star_size, induced_bipartite, max_matching, star_matching_partial
from .system import PathSystem


def contract_bipartite(cg, parts_a, parts_b, color):
    """Auxiliary bipartite graph on partition classes.

    Class ``i`` of ``parts_a`` and class ``j`` of ``parts_b`` are adjacent
    when some edge of ``color`` joins them. Returns the BipartiteGraph and a
    dict mapping each auxiliary edge ``(i, j)`` to its lexicographically
    smallest witness edge ``(x, y)`` with ``x`` in class i, ``y`` in class j.
    """
    g = cg.graph
    part_a = np.full(g.n, -1, dtype=np.int64)
    part_b = np.full(g.n, -1, dtype=np.int64)
    for label, parts in ((part_a, parts_a), (part_b, parts_b)):
        for i, part in enumerate(parts):
            part = np.asarray(list(part), dtype=np.int64)
            if np.any(part_a[part] >= 0) or np.any(part_b[part] >= 0) \
                    or len(np.unique(part)) != len(part):
                raise ParameterError("partition classes must be pairwise disjoint")
            label[part] = i
    xs = np.flatnonzero(part_a >= 0)
    starts = g.indptr[xs]
    lengths = g.indptr[xs + 1] - starts
    offs = np.zeros(len(xs) + 1, dtype=np.int64)
    np.cumsum(lengths, out=offs[1:])
    slots = np.arange(offs[-1], dtype=np.int64) - np.repeat(offs[:-1], lengths) \
        + np.repeat(starts, lengths)
    x_of = np.repeat(xs, lengths)
    y_of = g.indices[slots]
    keep = (part_b[y_of] >= 0) & (cg.slot_colors[slots] == color)
    x_of, y_of = x_of[keep], y_of[keep]
    pi, pj = part_a[x_of], part_b[y_of]
    key = pi * max(len(parts_b), 1) + pj
    uniq, first = np.unique(key, return_index=True)
    witnesses = {}
    rows = [[] for _ in parts_a]
    for e in first.tolist():
        i, j = int(pi[e]), int(pj[e])
        witnesses[(i, j)] = (int(x_of[e]), int(y_of[e]))
        rows[i].append(j)
    return BipartiteGraph.from_lists(len(parts_a), len(parts_b), rows), witnesses


@dataclass
class _Family:
    root_end: int            # u or v
    start: int               # color of the edge at root_end
    levels: list = field(default_factory=list)
    parent: dict = field(default_factory=dict)

    def color_into(self, depth):
        """Color of the edge entering level ``depth`` (1-based)."""
        return (self.start + depth - 1) % 2

    def chain(self, leaf):
        """Vertices from the root neighbour down to ``leaf``."""
        out = [leaf]
        while out[-1] in self.parent:
            out.append(self.parent[out[-1]])
        return out[::-1]

    def classes(self):
        """Final leaves grouped by their level-1 ancestor, in root order."""
        groups = {}
        for leaf in self.levels[-1].tolist():
            groups.setdefault(self.chain(leaf)[0], []).append(leaf)
        return [groups[r] for r in sorted(groups)]


def star_size(n, p_hat, k):
    """Star size d: 1/(6p) in the k = 2 window np <= sqrt(n log n), else np/8."""
    np_hat = n * p_hat
    if k == 2 and np_hat <= math.sqrt(n * math.log(n)):
        return floor_star_size(1 / (6 * p_hat))
    return floor_star_size(np_hat / 8)


def level_shape(ell, k):
    """Return (tree levels on u's side, tree levels on v's side, relay levels)."""
    if ell == k:
        return k - 1, 0, 0
    if ell == k + 1:
        return math.ceil(k / 2), k // 2, 0
    if k == 2:
        return 2, 1, ell - 4
    return math.ceil(k / 2), k // 2 + 1, ell - k - 2


def _grow(cg, fam, used, d, color, prefer=None):
    centers = fam.levels[-1]
    if len(centers) == 0:
        fam.levels.append(centers)
        return
    pool = np.flatnonzero(~used)
    bg = induced_bipartite(cg, centers, pool, color)
    pref = prefer[pool] if prefer is not None else None
    leaves = star_matching_partial(bg.indptr, bg.indices, bg.size_a, bg.size_b, d, pref)
    new = []
    for c, row in zip(centers.tolist(), leaves):
        for b in row:
            w = int(pool[b])
            fam.parent[w] = c
            new.append(w)
    new = np.array(sorted(new), dtype=np.int64)
    used[new] = True
    fam.levels.append(new)


def sparse_construct(cg, u, v, ell, k):
    """Internally disjoint alternating u-v paths of length ``ell``.

    ``k`` is the diameter parameter of the sparse window; ``ell >= k``.
    """
    g = cg.graph
    u = _check_vertex(g, u)
    v = _check_vertex(g, v)
    if u == v:
        raise ParameterError("u and v must differ")
    if k < 2:
        raise ParameterError(f"k must be >= 2, got {k}")
    if ell < k:
        raise ParameterError(f"ell={ell} is below the diameter parameter k={k}")
    p_hat = g.density()
    if p_hat == 0:
        return PathSystem(u, v, ell, [])
    d = star_size(g.n, p_hat, k)
    a, b, c = level_shape(ell, k)

    used = np.zeros(g.n, dtype=bool)
    used[[u, v]] = True
    nu, cu = g.neighbors(u), cg.neighbor_colors(u)
    nv, cv = g.neighbors(v), cg.neighbor_colors(v)
    xs = [_Family(u, s) for s in (0, 1)]
    ys = [_Family(v, s) for s in (0, 1)]
    for fam in xs:
        roots = nu[(cu == fam.start) & (nu != v)]
        fam.levels.append(roots)
        used[roots] = True
    if b:
        for fam in ys:
            roots = nv[(cv == fam.start) & ~used[nv]]
            fam.levels.append(roots)
        for fam in ys:
            used[fam.levels[0]] = True

    for depth in range(2, a + 1):
        for fam in xs:
            prefer = None
            if b == 0 and depth == a:
                # favour leaves that already close the path to v
                bridge = fam.color_into(a + 1)
                prefer = np.zeros(g.n, dtype=bool)
                prefer[nv[cv == bridge]] = True
            _grow(cg, fam, used, d, fam.color_into(depth), prefer)
    for depth in range(2, b + 1):
        for fam in ys:
            _grow(cg, fam, used, d, fam.color_into(depth))
    for depth in range(a + 1, a + c + 1):
        for fam in xs:
            _grow(cg, fam, used, 1, fam.color_into(depth))

    paths = []
    for fam in xs:
        bridge = fam.color_into(a + c + 1)
        classes = fam.classes()
        if not classes:
            continue
        if b == 0:
            _, wit = contract_bipartite(cg, classes, [[v]], bridge)
            for (i, _j), (x, _v) in sorted(wit.items()):
                paths.append(tuple([u] + fam.chain(x) + [v]))
            continue
        partner = ys[(fam.start + ell - 1) % 2]
        y_classes = partner.classes()
        if not y_classes:
            continue
        aux, wit = contract_bipartite(cg, classes, y_classes, bridge)
        for i, j in max_matching(aux).pairs:
            x, y = wit[(i, j)]
            paths.append(tuple([u] + fam.chain(x) + partner.chain(y)[::-1] + [v]))
    return PathSystem(u, v, ell, sorted(paths))
