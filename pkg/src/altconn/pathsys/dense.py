"""Layered construction of alternating paths for dense graphs.

Two chains of disjoint layers run from x to y. The W chain leaves x on a red
edge and the Z chain on a blue one; consecutive layers are wired by
maximum matchings restricted to the color that keeps each path alternating.
Endpoint layers come from the colored neighbourhoods

    X_B = (N_B(x) \\ N(y)) ∪ N_BB(x, y)    Y_B = (N_B(y) \\ N(x)) ∪ N_RB(x, y)
    X_R = (N_R(x) \\ N(y)) ∪ N_RR(x, y)    Y_R = (N_R(y) \\ N(x)) ∪ N_BR(x, y)

and interior layers from the common non-neighbours S. When
n/(ell-1) <= n p (1 - p/2) the vertex budget, not the degrees, is binding and
the construction runs a second round over the unused part of the
neighbourhoods.
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import ParameterError
from ..graph_core import BLUE, RED, _check_vertex
from ..matching import dense_pair_matching
from .system import PathSystem


@dataclass
class LayerRound:
    w_layers: list
    z_layers: list
    size_w: int
    size_z: int


@dataclass
class LayerPlan:
    u: int
    v: int
    ell: int
    two_round: bool
    p_hat: float
    rounds: list = field(default_factory=list)

    @property
    def consumed(self):
        used = set()
        for rnd in self.rounds:
            for layer in rnd.w_layers + rnd.z_layers:
                used.update(int(w) for w in layer)
        return len(used)

    def all_layers(self):
        return [layer for rnd in self.rounds for layer in rnd.w_layers + rnd.z_layers]


def neighbourhood_split(cg, x, y):
    """Return sorted arrays ``X_B, X_R, Y_B, Y_R, S`` for the pair (x, y).

    Edges with a color other than red or blue are ignored; their endpoints are
    left out of every set.
    """
    g = cg.graph
    nx, cx = g.neighbors(x), cg.neighbor_colors(x)
    ny, cy = g.neighbors(y), cg.neighbor_colors(y)
    col_x = np.full(g.n, -1, dtype=np.int64)
    col_y = np.full(g.n, -1, dtype=np.int64)
    col_x[nx] = cx
    col_y[ny] = cy
    in_x = np.zeros(g.n, dtype=bool)
    in_y = np.zeros(g.n, dtype=bool)
    in_x[nx] = True
    in_y[ny] = True
    for w in (x, y):
        in_x[w] = in_y[w] = True
        col_x[w] = col_y[w] = -1
    only_x = in_x & ~in_y
    only_y = in_y & ~in_x
    both = in_x & in_y
    X_B = np.flatnonzero((only_x & (col_x == BLUE)) | (both & (col_x == BLUE) & (col_y == BLUE)))
    X_R = np.flatnonzero((only_x & (col_x == RED)) | (both & (col_x == RED) & (col_y == RED)))
    Y_B = np.flatnonzero((only_y & (col_y == BLUE)) | (both & (col_x == RED) & (col_y == BLUE)))
    Y_R = np.flatnonzero((only_y & (col_y == RED)) | (both & (col_x == BLUE) & (col_y == RED)))
    S = np.flatnonzero(~(in_x | in_y))
    return X_B, X_R, Y_B, Y_R, S


class _Pool:
    """Vertices handed out lowest index first."""

    def __init__(self, *parts):
        self.items = np.concatenate([np.asarray(p, dtype=np.int64) for p in parts]) \
            if parts else np.zeros(0, dtype=np.int64)
        self.pos = 0

    def take(self, k):
        out = self.items[self.pos:self.pos + max(k, 0)]
        self.pos += len(out)
        return out

    def rest(self):
        return self.items[self.pos:]


def _fill_middles(ell, w_first, w_last, z_first, z_last, size_w, size_z, pool):
    w_mid, z_mid = [], []
    for _ in range(2, ell - 1):
        w_mid.append(pool.take(size_w))
        z_mid.append(pool.take(size_z))
    return LayerRound([w_first] + w_mid + [w_last], [z_first] + z_mid + [z_last],
                      size_w, size_z)


def dense_plan(cg, u, v, ell):
    """Choose the disjoint layers W_i, Z_i (one or two rounds) for pair (u, v)."""
    u = _check_vertex(cg.graph, u)
    v = _check_vertex(cg.graph, v)
    if u == v:
        raise ParameterError("u and v must differ")
    if ell < 3:
        raise ParameterError(f"dense construction needs ell >= 3, got {ell}")
    n = cg.n
    p_hat = cg.graph.density()
    X_B, X_R, Y_B, Y_R, S = neighbourhood_split(cg, u, v)
    if ell % 2 == 0:
        w_end, z_end = Y_B, Y_R
    else:
        w_end, z_end = Y_R, Y_B
    two_round = ell >= 4 and n / (ell - 1) <= n * p_hat * (1 - p_hat / 2)
    plan = LayerPlan(u, v, ell, two_round, p_hat)

    if not two_round:
        size_w = min(len(X_R), len(w_end))
        size_z = min(len(X_B), len(z_end))
        plan.rounds.append(_fill_middles(ell, X_R, w_end, X_B, z_end, size_w, size_z, _Pool(S)))
        return plan

    # round one covers S with layers of size s / (2(ell - 3))
    h1 = len(S) // (2 * (ell - 3))
    ends1 = [X_R[:h1], w_end[:h1], X_B[:h1], z_end[:h1]]
    pool1 = _Pool(S)
    plan.rounds.append(_fill_middles(ell, ends1[0], ends1[1], ends1[2], ends1[3],
                                     min(len(ends1[0]), len(ends1[1])),
                                     min(len(ends1[2]), len(ends1[3])), pool1))
    # round two spends the leftover neighbourhoods U' in layers of size k / (2(ell - 1))
    left = [X_R[h1:], w_end[h1:], X_B[h1:], z_end[h1:]]
    k = sum(len(a) for a in left)
    h2 = k // (2 * (ell - 1))
    ends2 = [a[:h2] for a in left]
    rest_u = np.sort(np.concatenate([a[h2:] for a in left]))
    pool2 = _Pool(rest_u, pool1.rest())
    plan.rounds.append(_fill_middles(ell, ends2[0], ends2[1], ends2[2], ends2[3],
                                     min(len(ends2[0]), len(ends2[1])),
                                     min(len(ends2[2]), len(ends2[3])), pool2))
    return plan


def _run_chain(cg, x, y, layers, start_color):
    """Paths x -> layers[0] -> ... -> layers[-1] -> y surviving every matching."""
    prefix = {int(w): [x, int(w)] for w in layers[0]}
    for i in range(len(layers) - 1):
        if not prefix:
            return []
        color = (start_color + i + 1) % 2
        m = dense_pair_matching(cg, sorted(prefix), layers[i + 1], color)
        prefix = {b: prefix[a] + [b] for a, b in m.pairs}
    return [tuple(prefix[w] + [y]) for w in sorted(prefix)]


def dense_construct(cg, u, v, ell):
    """Internally disjoint alternating u-v paths of length ``ell`` (dense regime)."""
    plan = dense_plan(cg, u, v, ell)
    paths = []
    for rnd in plan.rounds:
        paths += _run_chain(cg, plan.u, plan.v, rnd.w_layers, RED)
        paths += _run_chain(cg, plan.u, plan.v, rnd.z_layers, BLUE)
    return PathSystem(plan.u, plan.v, ell, paths)
