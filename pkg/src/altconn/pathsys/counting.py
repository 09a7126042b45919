"""Alternating paths of length two."""

import math

import numpy as np

from ..errors import ParameterError
from ..graph_core import _check_vertex, _pair_colors
from .system import PathSystem


def alt_p2_middles(cg, u, v):
    """Sorted common neighbours w with c(uw) != c(wv)."""
    u = _check_vertex(cg.graph, u)
    v = _check_vertex(cg.graph, v)
    if u == v:
        raise ParameterError("u and v must differ")
    common, cu, cv = _pair_colors(cg, u, v)
    return common[cu != cv]


def count_alt_p2(cg, u, v):
    """Number of alternating u-v paths of length 2 (always internally disjoint)."""
    return len(alt_p2_middles(cg, u, v))


def alt_p2_system(cg, u, v):
    return PathSystem(u, v, 2, [(u, int(w), v) for w in alt_p2_middles(cg, u, v)])


def kappa2_upper_bound(g, r):
    """Coloring-independent bound on the min-pair alternating-P2 count.

    Any r-coloring has at most sum_v deg(v)^2 (1 - 1/r) / 2 alternating
    2-paths in total, so some pair gets at most that over C(n, 2).
    """
    if r < 2:
        raise ParameterError(f"need at least 2 colors, got r={r}")
    if g.n < 2:
        raise ParameterError("need at least 2 vertices")
    deg = g.degrees.astype(np.float64)
    return float(np.sum(deg**2) * (1 - 1 / r) / 2 / math.comb(g.n, 2))
