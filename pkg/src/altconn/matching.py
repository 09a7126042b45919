"""Bipartite maximum matchings, d-matchings (star matchings) and Hall checks."""

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ._backend import kernels
from .errors import BudgetError, ParameterError
from .graph_core import BipartiteGraph, ColoredGraph, Graph

HALL_SUBSET_BUDGET = 1 << 20


@dataclass(frozen=True)
class Matching:
    pairs: list  # (a, b) tuples, ascending in a

    def __len__(self):
        return len(self.pairs)

    @property
    def size(self):
        return len(self.pairs)

    def is_valid_for(self, bg):
        a_seen, b_seen = set(), set()
        for a, b in self.pairs:
            if a in a_seen or b in b_seen or not bg.has_edge(a, b):
                return False
            a_seen.add(a)
            b_seen.add(b)
        return True


@dataclass(frozen=True)
class StarMatching:
    """Vertex-disjoint stars K_{1,d} centred in A, ``stars[center] -> leaves``."""

    d: int
    stars: dict = field(default_factory=dict)

    def is_valid_for(self, bg):
        seen = set()
        for center, leaves in self.stars.items():
            if len(leaves) != self.d or len(set(leaves)) != self.d:
                return False
            for b in leaves:
                if b in seen or not bg.has_edge(center, b):
                    return False
                seen.add(b)
        return True


def _match_csr(na, nb, indptr, indices, warm=None):
    return kernels.hopcroft_karp(na, nb, indptr, indices, warm)


def max_matching(bg):
    """Maximum-cardinality matching of ``bg`` (deterministic pairing)."""
    ma = _match_csr(bg.size_a, bg.size_b, bg.indptr, bg.indices)
    return Matching([(a, int(b)) for a, b in enumerate(ma.tolist()) if b >= 0])


def _clone_rows(indptr, indices, d):
    """CSR of the graph where every A row is repeated ``d`` times in place."""
    lengths = np.repeat(np.diff(indptr), d)
    starts = np.repeat(indptr[:-1], d)
    new_ptr = np.zeros(len(lengths) + 1, dtype=np.int64)
    np.cumsum(lengths, out=new_ptr[1:])
    gather = np.arange(new_ptr[-1], dtype=np.int64) - np.repeat(new_ptr[:-1], lengths) \
        + np.repeat(starts, lengths)
    return new_ptr, indices[gather]


def star_matching_partial(indptr, indices, na, nb, d, prefer=None):
    """Clone reduction without the saturation requirement.

    Returns ``leaves[a]`` (list of B indices, at most ``d`` each) from a
    maximum matching of the ``d``-fold clone graph. If ``prefer`` (boolean
    mask over B) is given, one clone per centre is first matched into the
    preferred B vertices only; augmentation never unmatches a B vertex, so
    those preferred leaves survive into the final maximum matching.
    """
    cptr, cidx = _clone_rows(indptr, indices, d)
    warm = None
    if prefer is not None and np.any(prefer):
        # first clone of each centre only, restricted to preferred leaves
        keep = prefer[indices]
        rows = np.repeat(np.arange(na), np.diff(indptr))[keep]
        pptr = np.zeros(na + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=na), out=pptr[1:])
        first = _match_csr(na, nb, pptr, indices[keep])
        warm = np.full(na * d, -1, dtype=np.int64)
        warm[np.arange(na) * d] = first
    cm = _match_csr(na * d, nb, cptr, cidx, warm)
    leaves = [[] for _ in range(na)]
    for c, b in enumerate(cm.tolist()):
        if b >= 0:
            leaves[c // d].append(b)
    for row in leaves:
        row.sort()
    return leaves


def d_matching(bg, d):
    """A d-matching saturating A, or ``None`` if none exists.

    Each A vertex is cloned ``d`` times; a saturating d-matching exists iff
    the clone graph has a matching of size ``d * |A|``.
    """
    if not (isinstance(d, (int, np.integer)) and d >= 1):
        raise ParameterError(f"d must be a positive integer, got {d!r}")
    d = int(d)
    if bg.size_b < d * bg.size_a:
        return None
    leaves = star_matching_partial(bg.indptr, bg.indices, bg.size_a, bg.size_b, d)
    if any(len(row) < d for row in leaves):
        return None
    return StarMatching(d, {a: row for a, row in enumerate(leaves)})


def floor_star_size(x):
    """Real-valued star size rounded down and clamped to at least 1."""
    return max(1, int(math.floor(x)))


def hall_violation(bg, d, max_subset):
    """First S ⊆ A with |S| <= max_subset and |N(S)| < d|S|, or ``None``.

    Subsets are scanned by size, then lexicographically.
    """
    if not 0 <= max_subset <= bg.size_a:
        raise ParameterError(f"max_subset must lie in [0, {bg.size_a}]")
    total = sum(math.comb(bg.size_a, s) for s in range(1, max_subset + 1))
    if total > HALL_SUBSET_BUDGET:
        raise BudgetError(f"{total} subsets exceed the budget of {HALL_SUBSET_BUDGET}")
    masks = [sum(1 << int(b) for b in bg.row(a)) for a in range(bg.size_a)]
    for s in range(1, max_subset + 1):
        for subset in combinations(range(bg.size_a), s):
            nbhd = 0
            for a in subset:
                nbhd |= masks[a]
            if nbhd.bit_count() < d * s:
                return list(subset)
    return None


def near_perfect_matching_deficiency(bg):
    """``m - |maximum matching|`` for a balanced bipartite graph."""
    if bg.size_a != bg.size_b:
        raise ParameterError("sides must have equal size")
    return bg.size_a - max_matching(bg).size


def induced_bipartite(host, A, B, color=None):
    """Bipartite graph between vertex lists ``A`` and ``B`` of ``host``.

    ``host`` is a Graph or ColoredGraph; with ``color`` set only edges of that
    color are kept. Row ``i`` is ``A[i]``, column ``j`` is ``B[j]``; ``B``
    must be sorted ascending so rows come out increasing.
    """
    if isinstance(host, ColoredGraph):
        g, slot_colors = host.graph, host.slot_colors
    else:
        g, slot_colors = host, None
        if color is not None:
            raise ParameterError("a color filter needs a ColoredGraph")
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    pos = np.full(g.n, -1, dtype=np.int64)
    pos[B] = np.arange(len(B))
    starts = g.indptr[A]
    lengths = g.indptr[A + 1] - starts
    total = int(lengths.sum())
    offs = np.zeros(len(A) + 1, dtype=np.int64)
    np.cumsum(lengths, out=offs[1:])
    slots = np.arange(total, dtype=np.int64) - np.repeat(offs[:-1], lengths) \
        + np.repeat(starts, lengths)
    cols = pos[g.indices[slots]]
    keep = cols >= 0
    if color is not None:
        keep &= slot_colors[slots] == color
    rows = np.repeat(np.arange(len(A)), lengths)[keep]
    indptr = np.zeros(len(A) + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=len(A)), out=indptr[1:])
    return BipartiteGraph(len(A), len(B), indptr, cols[keep])


def dense_pair_matching(host, A, B, color=None):
    """Maximum matching between disjoint vertex sets A and B of ``host``.

    Pairs are returned as original vertex ids ``(a, b)``.
    """
    A = np.unique(np.asarray(list(A), dtype=np.int64))
    B = np.unique(np.asarray(list(B), dtype=np.int64))
    if len(np.intersect1d(A, B)):
        raise ParameterError("A and B must be disjoint")
    bg = induced_bipartite(host, A, B, color)
    m = max_matching(bg)
    return Matching([(int(A[a]), int(B[b])) for a, b in m.pairs])
