"""Spectral profiles, Expander Mixing Lemma checks and pseudorandom kappa runs.

``e(S, T)`` counts ordered pairs ``(s, t)`` with ``s`` in S, ``t`` in T and
``st`` an edge, so edges inside ``S ∩ T`` are counted twice.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, ParameterError
from .graph_core import Graph, color_uniform, sample_pairs
from .matching import Matching, dense_pair_matching
from .pathsys.dense import dense_construct
from .pathsys.estimate import checked
from .rng import make_rng

EIGEN_BUDGET = 5000
# lambda << d^2/n is read as lambda <= d^2 / (PSEUDO_MARGIN n)
PSEUDO_MARGIN = 4


@dataclass(frozen=True)
class SpectralProfile:
    n: int
    d: float
    lam: float
    largest: float
    degree_spread: float


def adjacency_matrix(g):
    A = np.zeros((g.n, g.n))
    A[g.edge_u, g.edge_v] = 1.0
    A[g.edge_v, g.edge_u] = 1.0
    return A


def eigenvalues(g):
    if g.n > EIGEN_BUDGET:
        raise BudgetError(f"n={g.n} exceeds the dense eigensolve budget of {EIGEN_BUDGET}")
    return np.linalg.eigvalsh(adjacency_matrix(g))


def spectral_profile(g):
    """Average degree, largest eigenvalue and the largest other |eigenvalue|."""
    ev = eigenvalues(g)
    d = 2 * g.m / g.n
    lam = float(max(abs(ev[0]), abs(ev[-2]))) if g.n > 1 else 0.0
    spread = float(np.max(np.abs(g.degrees - d)))
    return SpectralProfile(g.n, d, lam, float(ev[-1]), spread)


def _as_index(S, n):
    S = np.unique(np.asarray(list(S), dtype=np.int64))
    if len(S) and (S[0] < 0 or S[-1] >= n):
        raise ParameterError("vertex out of range")
    return S


def e_ordered(g, S, T):
    """e(S, T) under the ordered-pair convention."""
    S = _as_index(S, g.n)
    mark = np.zeros(g.n, dtype=bool)
    mark[_as_index(T, g.n)] = True
    return int(sum(np.count_nonzero(mark[g.neighbors(s)]) for s in S.tolist()))


def eml_residual(g, S, T, lam):
    """lam sqrt(|S||T|) - |e(S, T) - d|S||T|/n|; nonnegative when EML holds."""
    S = _as_index(S, g.n)
    T = _as_index(T, g.n)
    d = 2 * g.m / g.n
    s, t = len(S), len(T)
    return lam * math.sqrt(s * t) - abs(e_ordered(g, S, T) - d * s * t / g.n)


def eml_min_residual_exhaustive(g, lam):
    """Smallest EML residual over every pair of vertex subsets (n <= 12)."""
    n = g.n
    if n > 12:
        raise BudgetError(f"n={n} is too large for an exhaustive subset sweep")
    masks = np.arange(1 << n)
    X = ((masks[:, None] >> np.arange(n)) & 1).astype(np.float64)
    E = X @ adjacency_matrix(g) @ X.T
    sizes = X.sum(axis=1)
    st = np.outer(sizes, sizes)
    d = 2 * g.m / n
    return float(np.min(lam * np.sqrt(st) - np.abs(E - d * st / n)))


def random_regular(n, d, seed):
    """Random d-regular simple graph (small n; cubic in the stub count).

    Stubs are paired one suitable pair at a time (no loop, no repeated
    edge), restarting when the remaining stubs cannot be paired.
    """
    if not 0 <= d < n or (n * d) % 2:
        raise ParameterError(f"no {d}-regular graph on {n} vertices")
    rng = make_rng(seed)
    for _ in range(1000):
        left = np.repeat(np.arange(n), d).tolist()
        edges = set()
        while left:
            ok = [(i, j) for i in range(len(left)) for j in range(i + 1, len(left))
                  if left[i] != left[j]
                  and (min(left[i], left[j]), max(left[i], left[j])) not in edges]
            if not ok:
                break
            i, j = ok[int(rng.integers(len(ok)))]
            a, b = left[i], left[j]
            edges.add((min(a, b), max(a, b)))
            del left[j], left[i]
        if not left:
            return Graph.from_edges(n, sorted(edges))
    raise BudgetError(f"could not pair stubs into a simple {d}-regular graph")


@dataclass(frozen=True)
class EMLMatching:
    matching: Matching
    predicted: float

    @property
    def meets_prediction(self):
        return self.matching.size >= self.predicted


def eml_matching(g, A, B, profile=None):
    """Maximum A-B matching with the mixing-lemma size prediction.

    The prediction (1 - 2 lam n / (d m)) m is vacuous (<= 0) once m drops
    below 2 lam n / d.
    """
    A = list(A)
    B = list(B)
    if len(A) != len(B):
        raise ParameterError("A and B must have equal size")
    if len(set(A)) != len(A) or len(set(B)) != len(B):
        raise ParameterError("A and B must not repeat vertices")
    if set(A) & set(B):
        raise ParameterError("A and B must be disjoint")
    profile = profile or spectral_profile(g)
    m = len(A)
    if m == 0 or profile.d == 0:
        predicted = 0.0
    else:
        predicted = (1 - 2 * profile.lam * g.n / (profile.d * m)) * m
    return EMLMatching(dense_pair_matching(g, A, B), predicted)


@dataclass(frozen=True)
class PseudoRow:
    u: int
    v: int
    achieved: int
    theory: float
    ratio: float


@dataclass(frozen=True)
class PseudoReport:
    profile: SpectralProfile
    ell: int
    theory: float
    warning: bool
    rows: list

    @property
    def min_ratio(self):
        return min((r.ratio for r in self.rows), default=math.nan)


def pseudo_target(n, d, ell):
    return min(n / (ell - 1), d - d * d / (2 * n))


def is_pseudorandom(profile):
    """lam << d^2/n, evaluated with a fixed margin."""
    return PSEUDO_MARGIN * profile.lam <= profile.d**2 / profile.n


def pseudo_kappa_check(g, ell, pair_sample, seed, profile=None):
    """Dense construction on a uniform 2-coloring against the pseudorandom target."""
    if ell < 3:
        raise ParameterError(f"ell must be >= 3, got {ell}")
    profile = profile or spectral_profile(g)
    theory = pseudo_target(g.n, profile.d, ell)
    cg = color_uniform(g, 2, seed)
    rows = []
    for u, v in sample_pairs(g.n, pair_sample, seed, 1):
        t = len(checked(cg, dense_construct(cg, u, v, ell)))
        rows.append(PseudoRow(u, v, t, theory, t / theory if theory > 0 else math.nan))
    return PseudoReport(profile, ell, theory, not is_pseudorandom(profile), rows)
