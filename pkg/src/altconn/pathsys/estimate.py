"""Regime classification, theoretical targets and the kappa estimator.

Asymptotic conditions are evaluated at finite n as plain inequalities:
``f << g`` becomes ``f < g`` and ``f >> g`` becomes ``f > g``. The sparse
labels follow the harness convention:

* ``thm1.3ii``  ell >= k + 2 with n^(1/k) <= np <= n^(1/(k-1))
* ``thm1.3i``   ell == k + 1 with (n log n)^(1/k) < np <= n^(1/(k-1))
* ``thm1.3iii`` ell == k >= 3 with (n log n)^(1/k) < np < n^(1/(k-1))

Anything else with p = o(1) is a ``gap``: no prescribed behaviour, refused.
"""

import math
from dataclasses import dataclass

from ..errors import ParameterError, RegimeError, VerificationError
from ..graph_core import color_uniform, sample_pairs
from .counting import alt_p2_system
from .dense import dense_construct
from .sparse import sparse_construct
from .system import verify_path_system

_EPS = 1e-9


@dataclass(frozen=True)
class Regime:
    label: str
    k: int = None
    reason: str = ""

    @property
    def refused(self):
        return self.label == "gap"


def _le(a, b):
    return a <= b * (1 + _EPS)


def diameter_parameter(n, p):
    """Smallest k >= 2 with np >= n^(1/k), or None when np <= 1."""
    np_ = n * p
    if np_ <= 1:
        return None
    return max(2, math.ceil(math.log(n) / math.log(np_) - _EPS))


def classify(n, p, ell, k=None, constant_p=False):
    """Label the (n, p, ell) point with the regime that covers it."""
    if ell < 2:
        raise ParameterError(f"ell must be >= 2, got {ell}")
    if not 0 < p < 1:
        return Regime("gap", k, f"p={p} outside (0, 1)")
    if ell == 2:
        floor_p = math.sqrt(math.log(n) / n)
        if p > floor_p:
            return Regime("thm1.1", k)
        return Regime("gap", k, f"p={p:.4g} not above sqrt(log n / n)={floor_p:.4g}")
    if constant_p:
        return Regime("thm1.2", k)
    np_ = n * p
    if k is None:
        k = diameter_parameter(n, p)
        if k is None:
            return Regime("gap", None, f"np={np_:.4g} <= 1")
    if k < 2:
        raise ParameterError(f"k must be >= 2, got {k}")
    low = n ** (1 / k)
    low_log = (n * math.log(n)) ** (1 / k)
    high = n ** (1 / (k - 1))
    if ell >= k + 2:
        if _le(low, np_) and _le(np_, high):
            return Regime("thm1.3ii", k)
        return Regime("gap", k, f"np={np_:.4g} outside [n^(1/k), n^(1/(k-1))]=[{low:.4g}, {high:.4g}]")
    if ell == k + 1:
        if np_ > low_log and _le(np_, high):
            return Regime("thm1.3i", k)
        return Regime("gap", k, f"np={np_:.4g} outside ((n log n)^(1/k), n^(1/(k-1))]"
                                f"=({low_log:.4g}, {high:.4g}]")
    if ell == k and k >= 3:
        if low_log < np_ < high:
            return Regime("thm1.3iii", k)
        return Regime("gap", k, f"np={np_:.4g} outside ((n log n)^(1/k), n^(1/(k-1)))"
                                f"=({low_log:.4g}, {high:.4g})")
    return Regime("gap", k, f"ell={ell} below the covered range for k={k}")


def theory_target(regime, n, p, r, ell):
    """Return ``(target, theta_only)`` for a non-refused regime."""
    label = regime.label
    if label == "thm1.1":
        return (1 - 1 / r) * n * p * p, False
    if label == "thm1.2":
        return min(n / (ell - 1), n * p * (1 - p / 2)), False
    if label in ("thm1.3i", "thm1.3ii"):
        return n * p, False
    if label == "thm1.3iii":
        k = regime.k
        return n ** (k - 1) * p**k, True
    raise RegimeError(f"no theoretical target in the {label} regime: {regime.reason}")


def construct(cg, u, v, ell, regime):
    """Run the construction that matches ``regime``."""
    if regime.label == "thm1.1":
        return alt_p2_system(cg, u, v)
    if regime.label == "thm1.2":
        return dense_construct(cg, u, v, ell)
    if regime.label in ("thm1.3i", "thm1.3ii", "thm1.3iii"):
        return sparse_construct(cg, u, v, ell, regime.k)
    raise RegimeError(f"refusing the {regime.label} regime: {regime.reason}")


def checked(cg, ps):
    ok, reason = verify_path_system(cg, ps)
    if not ok:
        raise VerificationError(f"invalid path system for ({ps.u}, {ps.v}): {reason}")
    return ps


def looks_constant(n, p):
    """Treat p as a constant (dense) density when p log n >= 1."""
    return p * math.log(n) >= 1


@dataclass(frozen=True)
class KappaEstimate:
    achieved: int
    theory: float
    ratio: float
    regime: str
    theta_only: bool


def kappa_estimate(g, r, ell, pair_sample, seed, k=None):
    """Min-pair path count of the matching construction against its target.

    The graph is colored uniformly (``r`` colors for ell = 2, red/blue
    otherwise since the constructions only use two colors) and the regime is
    chosen from n, the empirical density and ell.
    """
    n = g.n
    p_hat = g.density()
    regime = classify(n, p_hat, ell, k, constant_p=looks_constant(n, p_hat))
    if regime.refused:
        raise RegimeError(f"no applicable regime: {regime.reason}")
    theory, theta_only = theory_target(regime, n, p_hat, r, ell)
    cg = color_uniform(g, r if ell == 2 else 2, seed)
    pairs = sample_pairs(n, pair_sample, seed, 1)
    if not pairs:
        raise ParameterError("no vertex pairs to sample")
    achieved = min(len(checked(cg, construct(cg, u, v, ell, regime))) for u, v in pairs)
    ratio = achieved / theory if theory > 0 else math.nan
    return KappaEstimate(achieved, theory, ratio, regime.label, theta_only)
