import itertools
import math

import numpy as np
import pytest

from altconn.errors import BudgetError, ParameterError
from altconn.graph_core import BipartiteGraph, Graph, gnp_generate
from altconn.oracle import complete_bipartite
from altconn.pseudorandom import (eigenvalues, eml_matching, eml_min_residual_exhaustive,
                                  eml_residual, e_ordered, pseudo_kappa_check, pseudo_target,
                                  random_regular, spectral_profile)
from altconn.rng import make_rng

from conftest import complete, petersen

# known spectrum of the Petersen graph: 3, 1 (x5), -2 (x4)
PETERSEN_SPECTRUM = [-2] * 4 + [1] * 5 + [3]


def test_complete_graph_profile():
    prof = spectral_profile(complete(7))
    assert prof.largest == pytest.approx(6)
    assert prof.lam == pytest.approx(1)
    assert prof.degree_spread == 0


def test_complete_bipartite_profile():
    prof = spectral_profile(complete_bipartite(5, 5))
    assert prof.lam == pytest.approx(5)


def test_petersen_profile():
    prof = spectral_profile(petersen())
    assert abs(prof.largest - 3) <= 1e-8 * 3
    assert abs(prof.lam - 2) <= 1e-8 * 2
    assert np.allclose(eigenvalues(petersen()), PETERSEN_SPECTRUM, atol=1e-10)


def test_spectrum_sanity():
    g = gnp_generate(120, 0.3, 4)
    ev = eigenvalues(g)
    assert abs(ev.sum()) <= 1e-6 * max(1, np.abs(ev).sum())
    assert (ev**2).sum() == pytest.approx(2 * g.m, rel=1e-6)
    prof = spectral_profile(g)
    assert 0 <= prof.lam <= prof.largest


def test_eigen_budget(monkeypatch):
    import altconn.pseudorandom as pr

    monkeypatch.setattr(pr, "EIGEN_BUDGET", 10)
    with pytest.raises(BudgetError):
        spectral_profile(complete(11))


def test_e_ordered_counts_overlap_twice():
    g = complete(4)
    assert e_ordered(g, [0, 1], [0, 1]) == 2
    assert e_ordered(g, [0], [1, 2]) == 2


def test_eml_residual_examples():
    g = complete(9)
    assert eml_residual(g, [], [1, 2], 1.0) == 0
    S, T = [0, 1, 2], [3, 4, 5, 6]
    # |e - (n-1)|S||T|/n| = |S||T|/n
    assert eml_residual(g, S, T, 1.0) == pytest.approx(math.sqrt(12) - 12 / 9)


def test_eml_random_pairs_dense():
    g = gnp_generate(2000, 0.5, 1)
    prof = spectral_profile(g)
    rng = make_rng(5)
    for _ in range(100):
        s, t = rng.integers(1, 2000, size=2)
        S = rng.choice(2000, size=s, replace=False)
        T = rng.choice(2000, size=t, replace=False)
        assert eml_residual(g, S, T, prof.lam) >= 0


def test_eml_exhaustive_matches_pointwise():
    g = random_regular(8, 3, 2)
    lam = spectral_profile(g).lam
    worst = min(eml_residual(g, [i for i in range(8) if a >> i & 1],
                             [i for i in range(8) if b >> i & 1], lam)
                for a in range(256) for b in range(256))
    assert eml_min_residual_exhaustive(g, lam) == pytest.approx(worst)


def test_random_regular():
    for n, d in [(10, 3), (10, 6), (12, 5), (9, 4)]:
        g = random_regular(n, d, n * d)
        assert np.all(g.degrees == d)
        g.check_invariants()
    with pytest.raises(ParameterError):
        random_regular(5, 3, 0)


def test_eml_matching_examples():
    g = complete(10)
    res = eml_matching(g, [0, 1, 2, 3, 4], [5, 6, 7, 8, 9])
    assert res.matching.size == 5 and res.meets_prediction
    small = eml_matching(gnp_generate(200, 0.5, 1), [0, 1], [2, 3])
    assert small.predicted <= 0
    with pytest.raises(ParameterError):
        eml_matching(g, [0, 1], [2])
    with pytest.raises(ParameterError):
        eml_matching(g, [0, 1], [1, 2])


def test_pseudo_targets():
    n = 50
    d = n - 1
    for ell in (3, 4, 5):
        assert pseudo_target(n, d, ell) == pytest.approx(min(n / (ell - 1), d - d * d / (2 * n)))
    rep = pseudo_kappa_check(complete(60), 4, 5, 1)
    assert not rep.warning
    assert rep.theory == pytest.approx(min(60 / 3, 59 - 59**2 / 120))
    bip = pseudo_kappa_check(complete_bipartite(20, 20), 4, 5, 1)
    assert bip.warning


def test_pseudo_kappa_on_dense_random():
    rep = pseudo_kappa_check(gnp_generate(1500, 0.5, 7), 4, 20, 7)
    assert not rep.warning
    assert len(rep.rows) == 20
    assert rep.min_ratio >= 0.75
