"""Exit criteria. Each test prints one PASS/FAIL line (collected in the terminal summary)."""
import itertools
import math
import time
from importlib import resources

import numpy as np
import pytest

from altconn.experiments import load_config, min_ratio_by_n, run_experiment, write_csv
from altconn.graph_core import (BipartiteGraph, ColoredGraph, bipartite_gnp, color_uniform,
                                gnp_generate, sample_pairs)
from altconn.matching import d_matching, hall_violation, near_perfect_matching_deficiency
from altconn.oracle import count_alt_p3_formula, enumerate_alt_paths, kappa_exact
from altconn.oracle import max_disjoint_alt_paths_exact
from altconn.pathsys import (alt_p2_system, count_alt_p2, dense_construct, sparse_construct,
                             verify_path_system)
from altconn.pseudorandom import (eml_matching, eml_min_residual_exhaustive, random_regular,
                                  spectral_profile)
from altconn.rng import make_rng

from conftest import acceptance_line, complete, cycle, petersen

pytestmark = pytest.mark.acceptance

SEEDS = (1, 2, 3)
EML_EPS = 1e-9


def config(name):
    return load_config(resources.files("altconn") / "configs" / f"{name}.cfg")


def verified(cg, ps):
    return verify_path_system(cg, ps)[0]


def test_c01_kappa2_trend():
    cfg = config("kappa2")
    assert (cfg.n_grid, cfg.r, cfg.trials, cfg.pair_sample) == ((1000, 2000, 4000), 2, 5, 100)
    t0 = time.perf_counter()
    ratios = min_ratio_by_n(run_experiment(cfg).rows)
    elapsed = time.perf_counter() - t0
    vals = [ratios[n] for n in cfg.n_grid]
    monotone = all(b >= a - 0.05 for a, b in zip(vals, vals[1:]))
    ok = vals[0] >= 0.75 and monotone and elapsed < 60
    detail = ", ".join(f"n={n}: {v:.3f}" for n, v in zip(cfg.n_grid, vals))
    assert acceptance_line(1, ok, f"min-pair ratios {detail}; {elapsed:.1f}s")


def test_c02_dense_construction():
    n, p = 3000, 0.5
    t0 = time.perf_counter()
    worst, bad = math.inf, 0
    for seed in SEEDS:
        cg = color_uniform(gnp_generate(n, p, seed), 2, seed)
        for ell in (3, 4, 5):
            target = min(n / (ell - 1), n * p * (1 - p / 2))
            for u, v in sample_pairs(n, 20, seed, 1):
                ps = dense_construct(cg, u, v, ell)
                good = verified(cg, ps) and ps.t >= 0.8 * target
                bad += not good
                worst = min(worst, ps.t / target)
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 300
    assert acceptance_line(2, ok, f"worst ratio {worst:.3f}, {bad} failing pairs; {elapsed:.1f}s")


def test_c03_sparse_construction():
    n, p, k = 4096, 1 / 64, 2
    need = 0.5 * n * p
    t0 = time.perf_counter()
    parts, ok = [], True
    for ell in (3, 4):
        for seed in SEEDS:
            cg = color_uniform(gnp_generate(n, p, seed), 2, seed)
            counts, valid = [], True
            for u, v in sample_pairs(n, 20, seed, 1):
                ps = sparse_construct(cg, u, v, ell, k)
                valid &= verified(cg, ps)
                counts.append(ps.t)
            frac = sum(c >= need for c in counts) / len(counts)
            ok &= valid and frac >= 0.9
            parts.append(f"ell={ell} seed={seed}: {frac:.2f} (min {min(counts)})")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 180
    assert acceptance_line(3, ok, f"share >= {need:g}: " + "; ".join(parts) + f"; {elapsed:.1f}s")


def test_c04_sparse_part_iii():
    n, k, ell = 4096, 3, 3
    p = n**0.45 / n
    target = n ** (k - 1) * p**k
    ratios = []
    for seed in SEEDS:
        cg = color_uniform(gnp_generate(n, p, seed), 2, seed)
        counts = []
        for u, v in sample_pairs(n, 20, seed, 1):
            ps = sparse_construct(cg, u, v, ell, k)
            assert verified(cg, ps)
            counts.append(ps.t)
        ratios.append(min(counts) / target)
    ok = all(0.05 <= r <= 20 for r in ratios)
    detail = ", ".join(f"{r:.3f}" for r in ratios)
    assert acceptance_line(4, ok, f"min-pair ratios to {target:.2f}: {detail}")


def test_c05_oracle_equivalence():
    rng = make_rng(5, 0)
    t0 = time.perf_counter()
    failures = checked = 0
    for i in range(200):
        n = int(rng.integers(4, 10))
        p = float(rng.uniform(0.3, 0.9))
        cg = color_uniform(gnp_generate(n, p, i), 2, i)
        for u, v in itertools.combinations(range(n), 2):
            for ell in (2, 3, 4):
                best = max_disjoint_alt_paths_exact(cg, u, v, ell)
                systems = [sparse_construct(cg, u, v, ell, k) for k in range(2, ell + 1)]
                if ell == 2:
                    systems.append(alt_p2_system(cg, u, v))
                    failures += count_alt_p2(cg, u, v) != best
                else:
                    systems.append(dense_construct(cg, u, v, ell))
                for ps in systems:
                    checked += 1
                    failures += not (verified(cg, ps) and ps.t <= best)
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 120
    assert acceptance_line(5, ok, f"{checked} systems, {failures} failures; {elapsed:.1f}s")


def test_c06_tiny_kappa():
    got = (kappa_exact(complete(3), 2, 2), kappa_exact(complete(3), 3, 2),
           kappa_exact(cycle(5), 2, 2))
    assert acceptance_line(6, got == (0, 1, 0), f"K3 r=2: {got[0]}, K3 r=3: {got[1]}, C5: {got[2]}")


def test_c07_p3_formula():
    rng = make_rng(7, 0)
    mismatches = 0
    for i in range(100):
        n = int(rng.integers(5, 41))
        p = float(rng.uniform(0.05, 0.6))
        cg = color_uniform(gnp_generate(n, p, 700 + i), 2, 700 + i)
        total = sum(len(enumerate_alt_paths(cg, u, v, 3))
                    for u, v in itertools.combinations(range(n), 2))
        mismatches += count_alt_p3_formula(cg) != total
    assert acceptance_line(7, mismatches == 0, f"{mismatches} mismatches over 100 graphs")


def test_c08_k5_exhaustive():
    g = complete(5)
    bound = 4**3 / (4 * 4)
    worst = 0
    for cols in itertools.product((0, 1), repeat=10):
        cg = ColoredGraph(g, 2, cols)
        low = min(len(enumerate_alt_paths(cg, u, v, 3))
                  for u, v in itertools.combinations(range(5), 2))
        worst = max(worst, low)
    assert acceptance_line(8, worst <= bound, f"largest min-pair count {worst} (bound {bound:g})")


def random_bipartite(rng, max_a, max_b):
    na = int(rng.integers(1, max_a + 1))
    nb = int(rng.integers(1, max_b + 1))
    q = rng.uniform(0.1, 0.7)
    rows = [sorted(np.flatnonzero(rng.random(nb) < q).tolist()) for _ in range(na)]
    return BipartiteGraph.from_lists(na, nb, rows)


def test_c09_hall_and_deficiency():
    rng = make_rng(9, 0)
    disagree = 0
    for _ in range(500):
        bg = random_bipartite(rng, 10, 16)
        d = int(rng.integers(1, 4))
        present = d_matching(bg, d) is not None
        disagree += present != (hall_violation(bg, d, bg.size_a) is None)
    m = 500
    q = math.log(m) / m
    good = sum(near_perfect_matching_deficiency(bipartite_gnp(m, m, q, s)) <= m / math.log(m)
               for s in range(100))
    ok = disagree == 0 and good >= 95
    assert acceptance_line(9, ok, f"Hall disagreements {disagree}/500; deficiency ok {good}/100")


def test_c10_spectral_eml():
    prof = spectral_profile(petersen())
    petersen_ok = abs(prof.largest - 3) <= 1e-8 and abs(prof.lam - 2) <= 1e-8
    rng = make_rng(10, 0)
    worst = math.inf
    for i in range(50):
        n = int(rng.integers(6, 11))
        d = int(rng.integers(2, n - 1))
        if n * d % 2:
            d -= 1
        g = random_regular(n, d, 1000 + i)
        worst = min(worst, eml_min_residual_exhaustive(g, spectral_profile(g).lam))
    met = 0
    for seed in range(10):
        g = gnp_generate(2000, 0.5, seed)
        perm = make_rng(seed, 1).permutation(2000)
        met += eml_matching(g, perm[:200], perm[200:400]).meets_prediction
    ok = petersen_ok and worst >= -EML_EPS and met == 10
    detail = (f"Petersen ({prof.largest:.9f}, {prof.lam:.9f}); "
              f"min EML residual {worst:.3g}; matchings meeting prediction {met}/10")
    assert acceptance_line(10, ok, detail)


def test_c11_determinism(tmp_path):
    names = sorted(p.name[:-4] for p in (resources.files("altconn") / "configs").iterdir()
                   if p.name.endswith(".cfg"))
    differing = []
    for name in names:
        outs = []
        for run in range(2):
            path = tmp_path / f"{name}_{run}.csv"
            write_csv(run_experiment(config(name)).rows, path)
            outs.append(path.read_bytes())
        if outs[0] != outs[1]:
            differing.append(name)
    ok = not differing
    assert acceptance_line(11, ok, f"{len(names)} configs, differing: {differing or 'none'}")
