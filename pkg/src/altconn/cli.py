"""Command-line entry point.

Exit codes: 0 success, 2 parameter error, 3 regime refusal, 4 verification
failure, 5 budget exceeded.
"""

import argparse
import logging
import math
import sys
from importlib import resources
from pathlib import Path

from .errors import AltconnError, ParameterError, VerificationError
from .experiments import Row, load_config, min_ratio_by_n, run_experiment, write_csv
from .formats import read_graph, write_graph, write_path_system, read_path_system
from .graph_core import ColoredGraph, color_uniform, gnp_generate, sample_pairs
from .oracle import best_disjoint_alt_paths, kappa_exact
from .pathsys import (classify, count_alt_p2, dense_construct, sparse_construct,
                      theory_target, verify_path_system)
from .pathsys.estimate import checked, diameter_parameter
from .pseudorandom import pseudo_kappa_check


def _stdout_or(path):
    return path if path not in (None, "-") else sys.stdout


def _load_or_generate(args, r=None):
    """Graph from --graph, or G(--n, --p) from --seed."""
    if args.graph:
        return read_graph(args.graph, r)
    if args.n is None or args.p is None:
        raise ParameterError("give --graph FILE or both --n and --p")
    return gnp_generate(args.n, args.p, args.seed)


def _colored(g, r, seed):
    if isinstance(g, ColoredGraph):
        return g
    return color_uniform(g, r, seed)


def cmd_gen(args):
    write_graph(gnp_generate(args.n, args.p, args.seed), _stdout_or(args.out))


def cmd_color(args):
    g = read_graph(args.graph)
    if isinstance(g, ColoredGraph):
        g = g.graph
    write_graph(color_uniform(g, args.r, args.seed), _stdout_or(args.out))


def cmd_verify(args):
    cg = read_graph(args.graph)
    if not isinstance(cg, ColoredGraph):
        raise ParameterError("verify needs a colored graph file")
    ps = read_path_system(args.paths)
    ok, reason = verify_path_system(cg, ps)
    if not ok:
        raise VerificationError(reason)
    print(f"ok: {ps.t} paths of length {ps.ell} between {ps.u} and {ps.v}")


def cmd_kappa2(args):
    g = _load_or_generate(args, args.r)
    cg = _colored(g, args.r, args.seed)
    n, p_hat = cg.n, cg.graph.density()
    reg = classify(n, p_hat, 2)
    theory = (1 - 1 / cg.r) * n * p_hat**2
    rows = []
    for u, v in sample_pairs(n, args.pairs, args.seed, 1):
        t = count_alt_p2(cg, u, v)
        rows.append(Row("kappa2", n, p_hat, cg.r, 2, None, 0, u, v, t, theory,
                        t / theory if theory > 0 else math.nan, reg.label, args.seed, 0))
    write_csv(rows, _stdout_or(args.out))
    low = min(rows, key=lambda r: r.achieved)
    print(f"min pair count {low.achieved}, target {theory:.4g}, ratio {low.ratio:.4g}",
          file=sys.stderr)


def _pair_construction(args, build):
    g = _load_or_generate(args, 2)
    cg = _colored(g, 2, args.seed)
    ps = checked(cg, build(cg))
    write_path_system(ps, _stdout_or(args.out))
    print(f"{ps.t} verified paths", file=sys.stderr)


def cmd_dense(args):
    _pair_construction(args, lambda cg: dense_construct(cg, args.u, args.v, args.ell))


def cmd_sparse(args):
    def build(cg):
        k = args.k or diameter_parameter(cg.n, cg.graph.density())
        if k is None:
            raise ParameterError("graph too sparse to pick a diameter parameter; pass --k")
        return sparse_construct(cg, args.u, args.v, args.ell, k)

    _pair_construction(args, build)


def cmd_oracle(args):
    g = read_graph(args.graph, args.r)
    if args.u is None:
        base = g.graph if isinstance(g, ColoredGraph) else g
        print(kappa_exact(base, args.r or 2, args.ell))
        return
    if not isinstance(g, ColoredGraph):
        raise ParameterError("pair mode needs a colored graph file")
    best = best_disjoint_alt_paths(g, args.u, args.v, args.ell)
    from .pathsys import PathSystem

    write_path_system(PathSystem(args.u, args.v, args.ell, best), _stdout_or(args.out))


def cmd_pseudo(args):
    g = _load_or_generate(args)
    if isinstance(g, ColoredGraph):
        g = g.graph
    rep = pseudo_kappa_check(g, args.ell, args.pairs, args.seed)
    rows = [Row("pseudo", g.n, g.density(), 2, args.ell, None, 0, r.u, r.v, r.achieved,
                r.theory, r.ratio, "thm6.2", args.seed, 0) for r in rep.rows]
    write_csv(rows, _stdout_or(args.out))
    prof = rep.profile
    print(f"d={prof.d:.4g} lambda={prof.lam:.4g} target={rep.theory:.4g} "
          f"min ratio={rep.min_ratio:.4g}", file=sys.stderr)
    if rep.warning:
        print("warning: lambda is not small against d^2/n", file=sys.stderr)


def _resolve_config(name):
    path = Path(name)
    if path.exists():
        return path
    packaged = resources.files("altconn") / "configs" / f"{name}.cfg"
    if packaged.is_file():
        return packaged
    raise ParameterError(f"no config file {name!r}")


def cmd_experiment(args):
    cfg = load_config(_resolve_config(args.config))
    if args.seed is not None:
        cfg = type(cfg)(**{**cfg.__dict__, "seed": args.seed})
    if args.workers is not None:
        cfg = type(cfg)(**{**cfg.__dict__, "workers": args.workers})
    replay = Path(args.out).parent if args.out not in (None, "-") else Path(".")
    rep = run_experiment(cfg, replay_dir=replay)
    write_csv(rep.rows, _stdout_or(args.out))
    for n, ratio in min_ratio_by_n(rep.rows).items():
        print(f"n={n}: mean min-pair ratio {ratio:.4g}", file=sys.stderr)


def build_parser():
    ap = argparse.ArgumentParser(prog="altconn", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help, seed_default=0):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--seed", type=int, default=seed_default)
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.set_defaults(func=func)
        return sp

    def source(sp):
        sp.add_argument("--graph", help="edge-list file")
        sp.add_argument("--n", type=int)
        sp.add_argument("--p", type=float)

    sp = add("gen", cmd_gen, "sample G(n, p)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)

    sp = add("color", cmd_color, "color edges uniformly at random")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--r", type=int, default=2)

    sp = add("verify", cmd_verify, "check a path system against a colored graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--paths", required=True)

    sp = add("kappa2", cmd_kappa2, "alternating 2-path counts over sampled pairs")
    source(sp)
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--pairs", type=int, default=100)

    for name, func, text in (("dense", cmd_dense, "layered construction for one pair"),
                             ("sparse", cmd_sparse, "tree construction for one pair")):
        sp = add(name, func, text)
        source(sp)
        sp.add_argument("--u", type=int, required=True)
        sp.add_argument("--v", type=int, required=True)
        sp.add_argument("--ell", type=int, required=True)
        if name == "sparse":
            sp.add_argument("--k", type=int)

    sp = add("oracle", cmd_oracle, "exact packing for a pair, or exact kappa without --u/--v")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--r", type=int)
    sp.add_argument("--u", type=int)
    sp.add_argument("--v", type=int)

    sp = add("pseudo", cmd_pseudo, "dense construction against the spectral target")
    source(sp)
    sp.add_argument("--ell", type=int, default=4)
    sp.add_argument("--pairs", type=int, default=20)

    sp = add("experiment", cmd_experiment, "run a config file", seed_default=None)
    sp.add_argument("--config", required=True, help="config path or a packaged name")
    sp.add_argument("--workers", type=int)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except AltconnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
