"""Compare the compiled and pure-Python kernels on random inputs.

Usage: python benchmarks/bench_kernels.py [--n 2000] [--repeat 3]
"""
import argparse
import timeit

from altconn._backend import available_backends
from altconn.graph_core import bipartite_gnp, gnp_generate


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000, help="side size / vertex count")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    bg = bipartite_gnp(args.n, args.n, 8 / args.n, args.seed)
    g = gnp_generate(args.n, 10 / args.n, args.seed)
    backends = available_backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the Python kernels only")

    print(f"{'kernel':<18}{'backend':<10}{'seconds':>10}")
    times = {}
    for name, mod in backends.items():
        hk = bench(lambda: mod.hopcroft_karp(bg.size_a, bg.size_b, bg.indptr, bg.indices),
                   args.repeat)
        ecc = bench(lambda: mod.bfs_eccentricity(g.n, g.indptr, g.indices), args.repeat)
        times[name] = (hk, ecc)
        print(f"{'hopcroft_karp':<18}{name:<10}{hk:>10.4f}")
        print(f"{'bfs_eccentricity':<18}{name:<10}{ecc:>10.4f}")
    if len(times) == 2:
        py, cy = times["python"], times["cython"]
        print(f"speedup: hopcroft_karp {py[0] / cy[0]:.1f}x, "
              f"bfs_eccentricity {py[1] / cy[1]:.1f}x")


if __name__ == "__main__":
    main()
