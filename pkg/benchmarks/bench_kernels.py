"""Compiled vs pure-Python kernels on workloads taken from the library.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit

from hypjac import _kernels_py
from hypjac.derham import complex_for
from hypjac.linalg import integer_rows
from hypjac.symplectic import KoszulComplex

try:
    from hypjac import _kernels as compiled
except ImportError:
    compiled = None


def koszul_matrix(g, n):
    rows, _, tgt = KoszulComplex(g).matrix(g - 1, n)
    return integer_rows(rows), len(tgt)


def derham_matrix(g, d):
    rows, _, tgt = complex_for(g).matrix(g - 1, d)
    return integer_rows(rows), len(tgt)


def random_dense(n, m, seed=0):
    rng = random.Random(seed)
    return [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)], m


def random_poly(nvars, nterms, seed):
    rng = random.Random(seed)
    return {
        tuple(rng.randint(0, 4) for _ in range(nvars)): rng.randint(-5, 5) or 1
        for _ in range(nterms)
    }


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    return label, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    workloads = {
        "bareiss koszul g=3 n=15": ("bareiss_rank", koszul_matrix(3, 15)),
        "bareiss derham g=3 d=9": ("bareiss_rank", derham_matrix(3, 9)),
        "bareiss dense 60x60": ("bareiss_rank", random_dense(60, 60)),
        "rank mod p dense 120x120": ("rank_mod_p", random_dense(120, 120)),
        "poly_mul 17 vars 60x60 terms": ("poly_mul", (random_poly(17, 60, 1), random_poly(17, 60, 2))),
    }
    backends = [("python", _kernels_py)] + ([("compiled", compiled)] if compiled else [])
    print(f"{'workload':34s} " + " ".join(f"{name:>12s}" for name, _ in backends) + "   speedup")
    for label, (kernel, data) in workloads.items():
        times = []
        for _, mod in backends:
            fn = getattr(mod, kernel)
            if kernel == "bareiss_rank":
                rows, m = data
                call = lambda: fn([r[:] for r in rows], m)
            elif kernel == "rank_mod_p":
                rows, m = data
                call = lambda: fn([r[:] for r in rows], m, 2147483629)
            else:
                a, b = data
                call = lambda: fn(a, b)
            times.append(bench(label, call, args.repeat)[1])
        speed = f"{times[0] / times[1]:8.1f}x" if len(times) == 2 else "       -"
        print(f"{label:34s} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times) + f"  {speed}")


if __name__ == "__main__":
    main()
