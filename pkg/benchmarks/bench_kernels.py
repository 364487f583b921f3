"""Time the numba kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--n 64 256 1024] [--repeat 5]

Each kernel is run once untimed on both backends (JIT warm-up), then the
best of ``--repeat`` runs is reported along with the numpy/numba ratio.
Outputs are compared so a speed-up never hides a wrong answer.
"""
import argparse
import time

import numpy as np

from floodnet import _kernels
from floodnet.graph import random_cycle_graph
from floodnet.montecarlo import draw_permutations


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases(n, rng):
    words = _kernels.pack_rows(rng.random((n, n)) < 0.3)
    edges = random_cycle_graph(n, rng).edge_array - 1
    src = np.ascontiguousarray(edges[:, 0])
    dst = np.ascontiguousarray(edges[:, 1])
    perms = draw_permutations(n, n - 1, rng)
    mask = _kernels.full_mask(n)
    a = rng.random((n, n)) < 2.0 / n
    b = rng.random((n, n)) < 2.0 / n
    return {
        "flood_scatter": lambda k: k.flood_scatter(words, src, dst),
        "popcount_rows": lambda k: k.popcount_rows(words),
        "cycle_trial": lambda k: k.cycle_trial(perms, mask),
        "bool_matmul": lambda k: k.bool_matmul(a, b),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[64, 256, 1024])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    fast = _kernels.numba_kernels
    if fast is None:
        print("numba is not installed; only the numpy backend is available")
    print(f"{'kernel':<14} {'n':>6} {'numpy ms':>10} {'numba ms':>10} {'ratio':>8}")
    rng = np.random.default_rng(args.seed)
    for n in args.n:
        for name, call in cases(n, rng).items():
            t_np, out_np = best_of(lambda: call(_kernels.numpy_kernels), args.repeat)
            if fast is None:
                print(f"{name:<14} {n:>6} {t_np * 1e3:>10.3f} {'-':>10} {'-':>8}")
                continue
            call(fast)
            t_nb, out_nb = best_of(lambda: call(fast), args.repeat)
            if not same(out_np, out_nb):
                raise SystemExit(f"{name} n={n}: backends disagree")
            print(f"{name:<14} {n:>6} {t_np * 1e3:>10.3f} {t_nb * 1e3:>10.3f} {t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
