"""Time the compiled and pure-Python kernel backends side by side.

    python3 benchmarks/bench_kernels.py [--n 300] [--c 500000] [--repeats 3]
"""

import argparse
import time

import numpy as np

from imsfeat import kernels


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def cases(args):
    rng = np.random.default_rng(args.seed)
    w = np.sort(rng.integers(1, args.c, size=args.n, endpoint=True))[::-1].astype(np.int64).copy()
    kw = np.sort(rng.integers(1, 10**6, size=args.kmeans_n))[::-1].astype(np.int64).copy()
    values = rng.integers(1, 10**4, size=args.n).astype(np.int64)

    def counting(impl):
        return lambda: impl.ims_weight_counts(w, args.c)

    def kmeans(impl):
        def run():
            prev = np.full(len(kw) + 1, np.inf)
            prev[0] = 0.0
            for g in range(1, 11):
                prev = impl.kmeans_step(prev, kw, g)[0]
        return run

    def zero_one(impl):
        return lambda: impl.zero_one_max(values, w, args.c)

    return {"ims_weight_counts": counting, "kmeans_step x10": kmeans, "zero_one_max": zero_one}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=300)
    ap.add_argument("--c", type=int, default=500_000)
    ap.add_argument("--kmeans-n", type=int, default=1000)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = {name: kernels.load_backend(name) for name in kernels.available_backends()}
    print(f"n={args.n} c={args.c} kmeans_n={args.kmeans_n} backends={list(backends)}")
    print(f"{'kernel':<20}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, make in cases(args).items():
        times = {b: best_of(make(impl), args.repeats) for b, impl in backends.items()}
        row = f"{name:<20}" + "".join(f"{t:>11.3f}s" for t in times.values())
        if len(times) == 2:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
