"""Head-to-head timing of the clustering kernels: numba @njit union-find vs
the pure-numpy fallback, over growing fragment counts.

Run:  python3 benchmarks/bench_kernels.py [--sizes 200,1000,3000] [--repeat 5]
"""

import argparse
import random
import time

import numpy as np

from infocollage.kernels import backend_numba, backend_numpy


def make_rects(n, seed=0, span=4000):
    rng = random.Random(seed)
    return np.array(
        [
            (rng.uniform(-span, span), rng.uniform(-span, span),
             rng.uniform(10, 200), rng.uniform(10, 120))
            for _ in range(n)
        ],
        dtype=np.float64,
    )


def bench(fn, rects, eps, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(rects, eps)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="200,1000,3000")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--eps", type=float, default=120.0)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    # trigger jit compilation outside the timed region
    warmup = make_rects(8)
    backend_numba.component_labels(warmup, args.eps)

    print(f"{'n':>6} {'numba (ms)':>12} {'numpy (ms)':>12} {'speedup':>9}")
    for n in sizes:
        rects = make_rects(n, seed=n)
        agree = np.array_equal(
            backend_numba.component_labels(rects, args.eps),
            backend_numpy.component_labels(rects, args.eps),
        )
        t_nb = bench(backend_numba.component_labels, rects, args.eps, args.repeat)
        t_np = bench(backend_numpy.component_labels, rects, args.eps, args.repeat)
        flag = "" if agree else "  LABELS DISAGREE"
        print(f"{n:>6} {t_nb * 1e3:>12.2f} {t_np * 1e3:>12.2f} {t_np / t_nb:>8.1f}x{flag}")


if __name__ == "__main__":
    main()
