#!/usr/bin/env python3
"""Benchmark the compiled integrand kernels against the numpy fallback.

Times the three per-point denominator kernels on identical inputs and
reports throughput plus the speedup of the compiled extension.

    python benchmarks/bench_kernels.py --points 65536 --m 5 --repeat 7
"""

import argparse
import math
import time

import numpy as np

from gendiff._backend import get_kernels


def best_of(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=1 << 16)
    ap.add_argument("--m", type=int, default=5)
    ap.add_argument("--s", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    x = np.ascontiguousarray(rng.uniform(0, 2 * math.pi, (args.points, args.m)))
    a = np.sort(rng.uniform(0.1, 0.5, args.m))
    b = a + 0.05

    cases = {
        "lhs_den": lambda k: k.lhs_den(x, 1.0, 8.0, args.s),
        "rhs_den": lambda k: k.rhs_den(x, 8.0, 10.0, args.s),
        "jcell_den": lambda k: k.jcell_den(x, a, b, args.s),
    }

    backends = {"python": get_kernels("python")}
    compiled = get_kernels("compiled")
    if compiled is not None:
        backends["compiled"] = compiled
    else:
        print("compiled extension not built; timing the fallback only")

    print(f"points={args.points} m={args.m} s={args.s} (best of {args.repeat})")
    header = f"{'kernel':<12}" + "".join(f"{name:>16}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name, call in cases.items():
        times = {bk: best_of(lambda k=kern: call(k), args.repeat)
                 for bk, kern in backends.items()}
        row = f"{name:<12}"
        for bk in backends:
            mpts = args.points / times[bk] / 1e6
            row += f"{mpts:>11.1f} Mp/s"
        if len(backends) == 2:
            row += f"{times['python'] / times['compiled']:>9.2f}x"
        print(row)

    # correctness cross-check on the same inputs
    if compiled is not None:
        py = backends["python"]
        for name, call in cases.items():
            np.testing.assert_allclose(call(compiled), call(py),
                                       rtol=1e-9, atol=1e-12)
        print("cross-check: compiled and fallback agree to rounding")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
