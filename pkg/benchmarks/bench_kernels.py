#!/usr/bin/env python3
"""Compiled vs pure-numpy kernels, and the FFT product vs the direct one.

    python3 benchmarks/bench_kernels.py [--sizes 1024 4096 8192] [--repeat 5] [--json out.json]
"""
import argparse
import json
import sys
import time

import numpy as np

from hankelmu import _kernels
from hankelmu.hankel import HankelOp, apply_fast
from hankelmu.measures import lebesgue, moments_upto


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(sizes, repeat):
    try:
        cmod = _kernels.backend_module("cython")
    except ImportError:
        cmod = None
    pmod = _kernels.backend_module("python")
    rng = np.random.default_rng(0)
    mom = moments_upto(lebesgue(), 2 * max(sizes) - 2).values
    rows = []
    for n in sizes:
        a = rng.random(n)
        H = HankelOp(n, mom[:2 * n - 1])
        # nodes crowd toward 1 as in the moment quadrature; uniform nodes on
        # (0, 1) would drive t**n into subnormals and time that instead
        t_nodes, c = 1.0 - rng.random(n) / n, rng.random(n)
        cases = {
            "matvec": lambda impl: _kernels.hankel_matvec(H.moments, a, impl=impl),
            "power_sums": lambda impl: _kernels.power_sums(t_nodes, c, n, impl=impl),
            "horner_real": lambda impl: _kernels.horner_real(a, t_nodes, impl=impl),
        }
        for name, fn in cases.items():
            t_py = best_of(lambda: fn(pmod), repeat)
            t_c = best_of(lambda: fn(cmod), repeat) if cmod is not None else float("nan")
            rows.append({"N": n, "kernel": name, "python_s": t_py, "cython_s": t_c,
                         "speedup": t_py / t_c})
        t_naive = best_of(lambda: _kernels.hankel_matvec(H.moments, a), repeat)
        t_fast = best_of(lambda: apply_fast(H, a), repeat)
        rows.append({"N": n, "kernel": "fast_vs_naive", "python_s": t_naive, "cython_s": t_fast,
                     "speedup": t_naive / t_fast})
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[256, 1024, 4096, 8192])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", default=None, help="also write the rows here")
    args = parser.parse_args(argv)

    rows = bench(args.sizes, args.repeat)
    print(f"active backend: {_kernels.BACKEND}")
    print("for fast_vs_naive the columns are naive (active backend) and FFT times")
    print(f"{'N':>6} {'kernel':<14} {'python/naive s':>15} {'cython/fast s':>14} {'speedup':>8}")
    for r in rows:
        print(f"{r['N']:>6} {r['kernel']:<14} {r['python_s']:>15.3e} {r['cython_s']:>14.3e} "
              f"{r['speedup']:>8.1f}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
