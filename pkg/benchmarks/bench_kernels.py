"""Benchmark the numba-jitted hot kernels against the pure-numpy fallback.

Run:
    python3 benchmarks/bench_kernels.py

The same comparison can be forced library-wide by setting
BERGKREIN_DISABLE_NUMBA=1, which routes bergkrein through the numpy path.
"""
import argparse
import time

import numpy as np

from bergkrein import _kernels


def _time(fn, args_list, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_split_sum(n_calls, n_max, repeats):
    rng = np.random.default_rng(0)
    args = [(complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)),
             complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)),
             n_max) for _ in range(n_calls)]
    if _kernels.NUMBA_ENABLED:
        _kernels.split_sum(*args[0])  # warm up the jit
    t_hot = _time(_kernels.split_sum, args, repeats)
    t_np = _time(_kernels.split_sum_numpy, args, repeats)
    return t_hot, t_np


def bench_eigenvalues(n_calls, dim, repeats):
    rng = np.random.default_rng(1)
    args = []
    for _ in range(n_calls):
        b = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = np.ascontiguousarray(b + b.conj().T)
        args.append((h, 1e-14 * float(np.max(np.abs(h)))))
    if _kernels.NUMBA_ENABLED:
        _kernels.hermitian_eigenvalues(*args[0])
    t_hot = _time(_kernels.hermitian_eigenvalues, args, repeats)
    t_np = _time(_kernels.hermitian_eigenvalues_numpy, args, repeats)
    return t_hot, t_np


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--calls", type=int, default=300)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    label = "numba" if _kernels.NUMBA_ENABLED else "python (numba disabled)"
    print(f"hot path: {label}")
    print(f"{'kernel':<28} {'hot':>10} {'numpy':>10} {'speedup':>8}")
    for n_max in (40, 120):
        th, tn = bench_split_sum(args.calls, n_max, args.repeats)
        print(f"split_sum N={n_max:<16} {th:>9.4f}s {tn:>9.4f}s {tn / th:>7.1f}x")
    for dim in (4, 8, 16):
        th, tn = bench_eigenvalues(args.calls, dim, args.repeats)
        print(f"hermitian_eigenvalues n={dim:<3} {th:>9.4f}s {tn:>9.4f}s {tn / th:>7.1f}x")


if __name__ == "__main__":
    main()
