#!/usr/bin/env python3
"""Benchmark: compiled Cython kernels vs the pure-numpy fallback.

Times the two hot paths (truncated series products and the RK4 dual
Frenet integrator) through both backends and prints the speedups.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from ruledkit import _kernels_py

try:
    from ruledkit import _kernels
except ImportError:
    _kernels = None


def time_it(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_series(mod, n_ops=20000, order=10, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(order + 1)
    b = rng.standard_normal(order + 1)
    b[0] = 1.5
    aa = np.abs(a) + 1.0

    def run():
        for _ in range(n_ops):
            mod.series_mul(a, b)
            mod.series_div(a, b)
            mod.series_sqrt(aa)

    return time_it(run)


def bench_frenet(mod, nsteps=20000):
    ss = np.linspace(0.0, 2.0, 2 * nsteps + 1)
    inv = np.column_stack([np.ones_like(ss), 0.3 * ss, 0.5 + 0.1 * ss, 1.0 + 0.0 * ss])
    y0 = np.eye(3)
    frame = np.concatenate([[1, 0, 0], [0, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 1], [0, 0, 0]]).astype(float)
    h = 2.0 / nsteps

    def run():
        mod.frenet_rk4(inv, frame, h, nsteps)

    return time_it(run, repeat=3)


def main():
    rows = []
    for name, bench, args in [
        ("series ops (60k calls, order 10)", bench_series, {}),
        ("frenet_rk4 (20k steps)", bench_frenet, {}),
    ]:
        t_pure = bench(_kernels_py, **args)
        if _kernels is not None:
            t_comp = bench(_kernels, **args)
            rows.append((name, t_pure, t_comp, t_pure / t_comp))
        else:
            rows.append((name, t_pure, None, None))

    print(f"{'benchmark':40s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, tp, tc, sp in rows:
        if tc is None:
            print(f"{name:40s} {tp * 1e3:9.2f}ms {'n/a':>10s} {'n/a':>8s}")
        else:
            print(f"{name:40s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {sp:7.1f}x")
    if _kernels is None:
        print("\ncompiled extension not available; showing pure backend only")


if __name__ == "__main__":
    main()
