#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy fallback.

Times the three hot paths on representative workloads:

* erfcx over a large grid (potential-curve scale),
* the reduced interaction kernel over the same grid,
* a batch of adaptive window integrals (two-photon phase-surface scale).

Run:  python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import importlib
import time

import numpy as np


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(module_name: str, repeat: int):
    impl = importlib.import_module(f"hollowcore.kernels.{module_name}")

    rng = np.random.default_rng(42)
    grid = rng.uniform(-30.0, 30.0, 2_000_000)
    zeta = rng.uniform(0.0, 5_000.0, 2_000_000)
    n_windows = 4001
    u = np.linspace(-2500.0, 2500.0, n_windows)
    lo, hi = u - 5000.0, u

    # warm-up (compilation for the jitted backend)
    impl.erfcx(grid[:16])
    impl.potential_reduced(zeta[:16])
    impl.integrate_windows(lo[:4], hi[:4], rel_tol=1e-8)

    results = {
        "erfcx 2e6 pts": _best_of(lambda: impl.erfcx(grid), repeat),
        "kernel 2e6 pts": _best_of(lambda: impl.potential_reduced(zeta), repeat),
        f"windows {n_windows}": _best_of(
            lambda: impl.integrate_windows(lo, hi, rel_tol=1e-8), repeat),
    }
    return results


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    all_results = {}
    for name in ("numpy_impl", "numba_impl"):
        try:
            all_results[name] = bench_backend(name, args.repeat)
        except ImportError as exc:
            print(f"{name}: unavailable ({exc})")

    workloads = next(iter(all_results.values())).keys()
    print(f"{'workload':>20s} | " + " | ".join(f"{n:>12s}" for n in all_results))
    for wl in workloads:
        cells = " | ".join(f"{all_results[n][wl] * 1e3:9.2f} ms"
                           for n in all_results)
        print(f"{wl:>20s} | {cells}")
    if len(all_results) == 2:
        np_res, nb_res = (all_results["numpy_impl"], all_results["numba_impl"])
        print("\nspeedup (numpy / numba):")
        for wl in workloads:
            print(f"{wl:>20s} : {np_res[wl] / nb_res[wl]:6.1f}x")


if __name__ == "__main__":
    main()
