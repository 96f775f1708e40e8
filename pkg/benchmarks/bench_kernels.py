#!/usr/bin/env python3
"""Benchmark: compiled log-domain kernels vs the pure-Python (numpy) fallback.

Times the four hot kernels on representative workloads — the index sweeps
behind ratio-bound scans and windowed operator norms, and the log-sum-exp
accumulation behind every orbit norm — and reports the speedup.  Also checks
that both backends agree numerically on every workload.

Usage:
    python benchmarks/bench_kernels.py [--sizes 1000 100000 1000000] [--repeats 7]
"""

import argparse
import math
import time

import numpy as np

from shiftorbits import _core_py

try:
    from shiftorbits import _core
except ImportError:
    _core = None


def best_of(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(size, rng):
    ns = rng.integers(-(10**6), 10**6, size=size).astype(np.int64)
    xs = rng.uniform(-5000.0, 5000.0, size=size)
    log3 = math.log(3.0)
    log2 = math.log(2.0)
    return [
        ("krein_log_weights", lambda impl: impl.krein_log_weights(ns, log3)),
        ("geometric_log_weights", lambda impl: impl.geometric_log_weights(ns, log2)),
        ("mixed_log_weights", lambda impl: impl.mixed_log_weights(ns)),
        ("logsumexp", lambda impl: impl.logsumexp(xs)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[64, 10000, 1000000])
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    if _core is None:
        print("compiled extension not built; timing the numpy fallback only")

    header = f"{'kernel':<24}{'n':>9}{'python ms':>12}"
    if _core is not None:
        header += f"{'compiled ms':>13}{'speedup':>9}"
    print(header)
    print("-" * len(header))

    rng = np.random.default_rng(0)
    for size in args.sizes:
        for name, call in workloads(size, rng):
            py = best_of(lambda: call(_core_py), args.repeats)
            line = f"{name:<24}{size:>9}{py * 1e3:>12.3f}"
            if _core is not None:
                cy = best_of(lambda: call(_core), args.repeats)
                line += f"{cy * 1e3:>13.3f}{py / cy:>9.2f}x"
                a, b = call(_core_py), call(_core)
                if not np.allclose(a, b, rtol=1e-13, atol=1e-10):
                    raise SystemExit(f"backend mismatch in {name} at n={size}")
            print(line)
    if _core is not None:
        print("\nbackends agree on every workload (rtol 1e-13)")


if __name__ == "__main__":
    main()
