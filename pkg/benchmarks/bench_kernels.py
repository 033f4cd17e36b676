"""Compare the compiled kernels against the pure numpy fallback.

Runs each hot kernel on a representative workload with both backends,
checks that the results agree, and prints a timing table.  Usage:

    python3 benchmarks/bench_kernels.py [--repeats N]

The compiled column is skipped (with a note) when the extension is not
built; install the package normally to get it.
"""

import argparse
import time

import numpy as np

from apcorr import _kernels_py
from apcorr.arith import primes_up_to

try:
    from apcorr import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads():
    rng = np.random.default_rng(0)

    start, length = 10**9, 2_000_000
    base = primes_up_to(int((start + length) ** 0.5) + 1)

    n, hmax = 150_000, 250
    fi = rng.integers(0, 2, size=n).astype(np.int64)
    gi = rng.integers(0, 2, size=n + 2 * hmax).astype(np.int64)
    fr = rng.standard_normal(n)
    gr = rng.standard_normal(n + 2 * hmax)

    blob = rng.integers(0, 256, size=262_144, dtype=np.uint8).tobytes()

    return [
        (
            "spf_fill",
            f"window ({start:.0e}, +{length:.0e}]",
            lambda impl: impl.spf_fill(start, length, base),
            lambda a, b: np.array_equal(a, b),
        ),
        (
            "direct_corr_int",
            f"n={n}, hmax={hmax}",
            lambda impl: impl.direct_corr_int(fi, gi, hmax),
            lambda a, b: np.array_equal(a, b),
        ),
        (
            "direct_corr_real",
            f"n={n}, hmax={hmax}",
            lambda impl: impl.direct_corr_real(fr, gr, hmax),
            lambda a, b: np.allclose(a, b, rtol=1e-12, atol=1e-12),
        ),
        (
            "fnv1a64",
            "256 KiB blob",
            lambda impl: impl.fnv1a64(blob),
            lambda a, b: a == b,
        ),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats")
    args = parser.parse_args()

    if _kernels is None:
        print("compiled extension not built; timing the pure backend only\n")

    header = f"{'kernel':<18} {'workload':<24} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, desc, run, same in workloads():
        pure_result = run(_kernels_py)
        pure_t = best_of(lambda: run(_kernels_py), args.repeats)
        if _kernels is not None:
            comp_result = run(_kernels)
            if not same(pure_result, comp_result):
                print(f"{name:<18} {desc:<24} BACKENDS DISAGREE")
                return 1
            comp_t = best_of(lambda: run(_kernels), args.repeats)
            print(
                f"{name:<18} {desc:<24} {pure_t * 1e3:>8.1f}ms {comp_t * 1e3:>8.1f}ms "
                f"{pure_t / comp_t:>7.1f}x"
            )
        else:
            print(f"{name:<18} {desc:<24} {pure_t * 1e3:>8.1f}ms {'-':>10} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
