"""Pure numpy implementations of the hot kernels.

These are the fallback used when the compiled extension is unavailable.
Same signatures and same results as apcorr._kernels; the compiled module
is just faster.  See benchmarks/bench_kernels.py for the comparison.
"""

from __future__ import annotations

import numpy as np

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def spf_fill(start: int, length: int, base_primes: np.ndarray) -> np.ndarray:
    """Smallest prime factor table for the window (start, start + length].

    out[i] is the smallest prime factor of n = start + 1 + i, with
    out[i] == n when n is prime.  base_primes must contain every prime
    up to isqrt(start + length).
    """
    out = np.zeros(length, dtype=np.int64)
    for p in base_primes:
        p = int(p)
        first = (start // p + 1) * p
        off = first - start - 1
        if off >= length:
            continue
        view = out[off::p]
        view[view == 0] = p
    # Entries never hit by a base prime are primes themselves.
    idx = np.nonzero(out == 0)[0]
    out[idx] = start + 1 + idx
    return out


def direct_corr_int(f: np.ndarray, g: np.ndarray, hmax: int) -> np.ndarray:
    """Shifted dot products in exact integer arithmetic.

    Returns c of length 2*hmax + 1 with c[s] = sum_j f[j] * g[j + s],
    so shift h corresponds to index hmax + h.  Requires
    len(g) == len(f) + 2*hmax.
    """
    n = f.shape[0]
    out = np.empty(2 * hmax + 1, dtype=np.int64)
    for s in range(2 * hmax + 1):
        out[s] = np.dot(f, g[s : s + n])
    return out


def direct_corr_real(f: np.ndarray, g: np.ndarray, hmax: int) -> np.ndarray:
    """Shifted dot products for real weights.

    Products are formed in float64 and accumulated in extended precision,
    which keeps the summation error far below the 1e-9 relative contract
    (the compiled twin uses Neumaier compensation instead).
    """
    n = f.shape[0]
    out = np.empty(2 * hmax + 1, dtype=np.float64)
    for s in range(2 * hmax + 1):
        prod = f * g[s : s + n]
        out[s] = float(np.sum(prod, dtype=np.longdouble))
    return out


def fnv1a64(data) -> int:
    """64-bit FNV-1a hash of a bytes-like object."""
    h = _FNV_OFFSET
    for b in bytes(data):
        h = ((h ^ b) * _FNV_PRIME) & _MASK64
    return h
