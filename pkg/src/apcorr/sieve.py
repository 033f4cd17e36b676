"""Segmented factor sieve and the weighted sequences built from it.

The central object is a smallest-prime-factor table over a half-open
window (start, start + length].  Everything downstream (indicator
sequences for products of two primes, logarithmic weights, von Mangoldt
weights) is derived from that table by vectorised classification.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import arith, kernels
from .errors import DomainError, ParameterError

# Chunk size for segment construction; chosen so a chunk's spf slice stays
# cache-friendly and threads get useful units of work.
_CHUNK = 1 << 22

RESTRICTED = "restricted"
TYPICAL = "typical"

KIND_E2_INDICATOR = "e2_indicator"
KIND_E2_LOG = "e2_log"
KIND_VON_MANGOLDT = "von_mangoldt"
KIND_PRIME_INDICATOR = "prime_indicator"
KIND_CUSTOM = "custom"

_KINDS = frozenset(
    {
        KIND_E2_INDICATOR,
        KIND_E2_LOG,
        KIND_VON_MANGOLDT,
        KIND_PRIME_INDICATOR,
        KIND_CUSTOM,
    }
)


@dataclass(frozen=True)
class E2Params:
    """Interval constraint on the smaller prime factor of a two-prime product.

    variant "restricted" means the half-open interval (low, high];
    variant "typical" means the closed interval [low, high].
    """

    variant: str
    low: int
    high: int

    def __post_init__(self):
        if self.variant not in (RESTRICTED, TYPICAL):
            raise ParameterError(f"unknown E2 variant {self.variant!r}")
        if self.low < 1 or self.high < self.low:
            raise ParameterError(
                f"bad factor interval: low={self.low}, high={self.high}"
            )

    @classmethod
    def restricted(cls, low: int, high: int) -> "E2Params":
        return cls(RESTRICTED, low, high)

    @classmethod
    def typical(cls, low: int, high: int) -> "E2Params":
        return cls(TYPICAL, low, high)

    def contains(self, p: int) -> bool:
        """Whether a (prime) value lies in the interval."""
        if self.variant == RESTRICTED:
            return self.low < p <= self.high
        return self.low <= p <= self.high

    def interval_bounds(self) -> tuple[int, int]:
        """The interval as half-open (lo, hi] bounds."""
        if self.variant == RESTRICTED:
            return self.low, self.high
        return self.low - 1, self.high

    def validate_for_window(self, window_start: int) -> None:
        """Reject parameters that would allow both prime factors in range.

        Requiring high^2 <= window start guarantees the smaller factor of
        any window member is the only one that can lie in the interval, so
        membership is unambiguous.
        """
        if self.high * self.high > window_start:
            raise ParameterError(
                f"p_high={self.high} violates p_high^2 <= window start "
                f"({self.high * self.high} > {window_start})"
            )

    def prime_reciprocal_sum(self) -> float:
        """Sum of 1/p over primes p in the interval."""
        lo, hi = self.interval_bounds()
        return mertens_sum(lo, hi)


@dataclass(frozen=True)
class SieveSegment:
    """Smallest-prime-factor table over the window (start, start + length].

    spf[i] is the smallest prime factor of n = start + 1 + i, and equals
    n itself exactly when n is prime.
    """

    start: int
    spf: np.ndarray = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.spf)

    @property
    def end(self) -> int:
        return self.start + len(self.spf)

    def numbers(self) -> np.ndarray:
        """The integers the window covers, as an int64 array."""
        return self.start + 1 + np.arange(len(self.spf), dtype=np.int64)

    def spf_of(self, n: int) -> int:
        """Smallest prime factor of a window member."""
        if not self.start < n <= self.end:
            raise DomainError(f"{n} outside window ({self.start}, {self.end}]")
        return int(self.spf[n - self.start - 1])

    def subsegment(self, start: int, length: int) -> "SieveSegment":
        """View of the table restricted to (start, start + length]."""
        if start < self.start or start + length > self.end:
            raise ParameterError(
                f"({start}, {start + length}] not contained in "
                f"({self.start}, {self.end}]"
            )
        lo = start - self.start
        return SieveSegment(start, self.spf[lo : lo + length])


@dataclass(frozen=True)
class WeightedSeries:
    """Values of an arithmetic weight on the window (start, start + length]."""

    start: int
    values: np.ndarray = field(repr=False)
    kind: str

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ParameterError(f"unknown series kind {self.kind!r}")

    @property
    def length(self) -> int:
        return len(self.values)

    @property
    def end(self) -> int:
        return self.start + len(self.values)

    def value_of(self, n: int):
        if not self.start < n <= self.end:
            raise DomainError(f"{n} outside window ({self.start}, {self.end}]")
        return self.values[n - self.start - 1]

    def slice(self, start: int, length: int) -> "WeightedSeries":
        """Restriction to the subwindow (start, start + length]."""
        if start < self.start or start + length > self.end:
            raise ParameterError(
                f"({start}, {start + length}] not contained in "
                f"({self.start}, {self.end}]"
            )
        lo = start - self.start
        return WeightedSeries(start, self.values[lo : lo + length], self.kind)

    def total(self):
        """Sum of the values (exact for integer dtypes)."""
        if np.issubdtype(self.values.dtype, np.integer):
            return int(self.values.sum())
        return float(np.sum(self.values, dtype=np.longdouble))


def build_segment(start: int, length: int, threads: int = 1) -> SieveSegment:
    """Sieve smallest prime factors over (start, start + length].

    Parameters
    ----------
    start : int
        Window start, at least 1 (the window then begins at start + 1 >= 2).
    length : int
        Window length, at least 1.
    threads : int
        Worker count for chunked construction.  The output is identical
        for every thread count; chunks are computed independently and
        concatenated in order.
    """
    if start < 1:
        raise ParameterError(f"window start must be >= 1, got {start}")
    if length < 1:
        raise ParameterError(f"window length must be >= 1, got {length}")
    if threads < 1:
        raise ParameterError(f"thread count must be >= 1, got {threads}")
    end = start + length
    base = arith.primes_up_to(math.isqrt(end))

    if length <= _CHUNK or threads == 1:
        if length <= _CHUNK:
            spf = kernels.spf_fill(start, length, base)
        else:
            parts = []
            for lo in range(0, length, _CHUNK):
                n = min(_CHUNK, length - lo)
                parts.append(kernels.spf_fill(start + lo, n, base))
            spf = np.concatenate(parts)
        return SieveSegment(start, spf)

    offsets = list(range(0, length, _CHUNK))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futs = [
            pool.submit(kernels.spf_fill, start + lo, min(_CHUNK, length - lo), base)
            for lo in offsets
        ]
        parts = [f.result() for f in futs]
    return SieveSegment(start, np.concatenate(parts))


def factor_two(n: int, seg: SieveSegment):
    """Ordered prime pair (p1, p2) with n = p1 * p2, or None.

    Returns None when n does not have exactly two prime factors counted
    with multiplicity.  n = p^2 yields (p, p).
    """
    p = seg.spf_of(n)
    if p == n:
        return None
    m = n // p
    if m == p or (m > p and arith.is_prime(m)):
        return (p, m)
    return None


def _cofactor_prime_flags(seg: SieveSegment, params: E2Params) -> np.ndarray:
    """Primality flags big enough to test every cofactor n // spf(n)."""
    lo, hi = params.interval_bounds()
    first = lo + 1
    while first <= hi and not arith.is_prime(first):
        first += 1
    if first > hi:
        return np.zeros(1, dtype=bool)
    return arith.prime_flags(seg.end // first)


def _e2_member_mask(seg: SieveSegment, params: E2Params):
    """Boolean member mask plus the cofactor array for the members."""
    params.validate_for_window(seg.start)
    lo, hi = params.interval_bounds()
    p = seg.spf
    in_interval = (p > lo) & (p <= hi)
    ns = seg.numbers()
    flags = _cofactor_prime_flags(seg, params)
    cof = np.zeros_like(ns)
    np.floor_divide(ns, p, out=cof, where=in_interval)
    member = in_interval.copy()
    member[in_interval] = (cof[in_interval] > p[in_interval]) & flags[
        cof[in_interval]
    ]
    return member, cof


def e2_indicator(seg: SieveSegment, params: E2Params) -> WeightedSeries:
    """0/1 series marking n = p1 * p2 with p1 < p2 and p1 in the interval."""
    member, _ = _e2_member_mask(seg, params)
    return WeightedSeries(seg.start, member.astype(np.int64), KIND_E2_INDICATOR)


def e2_log_weights(seg: SieveSegment, params: E2Params) -> WeightedSeries:
    """Series equal to log(p2) on members n = p1 * p2 and 0 elsewhere."""
    member, cof = _e2_member_mask(seg, params)
    vals = np.zeros(seg.length, dtype=np.float64)
    vals[member] = np.log(cof[member].astype(np.float64))
    return WeightedSeries(seg.start, vals, KIND_E2_LOG)


def von_mangoldt_weights(seg: SieveSegment) -> WeightedSeries:
    """The von Mangoldt weight log p on prime powers p^k, 0 elsewhere."""
    vals = np.zeros(seg.length, dtype=np.float64)
    ns = seg.numbers()
    prime_mask = seg.spf == ns
    vals[prime_mask] = np.log(ns[prime_mask].astype(np.float64))
    # Proper prime powers p^k, k >= 2, contribute log p.
    for p in arith.primes_up_to(math.isqrt(seg.end)):
        p = int(p)
        pk = p * p
        while pk <= seg.end:
            if pk > seg.start:
                vals[pk - seg.start - 1] = math.log(p)
            pk *= p
    return WeightedSeries(seg.start, vals, KIND_VON_MANGOLDT)


def prime_indicator(seg: SieveSegment) -> WeightedSeries:
    """0/1 series marking primes in the window."""
    mask = seg.spf == seg.numbers()
    return WeightedSeries(seg.start, mask.astype(np.int64), KIND_PRIME_INDICATOR)


def mertens_sum(lo: int, hi: int) -> float:
    """Sum of 1/p over primes p in (lo, hi], by direct sieving."""
    if lo < 0 or hi < lo:
        raise ParameterError(f"bad interval ({lo}, {hi}]")
    if hi < 2:
        return 0.0
    primes = arith.primes_up_to(hi)
    sel = primes[primes > lo]
    return math.fsum(1.0 / p for p in sel.tolist())
