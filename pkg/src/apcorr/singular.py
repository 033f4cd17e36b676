"""The singular series for prime pair correlations, exact and truncated.

The weight attached to an even shift h is

    S(h) = 2 * C2 * prod_{p | h, p odd} (p - 1) / (p - 2),

with S(h) = 0 for odd h, where C2 is the twin prime constant
prod_{p odd} (1 - 1/(p-1)^2).  The truncated form replaces the Euler
product with the partial sum over moduli q <= Q0 of
mu(q)^2 * c_q(-h) / phi(q)^2, where c_q is a Ramanujan sum.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import arith
from .errors import DomainError, ParameterError

# Default cutoff for the twin prime constant.  The truncation error of the
# Euler product at 1e7 is below 5e-9, far inside every tolerance used here.
DEFAULT_CUTOFF = 10**7


@dataclass(frozen=True)
class SmallPrimeCache:
    """Primes up to a cutoff, shared by the Euler product routines."""

    cutoff: int
    primes: np.ndarray

    @classmethod
    def build(cls, cutoff: int) -> "SmallPrimeCache":
        if cutoff < 3:
            raise ParameterError(f"cutoff must be >= 3, got {cutoff}")
        return cls(cutoff, arith.primes_up_to(cutoff))


@functools.lru_cache(maxsize=8)
def twin_prime_constant(cutoff: int = DEFAULT_CUTOFF) -> float:
    """prod over odd primes p <= cutoff of (1 - 1/(p-1)^2)."""
    if cutoff < 3:
        raise ParameterError(f"cutoff must be >= 3, got {cutoff}")
    p = arith.primes_up_to(cutoff)[1:].astype(np.float64)
    return float(np.prod(1.0 - 1.0 / ((p - 1.0) * (p - 1.0))))


def singular_series(h: int, cutoff: int = DEFAULT_CUTOFF) -> float:
    """The pair correlation weight S(h); 0 for odd h, domain error for h = 0.

    Depends on h only through its odd prime divisors, so S is even in h
    and insensitive to the power of 2 in h.
    """
    if h == 0:
        raise DomainError("singular series is undefined at shift 0")
    h = abs(h)
    if h % 2 == 1:
        return 0.0
    value = 2.0 * twin_prime_constant(cutoff)
    for p, _ in arith.factorize(h):
        if p > 2:
            value *= (p - 1) / (p - 2)
    return value


def singular_series_batch(hmax: int, cutoff: int = DEFAULT_CUTOFF) -> np.ndarray:
    """Array a with a[h] = S(h) for 1 <= h <= hmax (a[0] is 0, unused).

    Sieve formulation: one multiplicative pass per odd prime p <= hmax
    multiplies every multiple of p by (p - 1)/(p - 2).
    """
    if hmax < 1:
        raise ParameterError(f"hmax must be >= 1, got {hmax}")
    factor = np.ones(hmax + 1, dtype=np.float64)
    for p in arith.primes_up_to(hmax)[1:]:
        p = int(p)
        factor[p::p] *= (p - 1.0) / (p - 2.0)
    out = np.zeros(hmax + 1, dtype=np.float64)
    out[2::2] = 2.0 * twin_prime_constant(cutoff) * factor[2::2]
    return out


def singular_series_sum(x: int, cutoff: int = DEFAULT_CUTOFF) -> float:
    """Exact sum of S(h) over 1 <= h <= x.  Grows like x; the ratio to x
    tends to 1, which is what large-scale sanity checks look at."""
    values = singular_series_batch(x, cutoff)
    return float(np.sum(values, dtype=np.longdouble))


def ramanujan_sum(q: int, n: int) -> int:
    """The Ramanujan sum c_q(n) = sum over (a, q) = 1 of e(a n / q).

    Computed via the closed form mu(q/g) * phi(q) / phi(q/g) with
    g = gcd(q, n), which is exact in integer arithmetic.
    """
    if q < 1:
        raise ParameterError(f"modulus must be >= 1, got {q}")
    g = math.gcd(q, abs(n))
    r = q // g
    mu_r = arith.mobius(r)
    if mu_r == 0:
        return 0
    phi_q = arith.euler_phi(q)
    phi_r = arith.euler_phi(r)
    return mu_r * (phi_q // phi_r)


def truncated_singular_series(h: int, q0: int) -> float:
    """Partial sum over q <= q0 of mu(q)^2 c_q(-h) / phi(q)^2.

    Converges to singular_series(h) as q0 grows (slowly, and only on
    average over h; individual shifts can lag).
    """
    if h == 0:
        raise DomainError("singular series is undefined at shift 0")
    if q0 < 1:
        raise ParameterError(f"q0 must be >= 1, got {q0}")
    n = abs(h)
    mu, phi = arith.mu_phi_tables(q0)
    qs = np.arange(1, q0 + 1, dtype=np.int64)
    g = np.gcd(qs, n)
    r = qs // g
    sqfree = mu[qs] != 0
    c = np.zeros(q0, dtype=np.float64)
    c[sqfree] = mu[r[sqfree]] * (phi[qs[sqfree]] // phi[r[sqfree]])
    phiq = phi[qs].astype(np.float64)
    terms = np.zeros(q0, dtype=np.float64)
    terms[sqfree] = c[sqfree] / (phiq[sqfree] * phiq[sqfree])
    return float(np.sum(terms, dtype=np.longdouble))


def truncated_batch(hmax: int, q0: int) -> np.ndarray:
    """Array t with t[h] = truncated_singular_series(h, q0), 1 <= h <= hmax.

    Uses c_q(n) = sum over d | gcd(q, n) of d * mu(q/d) to swap the order
    of summation: t[h] = sum over d | h of d * K(d) with a kernel K that
    does not depend on h.  Cost is about q0 log hmax table operations
    instead of hmax * q0.
    """
    if hmax < 1:
        raise ParameterError(f"hmax must be >= 1, got {hmax}")
    if q0 < 1:
        raise ParameterError(f"q0 must be >= 1, got {q0}")
    mu, phi = arith.mu_phi_tables(q0)
    phif = phi.astype(np.float64)
    dmax = min(hmax, q0)
    kernel = np.zeros(dmax + 1, dtype=np.float64)
    for d in range(1, dmax + 1):
        if mu[d] == 0:
            continue
        m = np.arange(1, q0 // d + 1, dtype=np.int64)
        q = d * m
        keep = mu[q] != 0
        if not keep.any():
            continue
        mq = m[keep]
        qq = q[keep]
        kernel[d] = float(
            np.sum(mu[mq] / (phif[qq] * phif[qq]), dtype=np.longdouble)
        )
    out = np.zeros(hmax + 1, dtype=np.float64)
    for d in range(1, dmax + 1):
        if kernel[d] != 0.0:
            out[d::d] += d * kernel[d]
    return out


@dataclass(frozen=True)
class SingularSeriesTable:
    """S(h) for 1 <= h <= hmax, with an optional truncated companion."""

    hmax: int
    euler: np.ndarray
    q0: int | None = None
    truncated: np.ndarray | None = None

    def value(self, h: int) -> float:
        if h == 0:
            raise DomainError("singular series is undefined at shift 0")
        h = abs(h)
        if h > self.hmax:
            raise DomainError(f"|h|={h} exceeds table bound {self.hmax}")
        return float(self.euler[h])


def singular_table(
    hmax: int, q0: int | None = None, cutoff: int = DEFAULT_CUTOFF
) -> SingularSeriesTable:
    """Build the S(h) table, adding the q <= q0 truncation when requested."""
    euler = singular_series_batch(hmax, cutoff)
    trunc = truncated_batch(hmax, q0) if q0 is not None else None
    return SingularSeriesTable(hmax, euler, q0, trunc)
