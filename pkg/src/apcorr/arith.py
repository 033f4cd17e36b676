"""Shared elementary number theory helpers.

Everything here is deliberately small and independently testable: plain
sieves, trial-division factoring, a deterministic Miller-Rabin, and the
mu/phi tables the singular-series and character code share.
"""

from __future__ import annotations

import math

import numpy as np


def prime_flags(limit: int) -> np.ndarray:
    """Boolean array of length limit+1 with flags[n] == True iff n is prime."""
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def primes_up_to(limit: int) -> np.ndarray:
    """Ascending array of primes <= limit (int64)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    return np.nonzero(prime_flags(limit))[0].astype(np.int64)


# Witness set proven sufficient for deterministic testing below 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as [(p, exponent), ...] ascending."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return out


def mobius(n: int) -> int:
    """Mobius function via trial division."""
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def euler_phi(n: int) -> int:
    """Euler totient via trial division."""
    phi = n
    for p, _ in factorize(n):
        phi -= phi // p
    return phi


def mu_phi_tables(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Tables (mu, phi) for 0..limit, both int64, computed by linear sieves.

    mu[0] and phi[0] are set to 0; they have no arithmetic meaning.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    mu = np.ones(limit + 1, dtype=np.int64)
    mu[0] = 0
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in primes_up_to(limit):
        p = int(p)
        mu[p::p] *= -1
        sq = p * p
        if sq <= limit:
            mu[sq::sq] = 0
        phi[p::p] -= phi[p::p] // p
    return mu, phi
