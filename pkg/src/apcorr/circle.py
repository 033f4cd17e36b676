"""Exponential sums, arc classification, and related exact identities.

Throughout, e(t) = exp(2 pi i t) and ||t|| is the distance from t to the
nearest integer.  Arcs are parameterised by a pair (q0, q_max): the point
alpha is on a major arc when |alpha - a/q| <= 1/(q * q_max) for some
reduced a/q with q <= q0, and on a minor arc otherwise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import arith
from .errors import DomainError, ParameterError
from .sieve import E2Params, WeightedSeries

_CHUNK = 1 << 20


@dataclass(frozen=True)
class ArcParams:
    """Arc dissection parameters: centers a/q with q <= q0, width 1/(q*qmax)."""

    q0: int
    qmax: int

    def __post_init__(self):
        if self.q0 < 1:
            raise ParameterError(f"q0 must be >= 1, got {self.q0}")
        if self.qmax < self.q0:
            raise ParameterError(
                f"qmax must be >= q0, got qmax={self.qmax} < q0={self.q0}"
            )


@dataclass(frozen=True)
class ArcLabel:
    """Classification of a point: the reduced center a/q and the arc kind."""

    major: bool
    a: int
    q: int


def exponential_sum(series: WeightedSeries, alpha: float) -> complex:
    """S(alpha) = sum over the window of w(n) e(n alpha).

    Accumulates chunk subtotals and combines them with exact summation,
    so the result does not depend on the chunk size.
    """
    re_parts: list[float] = []
    im_parts: list[float] = []
    vals = np.asarray(series.values, dtype=np.float64)
    for lo in range(0, series.length, _CHUNK):
        n = series.start + 1 + np.arange(lo, min(lo + _CHUNK, series.length))
        phase = np.exp((2j * math.pi * alpha) * n)
        part = np.sum(vals[lo : lo + _CHUNK] * phase)
        re_parts.append(part.real)
        im_parts.append(part.imag)
    return complex(math.fsum(re_parts), math.fsum(im_parts))


def geometric_phase_sum(beta: float, x: int) -> complex:
    """Closed form for sum_{n=1..x} e(beta n).

    Equals x when beta is an integer, and otherwise
    e(beta (x + 1) / 2) * sin(pi beta x) / sin(pi beta), evaluated after
    reducing beta to its nearest-integer offset for stability.  The
    magnitude never exceeds min(x, 1 / (2 ||beta||)).
    """
    if x < 0:
        raise ParameterError(f"x must be >= 0, got {x}")
    if x == 0:
        return 0j
    m = round(beta)
    br = beta - m
    if br == 0.0:
        return complex(x)
    # sin(pi beta x) = (-1)^(m x) sin(pi br x); the m x factor is an integer.
    num = math.sin(math.pi * math.remainder(br * x, 2.0))
    if (m * x) % 2:
        num = -num
    den = math.sin(math.pi * br)
    if m % 2:
        den = -den
    mid = cmath.exp(1j * math.pi * beta * (x + 1))
    return mid * (num / den)


def norm_to_nearest(t: float) -> float:
    """Distance from t to the nearest integer."""
    return abs(t - round(t))


def classify_arc(alpha: float, params: ArcParams) -> ArcLabel:
    """Locate alpha in the arc dissection.

    Scans q = 1..q0 for a major-arc match (the first hit is automatically
    reduced), then walks the continued fraction convergents of alpha for
    the minor-arc rational.  In both cases the reported q is the smallest
    denominator satisfying |alpha - a/q| <= 1/(q * qmax).
    """
    alpha = alpha % 1.0
    qmax = params.qmax
    for q in range(1, params.q0 + 1):
        a = round(alpha * q)
        if abs(alpha - a / q) <= 1.0 / (q * qmax):
            return ArcLabel(major=True, a=int(a), q=q)

    # Minor arc: the smallest qualifying denominator is a convergent
    # denominator, since anything smaller with a closer approach would
    # itself qualify first.
    p_prev, q_prev = 1, 0
    p_cur, q_cur = 0, 1  # convergent 0/1
    frac = alpha
    while True:
        if q_cur > params.q0 and abs(alpha - p_cur / q_cur) <= 1.0 / (q_cur * qmax):
            g = math.gcd(p_cur, q_cur)
            return ArcLabel(major=False, a=p_cur // g, q=q_cur // g)
        if frac == 0.0 or q_cur > qmax:
            break
        inv = 1.0 / frac
        digit = math.floor(inv)
        frac = inv - digit
        p_prev, p_cur = p_cur, digit * p_cur + p_prev
        q_prev, q_cur = q_cur, digit * q_cur + q_prev
    raise DomainError(
        f"no rational with denominator <= {qmax} approximates {alpha}"
    )


def is_major_batch(alphas: np.ndarray, params: ArcParams) -> np.ndarray:
    """Vectorised major-arc membership test.

    alpha is major iff ||q alpha|| <= 1/qmax for some q <= q0, which is
    the classify_arc criterion with the denominator cleared.
    """
    alphas = np.asarray(alphas, dtype=np.float64)
    hit = np.zeros(alphas.shape, dtype=bool)
    for q in range(1, params.q0 + 1):
        t = q * alphas
        dist = np.abs(t - np.rint(t))
        hit |= dist <= 1.0 / params.qmax
    return hit


def major_arc_measure(params: ArcParams) -> float:
    """Total length of the major arcs inside [0, 1).

    Equals sum over q <= q0 of phi(q) * 2 / (q * qmax).  Requires
    qmax >= 2 * q0^2 so the arcs are pairwise disjoint and the formula
    is exact.
    """
    if params.qmax < 2 * params.q0 * params.q0:
        raise ParameterError(
            f"disjointness needs qmax >= 2*q0^2 "
            f"(qmax={params.qmax}, q0={params.q0})"
        )
    total = 0.0
    for q in range(1, params.q0 + 1):
        total += arith.euler_phi(q) * 2.0 / (q * params.qmax)
    return total


def major_arc_fraction(
    params: ArcParams, samples: int, seed: int = 0
) -> float:
    """Monte Carlo estimate of the major-arc measure on uniform samples."""
    if samples < 1:
        raise ParameterError(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    alphas = rng.random(samples)
    return float(np.mean(is_major_batch(alphas, params)))


def major_arc_approximation(
    alpha: float, x: int, params: E2Params, arc: ArcLabel
) -> complex:
    """Smooth model for the log-weighted exponential sum near a/q.

    Value: (mu(q) / phi(q)) * (sum of 1/p over the factor interval) *
    sum_{x < n <= 2x} e(beta n), with beta = alpha - a/q.  At beta = 0
    the last factor is exactly x.
    """
    if x < 1:
        raise ParameterError(f"x must be >= 1, got {x}")
    beta = alpha - arc.a / arc.q
    mu_q = arith.mobius(arc.q)
    phi_q = arith.euler_phi(arc.q)
    m = params.prime_reciprocal_sum()
    window = geometric_phase_sum(beta, 2 * x) - geometric_phase_sum(beta, x)
    return (mu_q / phi_q) * m * window


def discrete_parseval(series: WeightedSeries, m: int) -> tuple[float, float]:
    """Both sides of the m-point mean square identity.

    Returns (lhs, rhs) with lhs = (1/m) sum_{k<m} |S(k/m)|^2 and
    rhs = sum w(n)^2.  The S values are computed by a zero-padded DFT;
    the two sides agree to floating precision whenever m is at least the
    window length.
    """
    if m < series.length:
        raise ParameterError(
            f"m={m} is below the window length {series.length}"
        )
    vals = np.asarray(series.values, dtype=np.float64)
    spectrum = np.fft.fft(vals, n=m)
    lhs = float(np.sum(np.abs(spectrum) ** 2, dtype=np.longdouble) / m)
    rhs = float(np.sum(vals * vals, dtype=np.longdouble))
    return lhs, rhs
