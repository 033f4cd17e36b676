"""Shifted correlation sums between two weighted sequences.

Two routes compute the same object: a direct shifted dot product (exact
for integer weights) and a blocked FFT cross-correlation.  The FFT route
carries a rounding guard for indicator inputs and falls back to the
direct route when the guard trips.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError, ParameterError
from .sieve import (
    KIND_E2_INDICATOR,
    KIND_E2_LOG,
    KIND_PRIME_INDICATOR,
    KIND_VON_MANGOLDT,
    E2Params,
    WeightedSeries,
    build_segment,
    e2_indicator,
    e2_log_weights,
    prime_indicator,
    von_mangoldt_weights,
)

logger = logging.getLogger(__name__)

# Largest acceptable distance to the nearest integer before rounding an
# FFT-computed integer correlation.  Anything at or above this aborts the
# rounding and triggers the direct fallback.
ROUND_GUARD = 0.25

PAIR_E2_RESTRICTED = "e2xe2-restricted"
PAIR_E2_TYPICAL = "e2xe2-typical"
PAIR_PRIME_E2 = "primexe2"

_PAIRS = (PAIR_E2_RESTRICTED, PAIR_E2_TYPICAL, PAIR_PRIME_E2)


@dataclass(frozen=True)
class CorrelationProfile:
    """Correlation values over the signed shifts -hmax..-1, 1..hmax.

    lags holds the shifts in ascending order and values the matching
    sums; the shift-0 diagonal is kept separately.
    """

    x: int
    hmax: int
    lags: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    diagonal: float
    fkind: str
    gkind: str
    method: str

    def value(self, h: int):
        """Correlation at shift h (h = 0 returns the diagonal)."""
        if h == 0:
            return self.diagonal
        if abs(h) > self.hmax:
            raise DomainError(f"|h|={abs(h)} exceeds profile bound {self.hmax}")
        idx = h + self.hmax if h < 0 else h + self.hmax - 1
        return self.values[idx]


def _check_windows(f: WeightedSeries, g: WeightedSeries, hmax: int) -> np.ndarray:
    """Validate coverage and return g's values aligned to f's window.

    The returned array gs has length len(f) + 2*hmax and gs[j + hmax + h]
    is g evaluated at n + h for n = f.start + 1 + j.
    """
    if hmax < 1:
        raise DomainError(f"shift bound must be >= 1, got {hmax}")
    if g.start > f.start - hmax or g.end < f.end + hmax:
        raise ParameterError(
            f"g window ({g.start}, {g.end}] does not cover "
            f"({f.start - hmax}, {f.end + hmax}]"
        )
    lo = (f.start - hmax) - g.start
    return g.values[lo : lo + f.length + 2 * hmax]


def _profile(f, g, hmax, corr, method) -> CorrelationProfile:
    lags = np.concatenate(
        [np.arange(-hmax, 0, dtype=np.int64), np.arange(1, hmax + 1, dtype=np.int64)]
    )
    values = np.concatenate([corr[:hmax], corr[hmax + 1 :]])
    return CorrelationProfile(
        x=f.start,
        hmax=hmax,
        lags=lags,
        values=values,
        diagonal=corr[hmax],
        fkind=f.kind,
        gkind=g.kind,
        method=method,
    )


def _integer_pair(f: WeightedSeries, g: WeightedSeries) -> bool:
    return np.issubdtype(f.values.dtype, np.integer) and np.issubdtype(
        g.values.dtype, np.integer
    )


def correlate_direct(
    f: WeightedSeries, g: WeightedSeries, hmax: int
) -> CorrelationProfile:
    """C(h) = sum over f's window of f(n) g(n + h), by direct summation.

    Integer inputs use exact integer arithmetic; real inputs use
    compensated accumulation.  Quadratic in hmax * len(f), intended for
    moderate sizes and as the oracle for the FFT route.
    """
    gs = _check_windows(f, g, hmax)
    if _integer_pair(f, g):
        fv = np.ascontiguousarray(f.values, dtype=np.int64)
        gv = np.ascontiguousarray(gs, dtype=np.int64)
        corr = kernels.direct_corr_int(fv, gv, hmax)
    else:
        fv = np.ascontiguousarray(f.values, dtype=np.float64)
        gv = np.ascontiguousarray(gs, dtype=np.float64)
        corr = kernels.direct_corr_real(fv, gv, hmax)
    return _profile(f, g, hmax, corr, "direct")


def _fft_corr(fv: np.ndarray, gs: np.ndarray, hmax: int) -> np.ndarray:
    """Blocked overlap-add cross-correlation, all shifts 0..2*hmax.

    Splits f into blocks, correlates each block against the matching g
    slice with one rfft per block, and accumulates.  Block size keeps
    each transform small regardless of the window length.
    """
    n = len(fv)
    width = 2 * hmax + 1
    block = max(4 * hmax, min(n, 1 << 16))
    out = np.zeros(width, dtype=np.float64)
    size = 1
    while size < block + width - 1 + block - 1:
        size *= 2
    for lo in range(0, n, block):
        fb = fv[lo : lo + block]
        gb = gs[lo : lo + len(fb) + 2 * hmax]
        fr = fb[::-1]
        spec = np.fft.rfft(fr, size) * np.fft.rfft(gb, size)
        conv = np.fft.irfft(spec, size)
        out += conv[len(fb) - 1 : len(fb) - 1 + width]
    return out


def correlate_fft(
    f: WeightedSeries, g: WeightedSeries, hmax: int
) -> CorrelationProfile:
    """Same contract as correlate_direct, via FFT cross-correlation.

    For integer inputs every entry must land within ROUND_GUARD of an
    integer; if not, the result is recomputed with the direct route and
    the event is logged.
    """
    gs = _check_windows(f, g, hmax)
    fv = np.asarray(f.values, dtype=np.float64)
    gv = np.asarray(gs, dtype=np.float64)
    corr = _fft_corr(fv, gv, hmax)
    if _integer_pair(f, g):
        rounded = np.rint(corr)
        drift = float(np.max(np.abs(corr - rounded))) if len(corr) else 0.0
        if drift >= ROUND_GUARD:
            logger.warning(
                "FFT rounding guard tripped (drift %.3g); using direct route",
                drift,
            )
            return correlate_direct(f, g, hmax)
        corr = rounded.astype(np.int64)
    return _profile(f, g, hmax, corr, "fft")


def correlate_weighted_pair(
    pair: str,
    x: int,
    hmax: int,
    params: E2Params,
    weighted: bool = True,
    threads: int = 1,
    segment=None,
):
    """End-to-end correlation for one of the supported sequence pairs.

    Parameters
    ----------
    pair : str
        One of "e2xe2-restricted", "e2xe2-typical", "primexe2".
    x : int
        Base window start; f lives on (x, 2x], g on (x - hmax, 2x + hmax].
    hmax : int
        Largest shift magnitude, at least 1 and below x.
    params : E2Params
        Factor interval for the two-prime side(s); its variant must match
        the pair spec.
    weighted : bool
        Log-weighted sequences when True, plain indicators when False.
    threads : int
        Worker count for segment construction.
    segment : SieveSegment, optional
        Prebuilt table covering (x - hmax, 2x + hmax], e.g. from a cache.

    Returns
    -------
    (CorrelationProfile, dict)
        The profile plus metadata: totals of both sequences over (x, 2x],
        the prime reciprocal sum of the interval, and the boundary
        convention used for shifts past 2x.
    """
    if pair not in _PAIRS:
        raise ParameterError(f"unknown pair spec {pair!r}")
    if pair == PAIR_E2_RESTRICTED and params.variant != "restricted":
        raise ParameterError("pair e2xe2-restricted needs restricted params")
    if pair == PAIR_E2_TYPICAL and params.variant != "typical":
        raise ParameterError("pair e2xe2-typical needs typical params")
    if hmax < 1:
        raise DomainError(f"shift bound must be >= 1, got {hmax}")
    if hmax >= x:
        raise ParameterError(f"shift bound {hmax} must be below x={x}")

    wide_start, wide_len = x - hmax, x + 2 * hmax
    if segment is None:
        segment = build_segment(wide_start, wide_len, threads=threads)
    elif segment.start > wide_start or segment.end < wide_start + wide_len:
        raise ParameterError("provided segment does not cover the wide window")
    wide = segment.subsegment(wide_start, wide_len)

    if pair == PAIR_PRIME_E2:
        g_wide = e2_log_weights(wide, params) if weighted else e2_indicator(wide, params)
        base = wide.subsegment(x, x)
        f = von_mangoldt_weights(base) if weighted else prime_indicator(base)
    else:
        g_wide = e2_log_weights(wide, params) if weighted else e2_indicator(wide, params)
        f = g_wide.slice(x, x)

    profile = correlate_fft(f, g_wide, hmax)
    info = {
        "sum_f": f.total(),
        "sum_g": g_wide.slice(x, x).total(),
        "count_f": int(np.count_nonzero(f.values)),
        "count_g": int(np.count_nonzero(g_wide.slice(x, x).values)),
        "mertens": params.prime_reciprocal_sum(),
        "boundary": "extended",
    }
    return profile, info
