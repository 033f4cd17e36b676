"""Main-term predictions for the correlation sums and error accounting.

The model for an even shift h is always the singular series times a
density product:

  * log-weighted two-prime pairs over (x, 2x] with factor interval I:
        S(h) * x * (sum of 1/p over I)^2
  * indicator pairs, or a prime side: S(h) * (total_f * total_g) / x,
    with the totals measured on (x, 2x].

Odd shifts get prediction 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import singular
from .correlate import CorrelationProfile
from .errors import DomainError, ParameterError
from .sieve import E2Params

MODEL_WEIGHTED_E2 = "weighted-e2"
MODEL_COUNTS = "counts"

_EVEN_SENTINEL = math.inf


def predict_weighted_restricted(h: int, x: int, params: E2Params) -> float:
    """Main term S(h) * x * (sum 1/p)^2 for log-weighted two-prime pairs.

    Named for the restricted factor interval; a typical (closed) interval
    uses the identical formula through its own reciprocal sum.
    """
    if h == 0:
        raise DomainError("shift 0 has no pair prediction")
    if x < 1:
        raise ParameterError(f"x must be >= 1, got {x}")
    if h % 2 == 1:
        return 0.0
    m = params.prime_reciprocal_sum()
    return singular.singular_series(h) * x * m * m


def predict_unweighted(h: int, x: int, total_f: float, total_g: float) -> float:
    """Main term S(h) * total_f * total_g / x for indicator pairs."""
    if h == 0:
        raise DomainError("shift 0 has no pair prediction")
    if x < 1:
        raise ParameterError(f"x must be >= 1, got {x}")
    if h % 2 == 1:
        return 0.0
    return singular.singular_series(h) * total_f * total_g / x


def predict_prime_by_e2(h: int, x: int, prime_total: float, e2_total: float) -> float:
    """Main term for a prime side against a two-prime side.

    Same density product shape as predict_unweighted; pass weighted
    totals (von Mangoldt sum, log-weight sum) for the weighted version.
    """
    return predict_unweighted(h, x, prime_total, e2_total)


@dataclass(frozen=True)
class PredictionProfile:
    """Predicted values over the signed shifts -hmax..-1, 1..hmax."""

    x: int
    hmax: int
    lags: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    model: str
    meta: dict = field(default_factory=dict)

    def value(self, h: int) -> float:
        if h == 0:
            raise DomainError("shift 0 has no pair prediction")
        if abs(h) > self.hmax:
            raise DomainError(f"|h|={abs(h)} exceeds profile bound {self.hmax}")
        idx = h + self.hmax if h < 0 else h + self.hmax - 1
        return float(self.values[idx])


def prediction_profile(
    x: int,
    hmax: int,
    params: E2Params | None = None,
    totals: tuple[float, float] | None = None,
    q0: int | None = None,
) -> PredictionProfile:
    """Vectorised predictions for every signed shift up to hmax.

    Exactly one of params (log-weighted pair model) or totals (density
    product model) must be given.  With q0 set, the singular series is
    evaluated by its q <= q0 truncation instead of the Euler product.
    """
    if hmax < 1:
        raise DomainError(f"shift bound must be >= 1, got {hmax}")
    if x < 1:
        raise ParameterError(f"x must be >= 1, got {x}")
    if (params is None) == (totals is None):
        raise ParameterError("give exactly one of params or totals")
    table = singular.singular_table(hmax, q0=q0)
    sing = table.truncated if q0 is not None else table.euler
    if params is not None:
        m = params.prime_reciprocal_sum()
        scale = x * m * m
        model = MODEL_WEIGHTED_E2
        meta = {"mertens": m, "boundary": "extended", "q0": q0}
    else:
        tf, tg = totals
        scale = tf * tg / x
        model = MODEL_COUNTS
        meta = {"total_f": tf, "total_g": tg, "boundary": "extended", "q0": q0}
    per_h = np.zeros(hmax + 1, dtype=np.float64)
    per_h[2::2] = scale * sing[2::2]
    lags = np.concatenate(
        [np.arange(-hmax, 0, dtype=np.int64), np.arange(1, hmax + 1, dtype=np.int64)]
    )
    values = np.concatenate([per_h[:0:-1], per_h[1:]])
    return PredictionProfile(x, hmax, lags, values, model, meta)


@dataclass(frozen=True)
class ErrorReport:
    """Relative errors of a profile against its prediction, even shifts only."""

    lags: np.ndarray = field(repr=False)
    relerr: np.ndarray = field(repr=False)
    ratios: np.ndarray = field(repr=False)
    l2: float
    mean_ratio: float
    median_ratio: float

    def exceptional_fraction(self, tol: float) -> float:
        """Fraction of even shifts whose |relative error| exceeds tol."""
        if tol <= 0:
            raise ParameterError(f"tolerance must be positive, got {tol}")
        if len(self.relerr) == 0:
            return 0.0
        return float(np.mean(np.abs(self.relerr) > tol))


def error_report(
    actual: CorrelationProfile, predicted: PredictionProfile
) -> ErrorReport:
    """Compare measured correlations with their predictions.

    relerr is (actual - predicted) / predicted per even shift, with 0
    when both vanish and +inf when only the prediction does.  l2 is the
    squared error summed over all shifts of the profile.  The ratio
    statistics skip shifts with zero prediction.
    """
    if actual.x != predicted.x or actual.hmax != predicted.hmax:
        raise ParameterError("profiles disagree on window or shift bound")
    av = np.asarray(actual.values, dtype=np.float64)
    pv = predicted.values
    l2 = float(np.sum((av - pv) ** 2, dtype=np.longdouble))
    even = (actual.lags % 2) == 0
    a = av[even]
    p = pv[even]
    relerr = np.empty(len(a), dtype=np.float64)
    pos = p > 0
    relerr[pos] = (a[pos] - p[pos]) / p[pos]
    zero_both = (~pos) & (a == 0)
    relerr[zero_both] = 0.0
    relerr[(~pos) & (a != 0)] = _EVEN_SENTINEL
    ratios = np.full(len(a), np.nan)
    ratios[pos] = a[pos] / p[pos]
    good = ratios[pos]
    mean_ratio = float(np.mean(good)) if len(good) else math.nan
    median_ratio = float(np.median(good)) if len(good) else math.nan
    return ErrorReport(
        lags=actual.lags[even],
        relerr=relerr,
        ratios=ratios,
        l2=l2,
        mean_ratio=mean_ratio,
        median_ratio=median_ratio,
    )
