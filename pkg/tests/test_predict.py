"""Tests for main-term predictions and error reports."""

import math

import numpy as np
import pytest

from apcorr.correlate import CorrelationProfile
from apcorr.errors import DomainError, ParameterError
from apcorr.predict import (
    MODEL_COUNTS,
    MODEL_WEIGHTED_E2,
    error_report,
    predict_prime_by_e2,
    predict_unweighted,
    predict_weighted_restricted,
    prediction_profile,
)
from apcorr.sieve import E2Params
from apcorr.singular import singular_series, truncated_singular_series

# S(2) * 1e6 * (sum of 1/p over (20, 40])^2, frozen from an independent
# plain-float evaluation with the default Euler product cutoff.
WEIGHTED_MAIN_TERM_ORACLE = 24870.26962432638


def scaled_actual(pred, factors):
    """CorrelationProfile whose values are pred scaled lag-by-lag."""
    av = np.array(
        [pred.value(int(h)) * factors.get(int(h), 1.0) for h in pred.lags],
        dtype=np.float64,
    )
    return CorrelationProfile(
        x=pred.x,
        hmax=pred.hmax,
        lags=pred.lags.copy(),
        values=av,
        diagonal=0.0,
        fkind="custom",
        gkind="custom",
        method="direct",
    )


class TestScalarPredictions:
    def test_weighted_plugin_value(self):
        params = E2Params.restricted(20, 40)
        got = predict_weighted_restricted(2, 10**6, params)
        assert got == pytest.approx(WEIGHTED_MAIN_TERM_ORACLE, rel=1e-12)

    def test_odd_shifts_predict_zero(self):
        params = E2Params.restricted(20, 40)
        assert predict_weighted_restricted(3, 10**6, params) == 0.0
        assert predict_unweighted(5, 100, 10.0, 10.0) == 0.0

    def test_shift_zero_rejected(self):
        params = E2Params.restricted(20, 40)
        with pytest.raises(DomainError):
            predict_weighted_restricted(0, 10**6, params)
        with pytest.raises(DomainError):
            predict_unweighted(0, 100, 1.0, 1.0)

    def test_bad_x_rejected(self):
        params = E2Params.restricted(20, 40)
        with pytest.raises(ParameterError):
            predict_weighted_restricted(2, 0, params)
        with pytest.raises(ParameterError):
            predict_unweighted(2, 0, 1.0, 1.0)

    def test_shift_dependence_is_singular_series(self):
        params = E2Params.restricted(20, 40)
        a = predict_weighted_restricted(6, 10**5, params)
        b = predict_weighted_restricted(2, 10**5, params)
        assert a / b == pytest.approx(2.0, rel=1e-14)

    def test_unweighted_scales_with_totals(self):
        base = predict_unweighted(2, 1000, 30.0, 40.0)
        assert predict_unweighted(2, 1000, 60.0, 40.0) == pytest.approx(2 * base)
        assert predict_unweighted(2, 2000, 30.0, 40.0) == pytest.approx(base / 2)
        assert base == pytest.approx(singular_series(2) * 30.0 * 40.0 / 1000)

    def test_zero_totals_predict_zero(self):
        assert predict_unweighted(2, 1000, 0.0, 40.0) == 0.0

    def test_prime_side_uses_same_density_product(self):
        assert predict_prime_by_e2(4, 500, 12.0, 7.0) == predict_unweighted(
            4, 500, 12.0, 7.0
        )


class TestPredictionProfile:
    def test_matches_scalar_model(self):
        params = E2Params.restricted(5, 25)
        profile = prediction_profile(10**4, 20, params=params)
        assert profile.model == MODEL_WEIGHTED_E2
        for h in range(1, 21):
            expected = predict_weighted_restricted(h, 10**4, params)
            assert profile.value(h) == pytest.approx(expected, rel=1e-12)
            assert profile.value(-h) == profile.value(h)

    def test_counts_model(self):
        profile = prediction_profile(1000, 10, totals=(30.0, 40.0))
        assert profile.model == MODEL_COUNTS
        assert profile.value(2) == pytest.approx(predict_unweighted(2, 1000, 30.0, 40.0))
        assert profile.meta["total_f"] == 30.0
        assert profile.meta["total_g"] == 40.0
        assert profile.meta["boundary"] == "extended"

    def test_weighted_meta(self):
        params = E2Params.restricted(5, 25)
        profile = prediction_profile(100, 4, params=params)
        assert profile.meta["mertens"] == pytest.approx(params.prime_reciprocal_sum())
        assert profile.meta["q0"] is None

    def test_exactly_one_model_source(self):
        params = E2Params.restricted(5, 25)
        with pytest.raises(ParameterError, match="exactly one"):
            prediction_profile(100, 4)
        with pytest.raises(ParameterError, match="exactly one"):
            prediction_profile(100, 4, params=params, totals=(1.0, 1.0))

    def test_truncation_steering(self):
        # with q0 = 2 the truncated series is exactly 2 at even shifts
        profile = prediction_profile(1000, 10, totals=(30.0, 40.0), q0=2)
        scale = 30.0 * 40.0 / 1000
        for h in (2, 4, 6, 8, 10):
            assert profile.value(h) == pytest.approx(2.0 * scale, rel=1e-14)
        assert profile.value(3) == 0.0
        assert profile.meta["q0"] == 2

    def test_truncation_matches_scalar_truncation(self):
        params = E2Params.restricted(5, 25)
        q0 = 50
        profile = prediction_profile(1000, 12, params=params, q0=q0)
        m = params.prime_reciprocal_sum()
        for h in (2, 4, 12):
            expected = truncated_singular_series(h, q0) * 1000 * m * m
            assert profile.value(h) == pytest.approx(expected, rel=1e-12)

    def test_indexing_errors(self):
        profile = prediction_profile(100, 5, totals=(1.0, 1.0))
        with pytest.raises(DomainError):
            profile.value(0)
        with pytest.raises(DomainError):
            profile.value(6)
        with pytest.raises(DomainError):
            prediction_profile(100, 0, totals=(1.0, 1.0))
        with pytest.raises(ParameterError):
            prediction_profile(0, 5, totals=(1.0, 1.0))


class TestErrorReport:
    def test_perfect_agreement(self):
        pred = prediction_profile(100, 6, totals=(50.0, 50.0))
        actual = scaled_actual(pred, {})
        report = error_report(actual, pred)
        assert report.l2 == pytest.approx(0.0, abs=1e-18)
        assert np.allclose(report.relerr, 0.0)
        assert report.mean_ratio == pytest.approx(1.0)
        assert report.median_ratio == pytest.approx(1.0)
        assert report.exceptional_fraction(0.1) == 0.0

    def test_uniform_ten_percent_excess(self):
        pred = prediction_profile(100, 6, totals=(50.0, 50.0))
        factors = {h: 1.1 for h in (-6, -4, -2, 2, 4, 6)}
        report = error_report(scaled_actual(pred, factors), pred)
        even_nonzero = report.relerr[np.abs(report.relerr) > 0]
        assert np.allclose(even_nonzero, 0.1)
        assert report.mean_ratio == pytest.approx(1.1)

    def test_exceptional_fraction_counts_even_lags(self):
        pred = prediction_profile(100, 6, totals=(50.0, 50.0))
        factors = {2: 1.1, -2: 1.1, 4: 1.3, -4: 1.3, 6: 1.05, -6: 1.05}
        report = error_report(scaled_actual(pred, factors), pred)
        assert report.exceptional_fraction(0.2) == pytest.approx(1 / 3)
        assert report.exceptional_fraction(0.01) == 1.0
        assert report.exceptional_fraction(0.5) == 0.0
        assert report.median_ratio == pytest.approx(1.1)
        assert report.mean_ratio == pytest.approx((2 * 1.05 + 2 * 1.1 + 2 * 1.3) / 6)

    def test_zero_prediction_sentinel(self):
        pred = prediction_profile(100, 4, totals=(0.0, 10.0))
        actual = scaled_actual(pred, {})
        av = actual.values.copy()
        av[actual.lags == 2] = 5.0  # mass where the model predicts nothing
        actual = CorrelationProfile(
            x=actual.x,
            hmax=actual.hmax,
            lags=actual.lags,
            values=av,
            diagonal=0.0,
            fkind="custom",
            gkind="custom",
            method="direct",
        )
        report = error_report(actual, pred)
        assert math.isinf(report.relerr[list(report.lags).index(2)])
        assert report.exceptional_fraction(100.0) == pytest.approx(1 / 4)
        # lags where both sides vanish count as exact agreement
        assert report.relerr[list(report.lags).index(4)] == 0.0
        assert math.isnan(report.mean_ratio)

    def test_l2_covers_all_lags(self):
        pred = prediction_profile(100, 3, totals=(50.0, 50.0))
        factors = {1: 1.0, 3: 1.0}
        actual = scaled_actual(pred, factors)
        av = actual.values.copy()
        av[actual.lags == 1] = 2.0  # odd-lag mass the model calls zero
        actual = CorrelationProfile(
            x=actual.x,
            hmax=actual.hmax,
            lags=actual.lags,
            values=av,
            diagonal=0.0,
            fkind="custom",
            gkind="custom",
            method="direct",
        )
        report = error_report(actual, pred)
        assert report.l2 == pytest.approx(4.0)

    def test_tolerance_must_be_positive(self):
        pred = prediction_profile(100, 4, totals=(50.0, 50.0))
        report = error_report(scaled_actual(pred, {}), pred)
        with pytest.raises(ParameterError):
            report.exceptional_fraction(0.0)
        with pytest.raises(ParameterError):
            report.exceptional_fraction(-1.0)

    def test_mismatched_profiles_rejected(self):
        pred_a = prediction_profile(100, 4, totals=(50.0, 50.0))
        pred_b = prediction_profile(100, 5, totals=(50.0, 50.0))
        pred_c = prediction_profile(200, 4, totals=(50.0, 50.0))
        actual = scaled_actual(pred_a, {})
        with pytest.raises(ParameterError):
            error_report(actual, pred_b)
        with pytest.raises(ParameterError):
            error_report(actual, pred_c)
