"""Tests for shifted correlation sums, direct and FFT routes."""

import logging
import math

import numpy as np
import pytest

from apcorr import correlate as co
from apcorr.correlate import (
    PAIR_E2_RESTRICTED,
    PAIR_E2_TYPICAL,
    PAIR_PRIME_E2,
    correlate_direct,
    correlate_fft,
    correlate_weighted_pair,
)
from apcorr.errors import DomainError, ParameterError
from apcorr.sieve import (
    E2Params,
    WeightedSeries,
    build_segment,
    e2_indicator,
    prime_indicator,
)


def brute_profile(f: WeightedSeries, g: WeightedSeries, hmax: int):
    """Triple-loop oracle: dict h -> sum of f(n) g(n+h), h in -hmax..hmax."""
    out = {}
    for h in range(-hmax, hmax + 1):
        total = 0.0
        for j in range(f.length):
            n = f.start + 1 + j
            total += float(f.values[j]) * float(g.value_of(n + h))
        out[h] = total
    return out


def random_pair(rng, start, length, hmax, integer=True):
    if integer:
        fv = rng.integers(0, 2, size=length).astype(np.int64)
        gv = rng.integers(0, 2, size=length + 2 * hmax).astype(np.int64)
    else:
        fv = rng.standard_normal(length)
        gv = rng.standard_normal(length + 2 * hmax)
    f = WeightedSeries(start=start, values=fv, kind="custom")
    g = WeightedSeries(start=start - hmax, values=gv, kind="custom")
    return f, g


class TestDirect:
    def test_prime_pairs_in_small_window(self):
        seg = build_segment(8, 14)  # covers (8, 22]
        f = prime_indicator(seg.subsegment(10, 10))
        g = prime_indicator(seg)
        profile = correlate_direct(f, g, 2)
        # primes in (10, 20]: 11, 13, 17, 19; gap-2 pairs (11,13), (17,19)
        assert profile.diagonal == 4
        assert profile.value(2) == 2
        assert profile.value(-2) == 2
        assert profile.value(1) == 0
        assert profile.method == "direct"

    def test_zero_series_gives_zero_profile(self):
        f = WeightedSeries(start=100, values=np.zeros(50, dtype=np.int64), kind="custom")
        g = WeightedSeries(start=90, values=np.ones(70, dtype=np.int64), kind="custom")
        profile = correlate_direct(f, g, 10)
        assert profile.diagonal == 0
        assert not profile.values.any()

    def test_all_ones_counts_window_length(self):
        n, hmax = 200, 7
        f = WeightedSeries(start=0, values=np.ones(n, dtype=np.int64), kind="custom")
        g = WeightedSeries(
            start=-hmax, values=np.ones(n + 2 * hmax, dtype=np.int64), kind="custom"
        )
        profile = correlate_direct(f, g, hmax)
        assert profile.diagonal == n
        assert all(profile.value(h) == n for h in range(-hmax, hmax + 1) if h != 0)

    def test_matches_brute_force_integer(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            length = int(rng.integers(5, 60))
            hmax = int(rng.integers(1, 12))
            f, g = random_pair(rng, int(rng.integers(0, 1000)), length, hmax)
            profile = correlate_direct(f, g, hmax)
            expected = brute_profile(f, g, hmax)
            for h in range(-hmax, hmax + 1):
                assert profile.value(h) == expected[h], h

    def test_matches_brute_force_real(self):
        rng = np.random.default_rng(8)
        for _ in range(5):
            length = int(rng.integers(5, 40))
            hmax = int(rng.integers(1, 8))
            f, g = random_pair(rng, 0, length, hmax, integer=False)
            profile = correlate_direct(f, g, hmax)
            expected = brute_profile(f, g, hmax)
            for h in range(-hmax, hmax + 1):
                assert profile.value(h) == pytest.approx(
                    expected[h], rel=1e-12, abs=1e-12
                ), h

    def test_integer_inputs_stay_integer_exact(self):
        rng = np.random.default_rng(9)
        fv = rng.integers(0, 2**20, size=300).astype(np.int64)
        gv = rng.integers(0, 2**20, size=320).astype(np.int64)
        f = WeightedSeries(start=0, values=fv, kind="custom")
        g = WeightedSeries(start=-10, values=gv, kind="custom")
        profile = correlate_direct(f, g, 10)
        assert np.issubdtype(profile.values.dtype, np.integer)

    def test_window_coverage_enforced(self):
        f = WeightedSeries(start=10, values=np.ones(10, dtype=np.int64), kind="custom")
        g = WeightedSeries(start=10, values=np.ones(10, dtype=np.int64), kind="custom")
        with pytest.raises(ParameterError, match="cover"):
            correlate_direct(f, g, 3)

    def test_shift_bound_must_be_positive(self):
        f = WeightedSeries(start=10, values=np.ones(10, dtype=np.int64), kind="custom")
        g = WeightedSeries(start=0, values=np.ones(30, dtype=np.int64), kind="custom")
        with pytest.raises(DomainError):
            correlate_direct(f, g, 0)


class TestProfileIndexing:
    def test_value_rejects_out_of_range(self):
        f = WeightedSeries(start=0, values=np.ones(10, dtype=np.int64), kind="custom")
        g = WeightedSeries(start=-3, values=np.ones(16, dtype=np.int64), kind="custom")
        profile = correlate_direct(f, g, 3)
        with pytest.raises(DomainError):
            profile.value(4)
        with pytest.raises(DomainError):
            profile.value(-4)

    def test_lags_align_with_values(self):
        rng = np.random.default_rng(10)
        f, g = random_pair(rng, 50, 30, 5)
        profile = correlate_direct(f, g, 5)
        assert list(profile.lags) == [-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]
        for pos, h in enumerate(profile.lags):
            assert profile.value(int(h)) == profile.values[pos]


class TestFFT:
    def test_bit_exact_against_direct_integer(self):
        rng = np.random.default_rng(11)
        for _ in range(8):
            length = int(rng.integers(100, 10_000))
            hmax = int(rng.integers(1, 500))
            f, g = random_pair(rng, int(rng.integers(0, 10**6)), length, hmax)
            fast = correlate_fft(f, g, hmax)
            slow = correlate_direct(f, g, hmax)
            assert fast.method == "fft"
            assert fast.diagonal == slow.diagonal
            assert np.array_equal(fast.values, slow.values)
            assert np.issubdtype(fast.values.dtype, np.integer)

    def test_close_to_direct_real(self):
        rng = np.random.default_rng(12)
        f, g = random_pair(rng, 0, 5000, 100, integer=False)
        fast = correlate_fft(f, g, 100)
        slow = correlate_direct(f, g, 100)
        np.testing.assert_allclose(fast.values, slow.values, rtol=1e-9, atol=1e-9)

    def test_rounding_guard_falls_back_to_direct(self, monkeypatch, caplog):
        rng = np.random.default_rng(13)
        f, g = random_pair(rng, 0, 500, 20)
        expected = correlate_direct(f, g, 20)

        def drifty(fv, gs, hmax):
            return np.asarray(
                [float(expected.value(h)) + 0.3 for h in range(-hmax, hmax + 1)]
            )

        monkeypatch.setattr(co, "_fft_corr", drifty)
        with caplog.at_level(logging.WARNING, logger="apcorr.correlate"):
            profile = correlate_fft(f, g, 20)
        assert profile.method == "direct"
        assert np.array_equal(profile.values, expected.values)
        assert any("guard" in rec.getMessage() for rec in caplog.records)


class TestWeightedPair:
    def test_restricted_e2_small_window(self):
        params = E2Params.restricted(2, 3)
        profile, info = correlate_weighted_pair(
            PAIR_E2_RESTRICTED, 30, 6, params, weighted=False
        )
        # members of (30, 60]: 33, 39, 51, 57; shifted mates live in (24, 66]
        assert profile.diagonal == 4
        assert profile.value(6) == 2  # (33,39) and (51,57)
        assert profile.value(-6) == 2
        assert profile.value(4) == 0
        assert profile.value(3) == 0  # odd shifts never pair two odd members
        assert info["count_f"] == 4
        assert info["boundary"] == "extended"
        assert info["mertens"] == pytest.approx(1 / 3)

    def test_weighted_totals_match_log_sum(self):
        params = E2Params.restricted(2, 3)
        _, info = correlate_weighted_pair(PAIR_E2_RESTRICTED, 30, 6, params)
        expected = sum(math.log(p) for p in (11, 13, 17, 19))
        assert info["sum_f"] == pytest.approx(expected, rel=1e-12)
        assert info["count_f"] == 4

    def test_prime_by_e2_pair(self):
        params = E2Params.typical(3, 7)
        profile, info = correlate_weighted_pair(
            PAIR_PRIME_E2, 100, 10, params, weighted=False
        )
        seg = build_segment(90, 120)
        f = prime_indicator(seg.subsegment(100, 100))
        g = e2_indicator(seg.subsegment(90, 120), params)
        expected = correlate_direct(f, g, 10)
        assert np.array_equal(profile.values, expected.values)
        assert info["count_f"] == int(f.total())
        assert info["count_g"] == int(g.slice(100, 100).total())

    def test_variant_mismatch_rejected(self):
        with pytest.raises(ParameterError, match="restricted"):
            correlate_weighted_pair(PAIR_E2_RESTRICTED, 100, 5, E2Params.typical(3, 7))
        with pytest.raises(ParameterError, match="typical"):
            correlate_weighted_pair(PAIR_E2_TYPICAL, 100, 5, E2Params.restricted(2, 3))

    def test_unknown_pair_rejected(self):
        with pytest.raises(ParameterError, match="pair"):
            correlate_weighted_pair("e2xprime", 100, 5, E2Params.restricted(2, 3))

    def test_shift_bound_against_x(self):
        params = E2Params.restricted(2, 3)
        with pytest.raises(ParameterError):
            correlate_weighted_pair(PAIR_E2_RESTRICTED, 50, 50, params)
        with pytest.raises(DomainError):
            correlate_weighted_pair(PAIR_E2_RESTRICTED, 50, 0, params)

    def test_prebuilt_segment_must_cover(self):
        params = E2Params.restricted(2, 3)
        seg = build_segment(30, 30)
        with pytest.raises(ParameterError, match="segment"):
            correlate_weighted_pair(PAIR_E2_RESTRICTED, 30, 6, params, segment=seg)

    def test_prebuilt_segment_matches_fresh_build(self):
        params = E2Params.restricted(2, 3)
        seg = build_segment(20, 60)  # covers (20, 80], wider than needed
        fresh, info_a = correlate_weighted_pair(PAIR_E2_RESTRICTED, 30, 6, params)
        cached, info_b = correlate_weighted_pair(
            PAIR_E2_RESTRICTED, 30, 6, params, segment=seg
        )
        np.testing.assert_allclose(fresh.values, cached.values, rtol=0, atol=0)
        assert info_a == info_b
