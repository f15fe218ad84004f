"""Tests for the sum-product decoder, reliability accumulation and I_m calibration."""

import numpy as np
import pytest

from ldpc_minweight.codes.alist import load_alist
from ldpc_minweight.core.bp import (
    DecodeTrace,
    accumulate_reliability,
    calibrate,
    calibrate_im,
    decode,
    hard_decision,
)
from ldpc_minweight.core.channel import initial_llr, transmit_all_zero
from ldpc_minweight.core.gf2 import BitVector, ParityCheckMatrix, syndrome
from ldpc_minweight.errors import ContractViolation
from ldpc_minweight.models.entities import BpConfig, ChannelConfig


def _trace(rows, iterations_run=None, max_iterations=None) -> DecodeTrace:
    history = np.array(rows, dtype=np.float64)
    run = history.shape[0] - 1 if iterations_run is None else iterations_run
    hard = hard_decision(history[-1])
    return DecodeTrace(
        llr_history=history,
        final_hard=hard,
        final_syndrome=BitVector.zeros(1),
        iterations_run=run,
        max_iterations=run if max_iterations is None else max_iterations,
    )


class TestDecode:
    def test_zero_iterations(self, hamming, rng):
        l0 = rng.normal(size=7)
        trace = decode(hamming, l0, BpConfig(max_iterations=0))
        assert trace.llr_history.shape == (1, 7)
        assert np.array_equal(trace.llr_history[0], l0)
        assert trace.final_hard == hard_decision(l0)
        assert trace.iterations_run == 0

    def test_noiseless_input_stops_immediately(self, hamming):
        trace = decode(hamming, np.full(7, -1000.0), BpConfig())
        assert trace.iterations_run == 0
        assert trace.syndrome_zero
        assert trace.final_hard.is_zero()
        assert (trace.llr_history == -50.0).all()

    def test_corrects_single_flip(self, hamming):
        l0 = np.full(7, -3.0)
        l0[0] = 1.0
        trace = decode(hamming, l0, BpConfig(max_iterations=5))
        assert trace.final_hard.is_zero()
        assert trace.iterations_run == 1
        assert trace.llr_history.shape == (2, 7)

    def test_single_error_words_corrected_within_five_iterations(self, hamming):
        channel = ChannelConfig(sigma=0.6, seed=17)
        cfg = BpConfig(max_iterations=5)
        corrected = collected = 0
        stream = 0
        while collected < 1000:
            stream += 1
            l0 = initial_llr(transmit_all_zero(7, channel, stream), channel.sigma)
            if hard_decision(l0).weight != 1:
                continue
            collected += 1
            trace = decode(hamming, l0, cfg)
            corrected += trace.final_hard.is_zero()
        assert corrected >= 990

    def test_odd_degree_check_pulls_towards_even_parity(self):
        H = ParityCheckMatrix.from_strings(["111"])
        cfg = BpConfig(max_iterations=1, early_stop_on_zero_syndrome=False)
        trace = decode(H, np.array([-10.0, -10.0, 0.5]), cfg)
        assert trace.final_llr[2] < 0
        trace = decode(H, np.array([10.0, -10.0, -0.5]), cfg)
        assert trace.final_llr[2] > 0

    def test_trace_invariants(self, regular_code, rng):
        cfg = BpConfig(max_iterations=8, llr_clip=20.0)
        for _ in range(20):
            trace = decode(regular_code, rng.normal(-1.5, 2.0, size=24), cfg)
            assert trace.llr_history.shape[0] == trace.iterations_run + 1
            assert np.abs(trace.llr_history).max() <= 20.0
            assert trace.final_hard == hard_decision(trace.llr_history[-1])
            assert trace.final_syndrome == syndrome(regular_code, trace.final_hard)

    def test_sign_symmetry_with_even_check_degrees(self, hamming, regular_code, rng):
        cfg = BpConfig(max_iterations=6, early_stop_on_zero_syndrome=False)
        for H in (hamming, regular_code):
            for _ in range(10):
                l0 = rng.normal(0.0, 2.0, size=H.cols)
                plus = decode(H, l0, cfg).llr_history
                minus = decode(H, -l0, cfg).llr_history
                np.testing.assert_allclose(minus, -plus, atol=1e-9)

    def test_saturation_is_recorded(self, hamming):
        cfg = BpConfig(max_iterations=3, early_stop_on_zero_syndrome=False)
        trace = decode(hamming, np.full(7, -1000.0), cfg)
        assert trace.saturated_at == 1

    def test_length_mismatch(self, hamming):
        with pytest.raises(ContractViolation):
            decode(hamming, np.zeros(6), BpConfig())


class TestAccumulateReliability:
    def test_direct_sum(self):
        trace = _trace([[2.0], [-1.0], [-3.0]])
        assert accumulate_reliability(trace, 1.0).tolist() == [2.0]

    def test_geometric_weighting(self):
        trace = _trace([[2.0], [-1.0], [-3.0]])
        assert accumulate_reliability(trace, 0.5).tolist() == [3.0]

    def test_zero_iterations_is_channel_magnitude(self, rng):
        l0 = rng.normal(size=12)
        for alpha in (1.0, 0.3):
            assert np.array_equal(accumulate_reliability(_trace([l0]), alpha), np.abs(l0))

    def test_early_stop_padding(self, hamming):
        l0 = np.full(7, -3.0)
        l0[0] = 1.0
        trace = decode(hamming, l0, BpConfig(max_iterations=5))
        assert trace.iterations_run < 5
        rows = list(trace.llr_history)
        rows += [rows[-1]] * (5 + 1 - len(rows))
        for alpha in (1.0, 0.5):
            explicit = sum((alpha ** (5 - j)) * row for j, row in enumerate(rows))
            np.testing.assert_allclose(
                accumulate_reliability(trace, alpha), np.abs(explicit), rtol=1e-12
            )

    def test_matches_horner_evaluation(self, rng):
        for _ in range(200):
            rows = rng.normal(0.0, 10.0, size=(int(rng.integers(1, 9)), 30))
            trace = _trace(rows)
            for alpha in (1.0, 0.5):
                acc = np.zeros(30)
                for row in rows:
                    acc = acc * alpha + row
                np.testing.assert_allclose(
                    accumulate_reliability(trace, alpha), np.abs(acc), rtol=1e-12, atol=1e-12
                )

    def test_rejects_bad_alpha(self):
        with pytest.raises(ContractViolation):
            accumulate_reliability(_trace([[1.0]]), 0.0)


class TestCalibrate:
    def test_tiny_sigma_recommends_zero(self, hamming):
        assert calibrate_im(hamming, 0.05, BpConfig(max_iterations=10), trials=5) == 0

    def test_huge_sigma_keeps_configured_iterations(self, hamming):
        report = calibrate(hamming, 10.0, BpConfig(max_iterations=5), trials=20, seed=3)
        assert report.recommended_iterations == 5
        assert not report.saturated
        assert report.warning is not None
        assert report.saturation_iterations == [None] * 20

    def test_single_trial_is_low_confidence(self, hamming):
        report = calibrate(hamming, 0.05, BpConfig(max_iterations=10), trials=1)
        assert report.low_confidence
        assert report.histogram[0].iteration == 1
        assert report.histogram[0].count == 1

    def test_reproducible(self, regular_code):
        cfg = BpConfig(max_iterations=30)
        a = calibrate(regular_code, 0.6, cfg, trials=10, seed=9)
        b = calibrate(regular_code, 0.6, cfg, trials=10, seed=9)
        assert a == b

    def test_rejects_zero_trials(self, hamming):
        with pytest.raises(ContractViolation):
            calibrate(hamming, 0.5, BpConfig(), trials=0)

    @pytest.mark.slow
    def test_c0_recommendation(self, mackay_path):
        H = load_alist(mackay_path("96.33.964.alist"))
        cfg = BpConfig(max_iterations=50, llr_clip=50.0)
        assert calibrate_im(H, 0.70, cfg, trials=200) in {4, 5, 6}
