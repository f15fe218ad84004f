"""Tests for the AWGN channel model."""

import numpy as np
import pytest
from pydantic import ValidationError

from ldpc_minweight.core.channel import ReceivedVector, initial_llr, transmit_all_zero
from ldpc_minweight.errors import ContractViolation
from ldpc_minweight.models.entities import ChannelConfig


def test_same_stream_is_reproducible():
    cfg = ChannelConfig(sigma=0.7, seed=42)
    a = transmit_all_zero(96, cfg, stream_index=5)
    b = transmit_all_zero(96, cfg, stream_index=5)
    assert np.array_equal(a.samples, b.samples)


def test_streams_and_seeds_differ():
    cfg = ChannelConfig(sigma=0.7, seed=42)
    base = transmit_all_zero(96, cfg, 1).samples
    assert not np.array_equal(base, transmit_all_zero(96, cfg, 2).samples)
    other = ChannelConfig(sigma=0.7, seed=43)
    assert not np.array_equal(base, transmit_all_zero(96, other, 1).samples)


def test_noise_statistics():
    y = transmit_all_zero(200_000, ChannelConfig(sigma=0.5, seed=1), 1).samples
    assert y.mean() == pytest.approx(-1.0, abs=0.01)
    assert y.std() == pytest.approx(0.5, rel=0.01)


def test_samples_are_read_only():
    y = transmit_all_zero(8, ChannelConfig(sigma=1.0), 1)
    with pytest.raises(ValueError):
        y.samples[0] = 0.0


def test_llr_scaling():
    y = ReceivedVector(np.array([0.5, -1.0, 2.0]))
    assert initial_llr(y, 1.0).tolist() == [1.0, -2.0, 4.0]
    assert initial_llr(y, 0.5).tolist() == [4.0, -8.0, 16.0]


def test_noiseless_llrs_favour_zero():
    y = ReceivedVector(-np.ones(10))
    assert (initial_llr(y, 0.8) < 0).all()


def test_rejects_non_positive_sigma():
    with pytest.raises(ContractViolation):
        initial_llr(ReceivedVector(np.zeros(3)), 0.0)
    with pytest.raises(ValidationError):
        ChannelConfig(sigma=0.0)
