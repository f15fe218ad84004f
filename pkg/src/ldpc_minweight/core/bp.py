"""Flooding sum-product decoder that keeps the full posterior LLR history."""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import ContractViolation
from ..models.entities import BpConfig, CalibrationReport, ChannelConfig, HistogramBin
from .channel import initial_llr, transmit_all_zero
from .gf2 import BitVector, Gf2Matrix, ParityCheckMatrix, syndrome

logger = logging.getLogger(__name__)

# Largest tanh product that still has a finite atanh.
_MAX_TANH = np.nextafter(1.0, 0.0)
_TINY = np.finfo(np.float64).tiny

LOW_CONFIDENCE_TRIALS = 10


@dataclass
class DecodeTrace:
    """Posterior LLRs of every computed iteration plus the final decision.

    ``llr_history`` row 0 holds the (clipped) channel LLRs and row ``j`` the
    posteriors after iteration ``j``; it has ``iterations_run + 1`` rows.
    """

    llr_history: np.ndarray
    final_hard: BitVector
    final_syndrome: BitVector
    iterations_run: int
    max_iterations: int
    saturated_at: Optional[int] = None

    @property
    def syndrome_zero(self) -> bool:
        return self.final_syndrome.is_zero()

    @property
    def final_llr(self) -> np.ndarray:
        return self.llr_history[-1]

    @property
    def padded_history(self) -> np.ndarray:
        """History extended to ``max_iterations + 1`` rows by repeating the last row."""
        missing = self.max_iterations + 1 - self.llr_history.shape[0]
        if missing <= 0:
            return self.llr_history
        tail = np.repeat(self.llr_history[-1:], missing, axis=0)
        return np.vstack([self.llr_history, tail])


def hard_decision(llr: np.ndarray) -> BitVector:
    """Bit 1 iff LLR > 0; an LLR of exactly 0 decodes to 0."""
    return BitVector.from_bits(llr > 0)


def _check_to_variable(H: ParityCheckMatrix, v2c: np.ndarray, clip: float) -> np.ndarray:
    """tanh rule, excluding each edge's own message via sign/log-magnitude sums.

    The rule is evaluated on log(P0/P1) values, so messages are negated on the
    way in and out.
    """
    t = np.tanh(-v2c / 2.0)
    negative = (t < 0).astype(np.int64)
    log_mag = np.log(np.maximum(np.abs(t), _TINY))

    checks = H.edge_check
    neg_total = np.bincount(checks, weights=negative, minlength=H.rows).astype(np.int64)
    log_total = np.bincount(checks, weights=log_mag, minlength=H.rows)

    others_negative = (neg_total[checks] - negative) & 1
    product = np.minimum(np.exp(log_total[checks] - log_mag), _MAX_TANH)
    c2v = 2.0 * np.arctanh(product)
    c2v = np.where(others_negative == 1, c2v, -c2v)
    return np.clip(c2v, -clip, clip)


def decode(H: Gf2Matrix, l0: np.ndarray, cfg: BpConfig) -> DecodeTrace:
    """Run up to ``cfg.max_iterations`` flooding iterations from channel LLRs ``l0``."""
    H = ParityCheckMatrix.from_matrix(H)
    l0 = np.asarray(l0, dtype=np.float64)
    if l0.shape != (H.cols,):
        raise ContractViolation(f"decode: expected {H.cols} channel LLRs, got shape {l0.shape}")

    clip = cfg.llr_clip
    channel = np.clip(l0, -clip, clip)
    history = [channel]
    hard = hard_decision(channel)
    check = syndrome(H, hard)
    saturated_at: Optional[int] = None
    iterations_run = 0

    if not (cfg.early_stop_on_zero_syndrome and check.is_zero()):
        v2c = channel[H.edge_var]
        for iteration in range(1, cfg.max_iterations + 1):
            c2v = _check_to_variable(H, v2c, clip)
            total = channel + np.bincount(H.edge_var, weights=c2v, minlength=H.cols)
            v2c = np.clip(total[H.edge_var] - c2v, -clip, clip)
            posterior = np.clip(total, -clip, clip)

            history.append(posterior)
            iterations_run = iteration
            if saturated_at is None and np.any(np.abs(posterior) >= clip):
                saturated_at = iteration

            hard = hard_decision(posterior)
            check = syndrome(H, hard)
            if cfg.early_stop_on_zero_syndrome and check.is_zero():
                break

    return DecodeTrace(
        llr_history=np.vstack(history),
        final_hard=hard,
        final_syndrome=check,
        iterations_run=iterations_run,
        max_iterations=cfg.max_iterations,
        saturated_at=saturated_at,
    )


def accumulate_reliability(trace: DecodeTrace, alpha: float = 1.0) -> np.ndarray:
    """r_i = |sum_j alpha^(I_m - j) * l_i^j| over the padded history, row 0 included."""
    if not 0.0 < alpha <= 1.0:
        raise ContractViolation(f"alpha must lie in (0, 1], got {alpha}")
    rows = trace.padded_history
    last = rows.shape[0] - 1
    total = np.zeros(rows.shape[1], dtype=np.float64)
    for j, row in enumerate(rows):
        total = total + (alpha ** (last - j)) * row
    return np.abs(total)


def calibrate(
    H: Gf2Matrix, sigma: float, cfg: BpConfig, trials: int, seed: int = 0
) -> CalibrationReport:
    """Observe when posteriors first saturate and recommend I_m one iteration earlier.

    Each trial decodes a noisy all-zero transmission with early stopping off.
    The recommendation is the lower median over saturating trials of
    (saturation iteration - 1); without any saturation ``cfg.max_iterations``
    is kept.
    """
    if trials < 1:
        raise ContractViolation(f"trials must be at least 1, got {trials}")
    H = ParityCheckMatrix.from_matrix(H)
    channel_cfg = ChannelConfig(sigma=sigma, seed=seed)
    free_running = cfg.model_copy(update={"early_stop_on_zero_syndrome": False})

    observed: list[Optional[int]] = []
    for trial in range(1, trials + 1):
        received = transmit_all_zero(H.cols, channel_cfg, trial)
        trace = decode(H, initial_llr(received, sigma), free_running)
        observed.append(trace.saturated_at)

    hits = sorted(a - 1 for a in observed if a is not None)
    warning = None
    if hits:
        recommended = hits[(len(hits) - 1) // 2]
    else:
        recommended = cfg.max_iterations
        warning = (
            f"No trial saturated within {cfg.max_iterations} iterations at sigma={sigma}; "
            "keeping the configured I_m"
        )
        logger.warning(warning)

    counts = Counter(a for a in observed if a is not None)
    histogram = [HistogramBin(iteration=k, count=counts[k]) for k in sorted(counts)]
    logger.info(
        "Calibration: %d/%d trials saturated, recommended I_m=%d",
        len(hits),
        trials,
        recommended,
    )
    return CalibrationReport(
        sigma=sigma,
        trials=trials,
        seed=seed,
        max_iterations=cfg.max_iterations,
        llr_clip=cfg.llr_clip,
        recommended_iterations=recommended,
        saturated=bool(hits),
        saturation_iterations=observed,
        histogram=histogram,
        low_confidence=trials < LOW_CONFIDENCE_TRIALS,
        warning=warning,
    )


def calibrate_im(
    H: Gf2Matrix, sigma: float, cfg: BpConfig, trials: int, seed: int = 0
) -> int:
    """Recommended I_m only; see :func:`calibrate`."""
    return calibrate(H, sigma, cfg, trials, seed).recommended_iterations
