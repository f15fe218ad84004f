"""BPSK over AWGN for the all-zero codeword, and channel LLRs.

Every trial draws its noise from its own Philox substream keyed by
``(seed, stream_index)``, so trials can run in any order or in parallel and
still reproduce bit-identical samples. Gaussian samples come from
``numpy.random.Generator.standard_normal`` (ziggurat method).
"""

from dataclasses import dataclass

import numpy as np

from ..errors import ContractViolation
from ..models.entities import ChannelConfig


@dataclass(frozen=True)
class ReceivedVector:
    """Channel output y_i = x_i + z_i."""

    samples: np.ndarray

    def __post_init__(self):
        self.samples.setflags(write=False)

    def __len__(self) -> int:
        return int(self.samples.size)


def trial_generator(seed: int, stream_index: int) -> np.random.Generator:
    """Counter-based generator for one trial's substream."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(stream_index,))
    return np.random.Generator(np.random.Philox(sequence))


def transmit_all_zero(n: int, cfg: ChannelConfig, stream_index: int) -> ReceivedVector:
    """Send the all-zero codeword (BPSK x_i = 2c_i - 1 = -1) through AWGN."""
    if n < 1:
        raise ContractViolation(f"Code length must be positive, got {n}")
    noise = trial_generator(cfg.seed, stream_index).standard_normal(n)
    return ReceivedVector(-1.0 + cfg.sigma * noise)


def initial_llr(y: ReceivedVector, sigma: float) -> np.ndarray:
    """l_i = 2 y_i / sigma^2; positive values favour c_i = 1."""
    if sigma <= 0:
        raise ContractViolation(f"sigma must be positive, got {sigma}")
    return 2.0 * y.samples / (sigma * sigma)
