"""Exhaustive ground truth for small codes.

The null-space basis is enumerated in Gray-code order so consecutive codewords
differ by one basis row. The low ``b`` basis rows are expanded once into a
table of ``2^b`` codewords; the remaining rows walk their own Gray sequence
and each step XORs one offset into the whole table.
"""

import logging
from typing import Iterator

import numpy as np

from ..errors import DimensionRefusedError
from ..models.entities import WeightSpectrumSlice
from .gf2 import BitVector, Gf2Matrix, generator_basis, popcount, syndrome

logger = logging.getLogger(__name__)

DEFAULT_MAX_DIM = 25
DEFAULT_WITNESS_CAP = 4096
TABLE_BITS = 16


def _gray_table(rows: np.ndarray, width: int) -> np.ndarray:
    """All 2^len(rows) combinations of ``rows``, in reflected Gray order."""
    table = np.zeros((1, width), dtype=rows.dtype)
    for row in rows:
        table = np.concatenate([table, table[::-1] ^ row])
    return table


def gray_code_blocks(basis: np.ndarray, table_bits: int = TABLE_BITS) -> Iterator[np.ndarray]:
    """Yield every codeword spanned by ``basis`` exactly once, in blocks of packed rows.

    The first row of the first block is the zero codeword.
    """
    dimension, width = basis.shape
    low = min(dimension, table_bits)
    table = _gray_table(basis[:low], width)
    high = basis[low:]

    yield table
    offset = np.zeros(width, dtype=basis.dtype)
    for step in range(1, 1 << (dimension - low)):
        flipped = (step & -step).bit_length() - 1
        offset ^= high[flipped]
        yield table ^ offset


def exhaustive_min_weight(
    H: Gf2Matrix, max_dim: int = DEFAULT_MAX_DIM, witness_cap: int = DEFAULT_WITNESS_CAP
) -> WeightSpectrumSlice:
    """Exact minimum distance and its multiplicity by enumerating all 2^K codewords."""
    basis = generator_basis(H)
    dimension = basis.shape[0]
    if dimension > max_dim:
        raise DimensionRefusedError(dimension, max_dim)
    if dimension == 0:
        return WeightSpectrumSlice(n=H.cols, dimension=0)

    logger.info("Enumerating 2^%d codewords of length %d", dimension, H.cols)
    best = None
    multiplicity = 0
    witnesses: list[np.ndarray] = []
    for block in gray_code_blocks(basis):
        weights = popcount(block)
        nonzero = weights > 0
        if not nonzero.any():
            continue
        lightest = int(weights[nonzero].min())
        if best is None or lightest < best:
            best = lightest
            multiplicity = 0
            witnesses = []
        if lightest != best:
            continue
        hits = block[weights == best]
        multiplicity += hits.shape[0]
        room = max(0, witness_cap - len(witnesses))
        witnesses.extend(hits[:room])

    encoded = sorted(BitVector(H.cols, words).to_hex() for words in witnesses)
    return WeightSpectrumSlice(
        n=H.cols,
        dimension=dimension,
        d_min=best,
        multiplicity=multiplicity,
        witnesses=encoded,
        witnesses_capped=multiplicity > len(encoded),
    )


def is_codeword(H: Gf2Matrix, c: BitVector) -> bool:
    """True iff H·c = 0; the zero vector counts."""
    return syndrome(H, c).is_zero()
