"""Built-in small codes and a seeded random regular LDPC construction."""

import logging

import numpy as np

from ..core.gf2 import ParityCheckMatrix
from ..errors import ContractViolation

logger = logging.getLogger(__name__)


def hamming_7_4() -> ParityCheckMatrix:
    """Hamming(7,4) with column j holding the binary expansion of j+1."""
    return ParityCheckMatrix.from_strings(["1010101", "0110011", "0001111"])


def repetition_3() -> ParityCheckMatrix:
    """(3,1) repetition code."""
    return ParityCheckMatrix.from_strings(["110", "011"])


def random_regular_code(
    n: int,
    col_degree: int = 3,
    row_degree: int = 6,
    seed: int = 0,
) -> ParityCheckMatrix:
    """Random column-regular LDPC matrix with every row of degree ``row_degree``.

    Columns are drawn one at a time with ``col_degree`` distinct ones. A row whose
    remaining deficit equals the number of columns still to draw is always taken;
    the rest of the column is drawn uniformly from the other rows with spare
    capacity. Deficits never exceed the columns left, so the draw cannot dead-end.
    """
    if n < 1 or col_degree < 1 or row_degree < 1:
        raise ContractViolation(
            f"Need positive n, col_degree and row_degree, got {n}, {col_degree}, {row_degree}"
        )
    if (n * col_degree) % row_degree:
        raise ContractViolation(
            f"n*col_degree={n * col_degree} is not a multiple of row_degree={row_degree}"
        )
    m = n * col_degree // row_degree
    if col_degree > m:
        raise ContractViolation(f"Column degree {col_degree} exceeds {m} rows")
    if row_degree > n:
        raise ContractViolation(f"Row degree {row_degree} exceeds {n} columns")

    rng = np.random.default_rng(seed)
    dense = np.zeros((m, n), dtype=np.uint8)
    deficit = np.full(m, row_degree, dtype=np.int64)

    for col in range(n):
        columns_left = n - col
        forced = np.flatnonzero(deficit == columns_left)
        optional = np.flatnonzero((deficit > 0) & (deficit < columns_left))
        extra = rng.choice(optional, size=col_degree - forced.size, replace=False)
        rows = np.concatenate([forced, extra])
        dense[rows, col] = 1
        deficit[rows] -= 1

    logger.debug("Built random (%d,%d)-regular code with n=%d", col_degree, row_degree, n)
    return ParityCheckMatrix.from_dense(dense)
