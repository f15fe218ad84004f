"""Tests for the built-in and random codes."""

import time

import numpy as np
import pytest

from ldpc_minweight.codes.library import hamming_7_4, random_regular_code, repetition_3
from ldpc_minweight.errors import ContractViolation

SUITE_LENGTHS = (12, 16, 24, 30, 36, 40)


def test_builtin_shapes():
    assert hamming_7_4().shape == (3, 7)
    assert repetition_3().shape == (2, 3)


@pytest.mark.parametrize("n", SUITE_LENGTHS)
def test_every_seed_builds_a_regular_code(n):
    start = time.perf_counter()
    for seed in range(30):
        H = random_regular_code(n, col_degree=3, row_degree=6, seed=seed)
        assert H.shape == (n // 2, n)
        assert (H.var_degrees == 3).all()
        assert (H.check_degrees == 6).all()
    assert time.perf_counter() - start < 10.0


def test_seed_is_reproducible():
    a = random_regular_code(36, seed=2)
    b = random_regular_code(36, seed=2)
    c = random_regular_code(36, seed=3)
    assert a == b
    assert not np.array_equal(a.to_dense(), c.to_dense())


def test_tight_degrees_fill_every_row():
    H = random_regular_code(6, col_degree=2, row_degree=6, seed=5)
    assert H.to_dense().all()


@pytest.mark.parametrize(
    "n, col_degree, row_degree",
    [(5, 3, 6), (4, 3, 6), (6, 0, 6), (0, 3, 6)],
)
def test_impossible_degrees_rejected(n, col_degree, row_degree):
    with pytest.raises(ContractViolation):
        random_regular_code(n, col_degree=col_degree, row_degree=row_degree)
