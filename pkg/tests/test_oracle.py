"""Tests for the exhaustive minimum-distance oracle."""

import numpy as np
import pytest
from naive import min_weight_spectrum

from ldpc_minweight.codes.library import random_regular_code
from ldpc_minweight.core.gf2 import BitVector, Gf2Matrix, generator_basis, syndrome
from ldpc_minweight.core.oracle import exhaustive_min_weight, gray_code_blocks, is_codeword
from ldpc_minweight.errors import DimensionRefusedError


def test_repetition(repetition):
    spectrum = exhaustive_min_weight(repetition)
    assert (spectrum.d_min, spectrum.multiplicity) == (3, 1)
    assert spectrum.witnesses == ["e"]


def test_hamming(hamming):
    spectrum = exhaustive_min_weight(hamming)
    assert (spectrum.d_min, spectrum.multiplicity) == (3, 7)
    assert spectrum.dimension == 4
    assert not spectrum.witnesses_capped
    for text in spectrum.witnesses:
        word = BitVector.from_hex(text, 7)
        assert word.weight == 3
        assert syndrome(hamming, word).is_zero()


def test_refuses_large_dimension(regular_code):
    with pytest.raises(DimensionRefusedError) as info:
        exhaustive_min_weight(regular_code, max_dim=5)
    assert info.value.exit_code == 5


def test_witness_cap_keeps_exact_count(hamming):
    spectrum = exhaustive_min_weight(hamming, witness_cap=2)
    assert spectrum.multiplicity == 7
    assert len(spectrum.witnesses) == 2
    assert spectrum.witnesses_capped


def test_full_rank_square_matrix_has_no_codewords():
    spectrum = exhaustive_min_weight(Gf2Matrix.identity(4))
    assert spectrum.dimension == 0
    assert spectrum.d_min is None
    assert spectrum.multiplicity == 0


@pytest.mark.parametrize("table_bits", [0, 3, 16])
def test_gray_enumeration_visits_each_codeword_once(table_bits):
    H = random_regular_code(12, col_degree=3, row_degree=6, seed=11)
    basis = generator_basis(H)
    blocks = list(gray_code_blocks(basis, table_bits=table_bits))
    words = np.concatenate(blocks)
    assert words.shape[0] == 2 ** basis.shape[0]
    assert np.unique(words, axis=0).shape[0] == words.shape[0]
    assert not blocks[0][0].any()


def test_matches_brute_force(rng):
    for seed in range(6):
        H = random_regular_code(16, col_degree=3, row_degree=6, seed=seed)
        spectrum = exhaustive_min_weight(H)
        assert (spectrum.d_min, spectrum.multiplicity) == min_weight_spectrum(H.to_dense())
    for _ in range(6):
        dense = (rng.random((6, 14)) < 0.4).astype(np.uint8)
        dense[0, 0] = 1
        H = Gf2Matrix.from_dense(dense)
        spectrum = exhaustive_min_weight(H)
        assert (spectrum.d_min, spectrum.multiplicity) == min_weight_spectrum(dense)


def test_is_codeword(hamming):
    assert is_codeword(hamming, BitVector.zeros(7))
    assert is_codeword(hamming, BitVector.from_string("1110000"))
    for i in range(7):
        assert not is_codeword(hamming, BitVector.from_indices(7, [i]))


def test_zero_matrix_has_distance_one():
    spectrum = exhaustive_min_weight(Gf2Matrix.from_dense(np.zeros((2, 4), dtype=np.uint8)))
    assert (spectrum.dimension, spectrum.d_min, spectrum.multiplicity) == (4, 1, 4)
