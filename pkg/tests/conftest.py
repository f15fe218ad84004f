"""Shared fixtures."""

import os
from pathlib import Path

import numpy as np
import pytest

from ldpc_minweight.codes.library import hamming_7_4, random_regular_code, repetition_3
from ldpc_minweight.core.gf2 import ParityCheckMatrix
from ldpc_minweight.utils.config import set_config

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def hamming() -> ParityCheckMatrix:
    return hamming_7_4()


@pytest.fixture
def repetition() -> ParityCheckMatrix:
    return repetition_3()


@pytest.fixture
def regular_code() -> ParityCheckMatrix:
    return random_regular_code(24, col_degree=3, row_degree=6, seed=7)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(autouse=True)
def fresh_config():
    set_config(None)
    yield
    set_config(None)


@pytest.fixture
def mackay_path():
    """Resolve a database alist file, skipping the test when it is not available."""

    def resolve(name: str) -> Path:
        codes_dir = os.getenv("MINWEIGHT_CODES_DIR")
        if not codes_dir:
            pytest.skip("MINWEIGHT_CODES_DIR not set")
        path = Path(codes_dir) / name
        if not path.is_file():
            pytest.skip(f"{name} not found in {codes_dir}")
        return path

    return resolve
