"""Core functionality for ldpc-minweight."""

from .bp import DecodeTrace, accumulate_reliability, calibrate, calibrate_im, decode
from .channel import ReceivedVector, initial_llr, transmit_all_zero
from .gf2 import BitVector, Gf2Matrix, ParityCheckMatrix, Permutation
from .oracle import exhaustive_min_weight, is_codeword
from .search import CandidateList, run_search, run_search_async

__all__ = [
    "BitVector",
    "CandidateList",
    "DecodeTrace",
    "Gf2Matrix",
    "ParityCheckMatrix",
    "Permutation",
    "ReceivedVector",
    "accumulate_reliability",
    "calibrate",
    "calibrate_im",
    "decode",
    "exhaustive_min_weight",
    "initial_llr",
    "is_codeword",
    "run_search",
    "run_search_async",
    "transmit_all_zero",
]
