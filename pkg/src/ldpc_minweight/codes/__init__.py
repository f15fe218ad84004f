"""Parity-check matrix sources: alist files and built-in constructions."""

from .alist import load_alist, parse_alist, save_alist, write_alist
from .library import hamming_7_4, random_regular_code, repetition_3

__all__ = [
    "hamming_7_4",
    "load_alist",
    "parse_alist",
    "random_regular_code",
    "repetition_3",
    "save_alist",
    "write_alist",
]
