"""ldpc-minweight - minimum-weight codeword search for LDPC codes."""

__version__ = "0.1.0"
