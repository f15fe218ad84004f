"""Exception hierarchy for ldpc-minweight."""

from typing import Optional


class MinWeightError(Exception):
    """Base exception for all library errors.

    ``exit_code`` is the process status the CLI reports for this failure.
    """

    exit_code: int = 1

    def __init__(self, message: str, exit_code: Optional[int] = None):
        super().__init__(message)
        if exit_code is not None:
            self.exit_code = exit_code


class ContractViolation(MinWeightError, ValueError):
    """An operation was called with arguments outside its contract."""


class ConfigurationError(ContractViolation):
    """An environment setting could not be interpreted."""

    exit_code = 4


class SingularBasisError(ContractViolation):
    """The leftmost block handed to systematic reduction is not invertible."""

    def __init__(self, column: int):
        super().__init__(
            f"Leftmost basis block is singular at column {column}; "
            "reorder columns with select_independent_columns first"
        )
        self.column = column


class AlistParseError(MinWeightError):
    """Malformed alist token stream."""

    exit_code = 3

    def __init__(self, message: str, token_position: int):
        super().__init__(f"{message} (token {token_position})")
        self.token_position = token_position


class AlistIntegrityError(MinWeightError):
    """Column and row adjacency views of an alist file disagree."""

    exit_code = 3

    def __init__(self, message: str, row: int, col: int):
        super().__init__(f"{message}: entry (row={row}, col={col})")
        self.row = row
        self.col = col


class DimensionRefusedError(MinWeightError):
    """Exhaustive enumeration refused because the code dimension is too large."""

    exit_code = 5

    def __init__(self, dimension: int, max_dim: int):
        super().__init__(
            f"Code dimension {dimension} exceeds max_dim={max_dim}; "
            f"exhaustive enumeration would visit 2^{dimension} codewords"
        )
        self.dimension = dimension
        self.max_dim = max_dim
