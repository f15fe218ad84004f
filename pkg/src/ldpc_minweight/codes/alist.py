"""Reader and writer for the MacKay alist sparse-matrix format.

Layout (whitespace tokenized, indices 1-based on disk)::

    N M
    max_col_deg max_row_deg
    N column degrees
    M row degrees
    N column lists (row indices, zero-padded to max_col_deg)
    M row lists (column indices, zero-padded to max_row_deg)

Zero padding is optional on input and always written on output.
"""

import io
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, TextIO, Union

from ..core.gf2 import ParityCheckMatrix
from ..errors import AlistIntegrityError, AlistParseError

logger = logging.getLogger(__name__)


def _first_repeat(indices: list[int]) -> Optional[int]:
    seen: set[int] = set()
    for index in indices:
        if index in seen:
            return index
        seen.add(index)
    return None


@dataclass
class AlistDocument:
    """Parsed alist contents with 0-based adjacency lists."""

    n_cols: int
    n_rows: int
    max_col_deg: int
    max_row_deg: int
    col_degrees: list[int] = field(default_factory=list)
    row_degrees: list[int] = field(default_factory=list)
    col_adjacency: list[list[int]] = field(default_factory=list)
    row_adjacency: list[list[int]] = field(default_factory=list)

    @property
    def n_ones(self) -> int:
        return sum(self.col_degrees)

    def validate(self) -> None:
        """Check that both adjacency views describe the same bit set, each bit listed once."""
        for col, rows in enumerate(self.col_adjacency):
            repeated = _first_repeat(rows)
            if repeated is not None:
                raise AlistIntegrityError("Column list repeats a row index", repeated, col)
        for row, cols in enumerate(self.row_adjacency):
            repeated = _first_repeat(cols)
            if repeated is not None:
                raise AlistIntegrityError("Row list repeats a column index", row, repeated)

        row_sets = [set(adj) for adj in self.row_adjacency]
        for col, rows in enumerate(self.col_adjacency):
            for row in rows:
                if col not in row_sets[row]:
                    raise AlistIntegrityError(
                        "Column view lists a bit missing from row view", row, col
                    )
        col_sets = [set(adj) for adj in self.col_adjacency]
        for row, cols in enumerate(self.row_adjacency):
            for col in cols:
                if row not in col_sets[col]:
                    raise AlistIntegrityError(
                        "Row view lists a bit missing from column view", row, col
                    )

    def to_matrix(self) -> ParityCheckMatrix:
        self.validate()
        return ParityCheckMatrix.from_column_adjacency(self.n_rows, self.col_adjacency)

    @classmethod
    def from_matrix(cls, H: ParityCheckMatrix) -> "AlistDocument":
        H = ParityCheckMatrix.from_matrix(H)
        col_adjacency = [adj.tolist() for adj in H.col_adjacency]
        row_adjacency = [adj.tolist() for adj in H.row_adjacency]
        col_degrees = [len(adj) for adj in col_adjacency]
        row_degrees = [len(adj) for adj in row_adjacency]
        return cls(
            n_cols=H.cols,
            n_rows=H.rows,
            max_col_deg=max(col_degrees),
            max_row_deg=max(row_degrees),
            col_degrees=col_degrees,
            row_degrees=row_degrees,
            col_adjacency=col_adjacency,
            row_adjacency=row_adjacency,
        )


class _TokenStream:
    """Integer token reader that remembers its position for error messages."""

    def __init__(self, text: str):
        self.tokens = text.split()
        self.position = 0

    def peek(self) -> Union[int, None]:
        if self.position >= len(self.tokens):
            return None
        return self._convert(self.position)

    def next(self, what: str) -> int:
        if self.position >= len(self.tokens):
            raise AlistParseError(f"Unexpected end of stream while reading {what}", self.position)
        value = self._convert(self.position)
        self.position += 1
        return value

    def _convert(self, position: int) -> int:
        token = self.tokens[position]
        try:
            return int(token)
        except ValueError:
            raise AlistParseError(f"Non-integer token {token!r}", position) from None

    @property
    def exhausted(self) -> bool:
        return self.position >= len(self.tokens)


def _read_lists(
    stream: _TokenStream, degrees: list[int], max_deg: int, bound: int, what: str
) -> list[list[int]]:
    lists = []
    for index, degree in enumerate(degrees):
        entries = []
        for _ in range(degree):
            position = stream.position
            value = stream.next(f"{what} list {index}")
            if not 1 <= value <= bound:
                raise AlistParseError(
                    f"Index {value} in {what} list {index} outside 1..{bound}", position
                )
            entries.append(value - 1)
        # Skip optional zero padding.
        padding = 0
        while padding < max_deg - degree and stream.peek() == 0:
            stream.next("padding")
            padding += 1
        lists.append(entries)
    return lists


def read_alist_document(source: Union[str, TextIO]) -> AlistDocument:
    """Tokenize an alist stream into an :class:`AlistDocument` without integrity checks."""
    text = source if isinstance(source, str) else source.read()
    stream = _TokenStream(text)

    n_cols = stream.next("column count")
    n_rows = stream.next("row count")
    if n_cols < 1 or n_rows < 1:
        raise AlistParseError(f"Invalid dimensions {n_cols}x{n_rows}", 0)
    max_col_deg = stream.next("max column degree")
    max_row_deg = stream.next("max row degree")

    def read_degrees(count: int, max_deg: int, what: str) -> list[int]:
        degrees = []
        for index in range(count):
            position = stream.position
            degree = stream.next(f"{what} degree {index}")
            if not 0 <= degree <= max_deg:
                raise AlistParseError(
                    f"{what.capitalize()} degree {degree} outside 0..{max_deg}", position
                )
            degrees.append(degree)
        return degrees

    col_degrees = read_degrees(n_cols, max_col_deg, "column")
    row_degrees = read_degrees(n_rows, max_row_deg, "row")
    col_adjacency = _read_lists(stream, col_degrees, max_col_deg, n_rows, "column")
    row_adjacency = _read_lists(stream, row_degrees, max_row_deg, n_cols, "row")

    if not stream.exhausted:
        raise AlistParseError("Unexpected trailing tokens", stream.position)

    return AlistDocument(
        n_cols=n_cols,
        n_rows=n_rows,
        max_col_deg=max_col_deg,
        max_row_deg=max_row_deg,
        col_degrees=col_degrees,
        row_degrees=row_degrees,
        col_adjacency=col_adjacency,
        row_adjacency=row_adjacency,
    )


def parse_alist(source: Union[str, TextIO]) -> ParityCheckMatrix:
    """Parse alist text (or a text stream) into a parity-check matrix."""
    document = read_alist_document(source)
    H = document.to_matrix()
    logger.debug("Parsed alist: %dx%d with %d ones", H.rows, H.cols, document.n_ones)
    return H


def load_alist(path: Union[str, Path]) -> ParityCheckMatrix:
    """Read an alist file from disk."""
    return parse_alist(Path(path).read_text(encoding="ascii"))


def write_alist(H: ParityCheckMatrix) -> str:
    """Serialize ``H`` as zero-padded alist text."""
    document = AlistDocument.from_matrix(H)
    out = io.StringIO()
    out.write(f"{document.n_cols} {document.n_rows}\n")
    out.write(f"{document.max_col_deg} {document.max_row_deg}\n")
    out.write(" ".join(str(d) for d in document.col_degrees) + "\n")
    out.write(" ".join(str(d) for d in document.row_degrees) + "\n")
    for entries in document.col_adjacency:
        padded = [i + 1 for i in entries] + [0] * (document.max_col_deg - len(entries))
        out.write(" ".join(str(i) for i in padded) + "\n")
    for entries in document.row_adjacency:
        padded = [i + 1 for i in entries] + [0] * (document.max_row_deg - len(entries))
        out.write(" ".join(str(i) for i in padded) + "\n")
    return out.getvalue()


def save_alist(H: ParityCheckMatrix, path: Union[str, Path]) -> None:
    Path(path).write_text(write_alist(H), encoding="ascii")
