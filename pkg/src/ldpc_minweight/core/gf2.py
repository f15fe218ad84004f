"""Bit-packed GF(2) vectors, matrices and permutations.

Bits are packed little-endian into 64-bit words: bit ``i`` of a vector lives
in word ``i // 64`` at position ``i % 64``. Row elimination XORs whole packed
rows at once, which is where the per-trial cost of the search goes.
"""

import logging
from typing import Iterable, NamedTuple, Optional, Sequence, Union

import numpy as np

from ..errors import ContractViolation, SingularBasisError

logger = logging.getLogger(__name__)

WORD_BITS = 64
WORD_DTYPE = np.dtype("<u8")

_ONE = np.uint64(1)


def word_count(nbits: int) -> int:
    """Number of 64-bit words needed to hold ``nbits`` bits."""
    return (nbits + WORD_BITS - 1) // WORD_BITS


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 array along its last axis into uint64 words."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    nbits = bits.shape[-1]
    if nbits == 0:
        return np.zeros(bits.shape[:-1] + (0,), dtype=WORD_DTYPE)
    pad = word_count(nbits) * WORD_BITS - nbits
    if pad:
        bits = np.concatenate([bits, np.zeros(bits.shape[:-1] + (pad,), dtype=np.uint8)], axis=-1)
    packed = np.packbits(bits, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view(WORD_DTYPE)


def unpack_bits(words: np.ndarray, nbits: int) -> np.ndarray:
    """Inverse of :func:`pack_bits`; returns a uint8 array with ``nbits`` on the last axis."""
    words = np.ascontiguousarray(words, dtype=WORD_DTYPE)
    if nbits == 0:
        return np.zeros(words.shape[:-1] + (0,), dtype=np.uint8)
    return np.unpackbits(words.view(np.uint8), axis=-1, count=nbits, bitorder="little")


def popcount(words: np.ndarray) -> np.ndarray:
    """Set-bit count along the last (word) axis."""
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


def _tail_mask(nbits: int) -> np.uint64:
    rem = nbits % WORD_BITS
    if rem == 0:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << rem) - 1)


def _column_bits(rows: np.ndarray, col: int) -> np.ndarray:
    """Boolean column ``col`` of a packed row matrix."""
    return ((rows[:, col // WORD_BITS] >> np.uint64(col % WORD_BITS)) & _ONE).astype(bool)


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class BitVector:
    """Immutable packed GF(2) vector."""

    __slots__ = ("length", "words")

    def __init__(self, length: int, words: Optional[np.ndarray] = None):
        if length < 0:
            raise ContractViolation(f"BitVector length must be non-negative, got {length}")
        expected = word_count(length)
        if words is None:
            words = np.zeros(expected, dtype=WORD_DTYPE)
        else:
            words = np.array(words, dtype=WORD_DTYPE).reshape(-1)
            if words.size != expected:
                raise ContractViolation(
                    f"BitVector of length {length} needs {expected} words, got {words.size}"
                )
            if expected:
                words[-1] &= _tail_mask(length)
        self.length = length
        self.words = _readonly(words)

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length)

    @classmethod
    def from_bits(cls, bits: Union[Sequence[int], np.ndarray]) -> "BitVector":
        bits = np.asarray(bits, dtype=np.uint8).reshape(-1)
        return cls(bits.size, pack_bits(bits))

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        """Build from a string of '0'/'1' characters, bit 0 first."""
        return cls.from_bits([1 if ch == "1" else 0 for ch in text if ch in "01"])

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVector":
        bits = np.zeros(length, dtype=np.uint8)
        idx = np.fromiter(indices, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= length):
            raise ContractViolation(f"Bit index out of range for length {length}")
        bits[idx] = 1
        return cls.from_bits(bits)

    @classmethod
    def from_hex(cls, text: str, length: int) -> "BitVector":
        """Decode lowercase hex where bit 0 is the most significant bit of the first nibble."""
        nibbles = (length + 3) // 4
        if len(text) != nibbles:
            raise ContractViolation(f"Hex string of {len(text)} digits cannot hold {length} bits")
        padded = text if len(text) % 2 == 0 else text + "0"
        raw = np.frombuffer(bytes.fromhex(padded), dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="big")
        if bits[length:].any():
            raise ContractViolation("Hex string has set bits beyond the vector length")
        return cls.from_bits(bits[:length])

    def to_bits(self) -> np.ndarray:
        return unpack_bits(self.words, self.length)

    def to_hex(self) -> str:
        bits = self.to_bits()
        pad = (-self.length) % 8
        if pad:
            bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
        return np.packbits(bits, bitorder="big").tobytes().hex()[: (self.length + 3) // 4]

    @property
    def weight(self) -> int:
        return int(popcount(self.words))

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.to_bits())

    def is_zero(self) -> bool:
        return not self.words.any()

    def key(self) -> bytes:
        """Exact bit content as bytes, for set semantics."""
        return self.words.tobytes()

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.length:
            raise IndexError(index)
        return int((self.words[index // WORD_BITS] >> np.uint64(index % WORD_BITS)) & _ONE)

    def __xor__(self, other: "BitVector") -> "BitVector":
        return xor_into(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.length, self.key()))

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.to_bits())

    def __repr__(self) -> str:
        if self.length <= 64:
            return f"BitVector('{self}')"
        return f"BitVector(length={self.length}, weight={self.weight})"


class Permutation:
    """Bijection on ``[0, size)``; ``forward[old] = new``."""

    __slots__ = ("forward", "_order")

    def __init__(self, forward: Union[Sequence[int], np.ndarray]):
        forward = np.array(forward, dtype=np.int64).reshape(-1)
        if not np.array_equal(np.sort(forward), np.arange(forward.size)):
            raise ContractViolation("Permutation forward map is not a bijection")
        order = np.empty_like(forward)
        order[forward] = np.arange(forward.size)
        self.forward = _readonly(forward)
        self._order = _readonly(order)

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(np.arange(size))

    @classmethod
    def from_order(cls, order: Union[Sequence[int], np.ndarray]) -> "Permutation":
        """Build from ``order[new] = old``, the form argsort produces."""
        order = np.asarray(order, dtype=np.int64)
        forward = np.empty_like(order)
        forward[order] = np.arange(order.size)
        return cls(forward)

    @property
    def size(self) -> int:
        return int(self.forward.size)

    @property
    def order(self) -> np.ndarray:
        """``order[new] = old``."""
        return self._order

    def inverse(self) -> "Permutation":
        return Permutation(self._order)

    def then(self, other: "Permutation") -> "Permutation":
        """Composition: apply ``self`` first, then ``other``."""
        if other.size != self.size:
            raise ContractViolation("Cannot compose permutations of different sizes")
        return Permutation(other.forward[self.forward])

    def apply_array(self, values: np.ndarray) -> np.ndarray:
        """Reorder the last axis of ``values``."""
        values = np.asarray(values)
        if values.shape[-1] != self.size:
            raise ContractViolation(
                f"Permutation of size {self.size} applied to axis of length {values.shape[-1]}"
            )
        return values[..., self._order]

    def apply(self, vector: BitVector) -> BitVector:
        return BitVector.from_bits(self.apply_array(vector.to_bits()))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.forward, np.arange(self.size)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return bool(np.array_equal(self.forward, other.forward))

    def __hash__(self) -> int:
        return hash(self.forward.tobytes())

    def __repr__(self) -> str:
        return f"Permutation({self.forward.tolist()})"


class Gf2Matrix:
    """Dense packed GF(2) matrix, one packed row per check."""

    def __init__(self, rows: int, cols: int, row_data: np.ndarray):
        if rows < 0 or cols < 1:
            raise ContractViolation(f"Matrix must have at least one column, got {rows}x{cols}")
        row_data = np.array(row_data, dtype=WORD_DTYPE).reshape(rows, word_count(cols))
        row_data[:, -1] &= _tail_mask(cols)
        self.rows = rows
        self.cols = cols
        self.row_data = _readonly(row_data)

    @classmethod
    def from_dense(cls, dense: Union[Sequence[Sequence[int]], np.ndarray]) -> "Gf2Matrix":
        dense = np.asarray(dense, dtype=np.uint8)
        if dense.ndim != 2:
            raise ContractViolation("Dense matrix must be two-dimensional")
        return cls(dense.shape[0], dense.shape[1], pack_bits(dense))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "Gf2Matrix":
        return cls.from_dense([[1 if ch == "1" else 0 for ch in row] for row in rows])

    @classmethod
    def identity(cls, size: int) -> "Gf2Matrix":
        return cls.from_dense(np.eye(size, dtype=np.uint8))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return int(popcount(self.row_data).sum())

    def to_dense(self) -> np.ndarray:
        return unpack_bits(self.row_data, self.cols)

    def row(self, index: int) -> BitVector:
        return BitVector(self.cols, self.row_data[index])

    def column(self, index: int) -> BitVector:
        return BitVector.from_bits(_column_bits(self.row_data, index))

    def permute_columns(self, permutation: Permutation) -> "Gf2Matrix":
        if permutation.size != self.cols:
            raise ContractViolation(
                f"Permutation of size {permutation.size} applied to {self.cols} columns"
            )
        return Gf2Matrix.from_dense(permutation.apply_array(self.to_dense()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.row_data, other.row_data))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.row_data.tobytes()))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(rows={self.rows}, cols={self.cols}, nnz={self.nnz})"


class ParityCheckMatrix(Gf2Matrix):
    """Parity-check matrix H with both packed rows and Tanner-graph adjacency.

    Edges are numbered row-major: edge ``e`` joins check ``edge_check[e]`` and
    variable ``edge_var[e]``.
    """

    def __init__(self, rows: int, cols: int, row_data: np.ndarray):
        super().__init__(rows, cols, row_data)
        dense = self.to_dense()
        checks, variables = np.nonzero(dense)
        self.edge_check = _readonly(checks.astype(np.int64))
        self.edge_var = _readonly(variables.astype(np.int64))
        self.check_degrees = _readonly(dense.sum(axis=1, dtype=np.int64))
        self.var_degrees = _readonly(dense.sum(axis=0, dtype=np.int64))
        self.row_adjacency = [_readonly(np.flatnonzero(dense[i])) for i in range(rows)]
        self.col_adjacency = [_readonly(np.flatnonzero(dense[:, j])) for j in range(cols)]

    @classmethod
    def from_matrix(cls, matrix: Gf2Matrix) -> "ParityCheckMatrix":
        if isinstance(matrix, ParityCheckMatrix):
            return matrix
        return cls(matrix.rows, matrix.cols, matrix.row_data)

    @classmethod
    def from_column_adjacency(
        cls, n_rows: int, col_adjacency: Sequence[Sequence[int]]
    ) -> "ParityCheckMatrix":
        """Build from 0-based row-index lists, one per column."""
        dense = np.zeros((n_rows, len(col_adjacency)), dtype=np.uint8)
        for col, row_indices in enumerate(col_adjacency):
            dense[list(row_indices), col] = 1
        return cls.from_dense(dense)

    @property
    def n_edges(self) -> int:
        return int(self.edge_var.size)


class ColumnSelection(NamedTuple):
    """Result of :func:`select_independent_columns`."""

    permutation: Permutation
    matrix: Gf2Matrix
    rank: int


def _check_length(expected: int, actual: int, what: str) -> None:
    if expected != actual:
        raise ContractViolation(f"{what}: expected length {expected}, got {actual}")


def xor_into(a: BitVector, b: BitVector) -> BitVector:
    """Componentwise XOR of two equal-length vectors."""
    _check_length(a.length, b.length, "xor_into")
    return BitVector(a.length, a.words ^ b.words)


def syndrome(H: Gf2Matrix, e: BitVector) -> BitVector:
    """s = H·e over GF(2)."""
    _check_length(H.cols, e.length, "syndrome")
    parity = popcount(H.row_data & e.words) & 1
    return BitVector.from_bits(parity)


def syndromes(H: Gf2Matrix, words: np.ndarray) -> np.ndarray:
    """Syndromes of a batch of packed vectors (shape ``(n, W)``), as uint8 ``(n, rows)``."""
    products = words[:, None, :] & H.row_data[None, :, :]
    return (popcount(products) & 1).astype(np.uint8)


def _pivot_scan(rows: np.ndarray, scan: Iterable[int], limit: int) -> list[int]:
    """Gauss-Jordan over ``rows`` (modified in place) visiting columns in ``scan`` order.

    Returns the columns that received a pivot, in visit order.
    """
    used = np.zeros(rows.shape[0], dtype=bool)
    kept: list[int] = []
    for col in scan:
        if len(kept) == limit:
            break
        bits = _column_bits(rows, int(col))
        candidates = np.flatnonzero(bits & ~used)
        if candidates.size == 0:
            continue
        pivot = candidates[0]
        used[pivot] = True
        bits[pivot] = False
        rows[bits] ^= rows[pivot]
        kept.append(int(col))
    return kept


def rank(H: Gf2Matrix) -> int:
    """GF(2) rank; ``H`` is left untouched."""
    work = H.row_data.copy()
    return len(_pivot_scan(work, range(H.cols), H.rows))


def select_independent_columns(H: Gf2Matrix, preference: Permutation) -> ColumnSelection:
    """Reorder columns so the leftmost ``rank(H)`` are linearly independent.

    Columns are scanned in ``preference`` order; a column is kept iff it is
    independent of those already kept. Kept columns fill the leading positions
    in scan order and rejected columns follow, also in scan order.
    """
    _check_length(H.cols, preference.size, "select_independent_columns")
    scan = preference.order
    work = H.row_data.copy()
    kept = _pivot_scan(work, scan, H.rows)
    kept_set = set(kept)
    rejected = [int(c) for c in scan if int(c) not in kept_set]
    permutation = Permutation.from_order(kept + rejected)
    if len(kept) < H.rows:
        logger.debug("Rank-deficient matrix: rank %d < %d rows", len(kept), H.rows)
    return ColumnSelection(permutation, H.permute_columns(permutation), len(kept))


def systematic_reduce(
    H2: Gf2Matrix, s: BitVector, basis_size: Optional[int] = None
) -> tuple[Gf2Matrix, BitVector]:
    """Row-reduce ``H2`` to ``[I | P]`` mirroring every row operation on ``s``.

    ``basis_size`` defaults to ``H2.rows``. When it is smaller (rank-deficient
    H), the dependent rows vanish and are dropped; their syndrome bits must
    vanish too. A zero matrix reduces to a system with no rows.
    """
    _check_length(H2.rows, s.length, "systematic_reduce")
    size = H2.rows if basis_size is None else basis_size
    if not 0 <= size <= min(H2.rows, H2.cols):
        raise ContractViolation(f"Basis size {size} out of range for {H2.rows}x{H2.cols} matrix")

    rows = H2.row_data.copy()
    target = s.to_bits().copy()
    for col in range(size):
        bits = _column_bits(rows, col)
        candidates = np.flatnonzero(bits[col:])
        if candidates.size == 0:
            raise SingularBasisError(col)
        pivot = col + int(candidates[0])
        if pivot != col:
            rows[[col, pivot]] = rows[[pivot, col]]
            target[[col, pivot]] = target[[pivot, col]]
            bits[[col, pivot]] = bits[[pivot, col]]
        bits[col] = False
        rows[bits] ^= rows[col]
        target[bits] ^= target[col]

    if size < H2.rows:
        if rows[size:].any():
            raise ContractViolation(
                f"Basis size {size} is below the rank of the {H2.rows}-row matrix"
            )
        if target[size:].any():
            raise ContractViolation("Syndrome is inconsistent with the rank-deficient matrix")
        rows = rows[:size]
        target = target[:size]

    return Gf2Matrix(size, H2.cols, rows), BitVector.from_bits(target)


def generator_basis(H: Gf2Matrix) -> np.ndarray:
    """Packed basis of the null space of ``H`` (shape ``(N - rank, W)``), original coordinates."""
    selection = select_independent_columns(H, Permutation.identity(H.cols))
    r = selection.rank
    k = H.cols - r
    if k == 0:
        return np.zeros((0, word_count(H.cols)), dtype=WORD_DTYPE)
    reduced, _ = systematic_reduce(selection.matrix, BitVector.zeros(H.rows), basis_size=r)
    parity = reduced.to_dense()[:, r:]
    basis = np.zeros((k, H.cols), dtype=np.uint8)
    basis[:, :r] = parity.T
    basis[np.arange(k), r + np.arange(k)] = 1
    return pack_bits(selection.permutation.inverse().apply_array(basis))
