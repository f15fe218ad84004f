"""Reliability-based syndrome reprocessing that harvests light codewords.

One trial sends a noisy all-zero codeword, runs BP, sorts bits by accumulated
reliability, puts the least reliable independent columns of H in front,
enumerates every error pattern with at most ``p`` ones in the information set
that reproduces the BP syndrome, and XORs those patterns pairwise: the XOR of
two patterns with the same syndrome is a codeword.
"""

import asyncio
import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Optional, Sequence, Union, overload

import numpy as np

from ..errors import ContractViolation
from ..models.entities import CodewordRecord, SearchConfig, SearchReport, TrialRecord
from .bp import accumulate_reliability, decode
from .channel import initial_llr, transmit_all_zero
from .gf2 import (
    WORD_BITS,
    WORD_DTYPE,
    BitVector,
    Gf2Matrix,
    ParityCheckMatrix,
    Permutation,
    pack_bits,
    popcount,
    rank,
    select_independent_columns,
    syndrome,
    systematic_reduce,
    unpack_bits,
)

logger = logging.getLogger(__name__)

TrialCallback = Callable[[TrialRecord], None]

_CHECK_CHUNK = 4096


@dataclass(frozen=True)
class PermutationPair:
    """λ1 (reliability sort) followed by λ2 (independence repair)."""

    reliability: Permutation
    independence: Permutation

    @property
    def combined(self) -> Permutation:
        return self.reliability.then(self.independence)

    @property
    def inverse(self) -> Permutation:
        return self.combined.inverse()

    def to_permuted(self, vector: BitVector) -> BitVector:
        return self.combined.apply(vector)

    def to_original(self, vector: BitVector) -> BitVector:
        return self.inverse.apply(vector)


class TrialBasis(NamedTuple):
    """Permutations and reordered matrix H2 for one trial."""

    permutations: PermutationPair
    matrix: Gf2Matrix
    rank: int


def build_permutations(r: np.ndarray, H: Gf2Matrix) -> TrialBasis:
    """Sort columns by ascending reliability, then move independent columns to the front."""
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (H.cols,):
        raise ContractViolation(f"build_permutations: expected {H.cols} reliabilities")
    reliability = Permutation.from_order(np.argsort(r, kind="stable"))
    H1 = H.permute_columns(reliability)
    selection = select_independent_columns(H1, Permutation.identity(H.cols))
    pair = PermutationPair(reliability, selection.permutation)
    return TrialBasis(pair, selection.matrix, selection.rank)


@dataclass(frozen=True)
class ErrorPattern:
    """Error pattern in permuted coordinates: basis part first, information set after."""

    bits: BitVector
    weight: int
    info_support: tuple[int, ...]


class PatternBatch(Sequence[ErrorPattern]):
    """Sorted error patterns stored as packed basis and information-set words."""

    def __init__(
        self,
        basis_size: int,
        info_size: int,
        basis_words: np.ndarray,
        info_words: np.ndarray,
        supports: np.ndarray,
        weights: np.ndarray,
    ):
        self.basis_size = basis_size
        self.info_size = info_size
        self.basis_words = basis_words
        self.info_words = info_words
        self.supports = supports
        self.weights = weights

    @property
    def length(self) -> int:
        return self.basis_size + self.info_size

    def full_bits(self, indices: Union[np.ndarray, slice] = slice(None)) -> np.ndarray:
        """Unpacked ``[basis | info]`` rows for the selected patterns."""
        return np.concatenate(
            [
                unpack_bits(self.basis_words[indices], self.basis_size),
                unpack_bits(self.info_words[indices], self.info_size),
            ],
            axis=-1,
        )

    def __len__(self) -> int:
        return int(self.weights.size)

    @overload
    def __getitem__(self, index: int) -> ErrorPattern: ...

    @overload
    def __getitem__(self, index: slice) -> list[ErrorPattern]: ...

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        if index < 0:
            index += len(self)
        if not 0 <= index < len(self):
            raise IndexError(index)
        support = tuple(int(i) for i in self.supports[index] if i >= 0)
        return ErrorPattern(
            bits=BitVector.from_bits(self.full_bits(np.array([index]))[0]),
            weight=int(self.weights[index]),
            info_support=support,
        )

    def __iter__(self) -> Iterator[ErrorPattern]:
        for index in range(len(self)):
            yield self[index]


def _combinations(k: int, size: int) -> np.ndarray:
    """All ``size``-subsets of ``range(k)`` in lexicographic order, one per row."""
    if size == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if size == 1:
        return np.arange(k, dtype=np.int64)[:, None]
    if size == 2:
        first, second = np.triu_indices(k, 1)
        return np.stack([first, second], axis=1).astype(np.int64)
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(k), size)), dtype=np.int64
    )
    return flat.reshape(-1, size)


def enumerate_patterns(H_sys: Gf2Matrix, s_sys: BitVector, p: int) -> PatternBatch:
    """Every pattern with at most ``p`` ones in the information set solving H_sys·e = s_sys.

    With H_sys = [I | P], the basis part is e1 = P·e2 ⊕ s_sys. Patterns are
    sorted by total weight, then information-set support size, then support
    indices.
    """
    if p < 0:
        raise ContractViolation(f"Order p must be non-negative, got {p}")
    basis_size = H_sys.rows
    info_size = H_sys.cols - basis_size
    if s_sys.length != basis_size:
        raise ContractViolation(f"Syndrome length {s_sys.length} != {basis_size} rows")
    dense = H_sys.to_dense()
    if not np.array_equal(dense[:, :basis_size], np.eye(basis_size, dtype=np.uint8)):
        raise ContractViolation("enumerate_patterns needs a systematic [I | P] matrix")

    parity_columns = pack_bits(dense[:, basis_size:].T)
    order = min(p, info_size)
    info_width = (info_size + WORD_BITS - 1) // WORD_BITS

    basis_blocks, info_blocks, support_blocks = [], [], []
    for size in range(order + 1):
        combos = _combinations(info_size, size)
        count = combos.shape[0]
        basis = np.tile(s_sys.words, (count, 1))
        info = np.zeros((count, info_width), dtype=WORD_DTYPE)
        rows = np.arange(count)
        for t in range(size):
            cols = combos[:, t]
            basis ^= parity_columns[cols]
            info[rows, cols // WORD_BITS] |= np.left_shift(
                np.uint64(1), (cols % WORD_BITS).astype(np.uint64)
            )
        supports = np.full((count, order), -1, dtype=np.int64)
        supports[:, :size] = combos
        basis_blocks.append(basis)
        info_blocks.append(info)
        support_blocks.append(supports)

    basis_words = np.concatenate(basis_blocks)
    info_words = np.concatenate(info_blocks)
    supports = np.concatenate(support_blocks)
    sizes = (supports >= 0).sum(axis=1)
    weights = popcount(basis_words) + sizes

    keys = [supports[:, column] for column in range(order - 1, -1, -1)]
    ranking = np.lexsort(keys + [sizes, weights])
    return PatternBatch(
        basis_size,
        info_size,
        basis_words[ranking],
        info_words[ranking],
        supports[ranking],
        weights[ranking],
    )


def check_patterns(
    H_sys: Gf2Matrix, s_sys: BitVector, patterns: PatternBatch, indices: np.ndarray
) -> None:
    """Recompute H_sys·e for the selected patterns and fail on any mismatch."""
    dense = H_sys.to_dense().astype(np.int64)
    target = s_sys.to_bits().astype(np.int64)
    for start in range(0, indices.size, _CHECK_CHUNK):
        chunk = indices[start : start + _CHECK_CHUNK]
        products = (patterns.full_bits(chunk).astype(np.int64) @ dense.T) & 1
        bad = np.flatnonzero((products != target).any(axis=1))
        if bad.size:
            raise ContractViolation(
                f"Error pattern {int(chunk[bad[0]])} does not reproduce the reduced syndrome"
            )


def harvest_codewords(
    patterns: PatternBatch,
    syndrome_zero: bool,
    perm: PermutationPair,
    all_pairs_top: Optional[int] = None,
) -> list[BitVector]:
    """Lightest nonzero codewords obtainable from the sorted patterns, in original order.

    With a zero syndrome every nonzero pattern is already a codeword. Otherwise
    the first (lightest) pattern is XORed with each of the others.
    ``all_pairs_top`` additionally XORs all pairs among the lightest T patterns.
    """
    if len(patterns) == 0:
        return []
    basis, info = patterns.basis_words, patterns.info_words

    basis_parts, info_parts = [], []
    if syndrome_zero:
        nonzero = patterns.weights > 0
        basis_parts.append(basis[nonzero])
        info_parts.append(info[nonzero])
    else:
        basis_parts.append(basis[1:] ^ basis[0])
        info_parts.append(info[1:] ^ info[0])
    if all_pairs_top:
        top = min(all_pairs_top, len(patterns))
        first, second = np.triu_indices(top, 1)
        basis_parts.append(basis[first] ^ basis[second])
        info_parts.append(info[first] ^ info[second])

    products = np.concatenate(
        [np.concatenate(basis_parts), np.concatenate(info_parts)], axis=1
    )
    weights = popcount(products)
    nonzero = weights > 0
    if not nonzero.any():
        return []
    lightest = weights[nonzero].min()
    chosen = np.unique(products[weights == lightest], axis=0)

    width = basis.shape[1]
    bits = np.concatenate(
        [
            unpack_bits(chosen[:, :width], patterns.basis_size),
            unpack_bits(chosen[:, width:], patterns.info_size),
        ],
        axis=1,
    )
    original = perm.inverse.apply_array(bits)
    return [BitVector.from_bits(row) for row in original]


@dataclass
class CandidateList:
    """Distinct lightest codewords seen so far, keyed by exact bit content."""

    keep_top: int = 1024
    best_weight: Optional[int] = None
    codewords: dict[bytes, BitVector] = field(default_factory=dict)
    found_at_trial: dict[bytes, int] = field(default_factory=dict)
    truncated: bool = False

    @property
    def multiplicity(self) -> int:
        return len(self.codewords)

    def __contains__(self, vector: BitVector) -> bool:
        return vector.key() in self.codewords

    def witnesses(self) -> list[tuple[BitVector, int]]:
        """Codewords with their discovery trial, ordered by trial then hex."""
        items = [(v, self.found_at_trial[k]) for k, v in self.codewords.items()]
        return sorted(items, key=lambda item: (item[1], item[0].to_hex()))


def update_candidates(
    candidates: CandidateList, found: list[BitVector], trial: int, H: Gf2Matrix
) -> CandidateList:
    """Fold one trial's harvest into ``candidates`` (in place) and return it."""
    for vector in found:
        if vector.is_zero() or not syndrome(H, vector).is_zero():
            raise ContractViolation(f"Trial {trial} produced a vector that is not a codeword")
    if not found:
        return candidates

    weight = min(vector.weight for vector in found)
    if candidates.best_weight is None or weight < candidates.best_weight:
        if candidates.best_weight is not None:
            logger.info(
                "Trial %d: best weight %d -> %d", trial, candidates.best_weight, weight
            )
        candidates.best_weight = weight
        candidates.codewords.clear()
        candidates.found_at_trial.clear()
        candidates.truncated = False
    elif weight > candidates.best_weight:
        return candidates

    for vector in found:
        if vector.weight != weight:
            continue
        key = vector.key()
        if key in candidates.codewords:
            continue
        if len(candidates.codewords) >= candidates.keep_top:
            candidates.truncated = True
            continue
        candidates.codewords[key] = vector
        candidates.found_at_trial[key] = trial
    return candidates


@dataclass
class TrialOutcome:
    """Everything one trial contributes to the reduction."""

    trial: int
    found: list[BitVector]
    iterations_run: int
    syndrome_weight: int
    pattern_count: int
    elapsed_seconds: float


def _sample_indices(count: int, cfg: SearchConfig) -> np.ndarray:
    if cfg.pattern_check == "off" or count == 0:
        return np.zeros(0, dtype=np.int64)
    if cfg.pattern_check == "all":
        return np.arange(count)
    stride = max(1, int(round(1.0 / cfg.pattern_sample_rate)))
    return np.arange(0, count, stride)


def run_trial(H: ParityCheckMatrix, cfg: SearchConfig, trial: int) -> TrialOutcome:
    """One transmission: channel, BP, reliability ordering, reprocessing, harvest."""
    started = time.perf_counter()
    received = transmit_all_zero(H.cols, cfg.channel, trial)
    trace = decode(H, initial_llr(received, cfg.channel.sigma), cfg.bp)
    reliability = accumulate_reliability(trace, cfg.alpha)
    basis = build_permutations(reliability, H)
    H_sys, s_sys = systematic_reduce(basis.matrix, trace.final_syndrome, basis_size=basis.rank)
    patterns = enumerate_patterns(H_sys, s_sys, cfg.order_p)
    check_patterns(H_sys, s_sys, patterns, _sample_indices(len(patterns), cfg))
    found = harvest_codewords(patterns, trace.syndrome_zero, basis.permutations, cfg.all_pairs_top)
    return TrialOutcome(
        trial=trial,
        found=found,
        iterations_run=trace.iterations_run,
        syndrome_weight=trace.final_syndrome.weight,
        pattern_count=len(patterns),
        elapsed_seconds=time.perf_counter() - started,
    )


class _Reducer:
    """Folds trial outcomes, in trial order, into a candidate list and progress rows."""

    def __init__(self, H: ParityCheckMatrix, cfg: SearchConfig, on_trial: Optional[TrialCallback]):
        self.H = H
        self.cfg = cfg
        self.on_trial = on_trial
        self.candidates = CandidateList(keep_top=cfg.keep_top)
        self.records: list[TrialRecord] = []
        self.started = time.perf_counter()

    def absorb(self, outcome: TrialOutcome) -> None:
        update_candidates(self.candidates, outcome.found, outcome.trial, self.H)
        record = TrialRecord(
            trial=outcome.trial,
            iterations_run=outcome.iterations_run,
            syndrome_weight=outcome.syndrome_weight,
            pattern_count=outcome.pattern_count,
            harvested_weight=min((v.weight for v in outcome.found), default=None),
            harvested_count=len(outcome.found),
            best_weight=self.candidates.best_weight,
            multiplicity=self.candidates.multiplicity,
            elapsed_seconds=outcome.elapsed_seconds,
        )
        self.records.append(record)
        every = self.cfg.report_every
        if every and outcome.trial % every == 0:
            logger.info(
                "trial=%d best_weight=%s multiplicity=%d elapsed=%.2fs",
                outcome.trial,
                self.candidates.best_weight,
                self.candidates.multiplicity,
                time.perf_counter() - self.started,
            )
        if self.on_trial is not None:
            self.on_trial(record)

    def report(self) -> SearchReport:
        H_rank = rank(self.H)
        witnesses = [
            CodewordRecord(
                hex=vector.to_hex(), length=vector.length, weight=vector.weight, found_at_trial=t
            )
            for vector, t in self.candidates.witnesses()
        ]
        trials = [w.found_at_trial for w in witnesses]
        return SearchReport(
            config=self.cfg,
            n=self.H.cols,
            m=self.H.rows,
            rank=H_rank,
            dimension=self.H.cols - H_rank,
            best_weight=self.candidates.best_weight,
            multiplicity=self.candidates.multiplicity,
            truncated=self.candidates.truncated,
            witnesses=witnesses,
            earliest_best_trial=min(trials, default=None),
            complete_multiplicity_trial=max(trials, default=None),
            trials=self.records,
            wall_seconds=time.perf_counter() - self.started,
        )


def run_search(
    H: Gf2Matrix, cfg: SearchConfig, on_trial: Optional[TrialCallback] = None
) -> SearchReport:
    """Run ``cfg.l_c`` trials and report the surviving lightest codewords.

    With ``cfg.threads > 1`` the trials are dispatched through
    :func:`run_search_async`; the result is identical to the sequential path.
    """
    H = ParityCheckMatrix.from_matrix(H)
    if cfg.threads > 1:
        return asyncio.run(run_search_async(H, cfg, on_trial))

    reducer = _Reducer(H, cfg, on_trial)
    for trial in range(1, cfg.l_c + 1):
        reducer.absorb(run_trial(H, cfg, trial))
    return reducer.report()


async def run_search_async(
    H: Gf2Matrix, cfg: SearchConfig, on_trial: Optional[TrialCallback] = None
) -> SearchReport:
    """Map trials onto worker threads, reduce their outcomes in trial order."""
    H = ParityCheckMatrix.from_matrix(H)
    semaphore = asyncio.Semaphore(cfg.threads)

    async def dispatch(trial: int) -> TrialOutcome:
        async with semaphore:
            return await asyncio.to_thread(run_trial, H, cfg, trial)

    reducer = _Reducer(H, cfg, on_trial)
    pending: dict[int, TrialOutcome] = {}
    next_trial = 1
    tasks = [asyncio.ensure_future(dispatch(t)) for t in range(1, cfg.l_c + 1)]
    try:
        for finished in asyncio.as_completed(tasks):
            outcome = await finished
            pending[outcome.trial] = outcome
            while next_trial in pending:
                reducer.absorb(pending.pop(next_trial))
                next_trial += 1
    finally:
        for task in tasks:
            task.cancel()
    return reducer.report()
