"""Multi-read screening: pick the most reliable reads by positional consensus.

Each read is scored against the whole read set. Conceptually the reads form a
``v x k`` character matrix (k = source strand length); a read's score at
column j is the number of reads that carry the same base at j, or a penalty
of ``-v`` if the read is too short to reach j. The per-read score is the row
mean, kept as an exact rational so that ties are detected exactly, never by
tolerance.

When the selection boundary falls inside a group of equal scores, the tied
reads are re-scored on their k-mer decomposition (stride-1 substrings of
length K): same column-consensus counting, but over the ``v x (k-K+1)``
k-mer matrix built from all reads. K-mers are order-sensitive, so
positionally identical scores that come from differently arranged errors
usually separate. Any ties that survive re-scoring break by ascending read
number.

Read numbers throughout are 1-based, matching ``read_<i>`` FASTA headers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .channel import ReadSet
from .sequences import to_decoder_symbols

_MISSING = 4  # digit value marking absent positions in the padded matrix


@dataclass(frozen=True)
class ScreeningResult:
    """Outcome of a screening pass.

    ``selected`` holds w distinct 1-based read numbers in descending score
    order. ``scores`` are the exact per-read score means (empty for random
    selection). ``kmer_scores`` carries the re-scoring values for the tied
    reads when the k-mer tie-break ran, else None.
    """

    selected: tuple[int, ...]
    scores: tuple[Fraction, ...]
    tie_broken: bool
    kmer_scores: dict[int, Fraction] | None = None


def _padded_digit_matrix(reads: ReadSet, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Stack reads into a v x k digit matrix; absent positions hold _MISSING."""
    from .sequences import dna_to_digits

    v = reads.v
    mat = np.full((v, k), _MISSING, dtype=np.int64)
    for i, read in enumerate(reads.reads):
        m = min(len(read), k)
        if m:
            mat[i, :m] = dna_to_digits(read[:m])
    present = mat != _MISSING
    return mat, present


def positional_scores(reads: ReadSet, k: int) -> tuple[np.ndarray, list[Fraction]]:
    """Score every read by per-column base agreement.

    Returns the v x k score matrix (consensus counts, or -v at positions a
    read does not reach) and the list of exact row means.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    v = reads.v
    mat, present = _padded_digit_matrix(reads, k)
    # counts[b][j] = how many reads carry base b at column j
    counts = np.zeros((5, k), dtype=np.int64)
    for b in range(4):
        counts[b] = (mat == b).sum(axis=0)
    q_matrix = np.where(present, np.take_along_axis(counts, mat, axis=0), -v)
    q = [Fraction(int(s), k) for s in q_matrix.sum(axis=1)]
    return q_matrix, q


def kmerize(seq: str, K: int) -> list[str]:
    """Decompose a sequence into its stride-1 substrings of length K."""
    if K < 1:
        raise ValueError("K must be >= 1")
    return [seq[t : t + K] for t in range(len(seq) - K + 1)]


def kmer_rescore(
    reads: ReadSet, tied: list[int], K: int, k: int
) -> dict[int, Fraction]:
    """Re-score tied reads on the k-mer matrix of the whole read set.

    Column j of the k-mer matrix holds each read's substring starting at j
    (present only if the read reaches j+K); counting works exactly like
    :func:`positional_scores`, with the same -v penalty for absent entries.
    Scores are means over all k-K+1 columns. ``tied`` uses 1-based read
    numbers; counts always run over all reads, not just the tied ones.
    """
    if not tied:
        raise ValueError("tied read list must be non-empty")
    if K >= k:
        raise ValueError(f"K-mer length {K} must be smaller than k={k}")
    v = reads.v
    for num in tied:
        if not 1 <= num <= v:
            raise ValueError(f"read number {num} out of range 1..{v}")
    cols = k - K + 1
    # column -> {kmer: count}, over every read that has a j-th k-mer
    col_counts: list[dict[str, int]] = [{} for _ in range(cols)]
    for read in reads.reads:
        upto = min(len(read) - K, cols - 1)
        for j in range(upto + 1):
            mer = read[j : j + K]
            bucket = col_counts[j]
            bucket[mer] = bucket.get(mer, 0) + 1
    out: dict[int, Fraction] = {}
    for num in tied:
        read = reads.reads[num - 1]
        total = 0
        for j in range(cols):
            if len(read) >= j + K:
                total += col_counts[j][read[j : j + K]]
            else:
                total -= v
        out[num] = Fraction(total, cols)
    return out


def select(reads: ReadSet, w: int, K: int) -> ScreeningResult:
    """Select the w highest-scoring reads, tie-breaking with k-mer re-scoring.

    The boundary tie branch fires only when the w-th and (w+1)-th scores are
    exactly equal; it re-scores every read whose score equals the boundary
    value (including reads already safely above it, which re-scoring cannot
    displace out of order for strictly higher scores).
    """
    v = reads.v
    if not 1 <= w <= v:
        raise ValueError(f"w must be in 1..{v}, got {w}")
    k = reads.source_length
    _, q = positional_scores(reads, k)
    order = sorted(range(v), key=lambda i: (-q[i], i))

    tie_broken = False
    kmer_scores: dict[int, Fraction] | None = None
    if w < v and q[order[w - 1]] == q[order[w]]:
        boundary = q[order[w - 1]]
        tied = [i + 1 for i in range(v) if q[i] == boundary]
        kmer_scores = kmer_rescore(reads, tied, K, k)
        block_slots = [pos for pos, i in enumerate(order) if q[i] == boundary]
        reordered = sorted(tied, key=lambda num: (-kmer_scores[num], num))
        for pos, num in zip(block_slots, reordered):
            order[pos] = num - 1
        tie_broken = True

    return ScreeningResult(
        selected=tuple(i + 1 for i in order[:w]),
        scores=tuple(q),
        tie_broken=tie_broken,
        kmer_scores=kmer_scores,
    )


def select_random(reads: ReadSet, w: int, seed: int) -> ScreeningResult:
    """Select w distinct reads uniformly at random (the no-screening baseline)."""
    v = reads.v
    if not 1 <= w <= v:
        raise ValueError(f"w must be in 1..{v}, got {w}")
    rng = np.random.Generator(np.random.PCG64(seed & ((1 << 64) - 1)))
    picks = rng.choice(v, size=w, replace=False)
    return ScreeningResult(
        selected=tuple(int(i) + 1 for i in picks),
        scores=(),
        tie_broken=False,
    )


def to_decoder_input(result: ScreeningResult, reads: ReadSet, k: int) -> np.ndarray:
    """Render the selected reads as a w x k decoder-symbol matrix."""
    rows = [to_decoder_symbols(reads.reads[num - 1], k) for num in result.selected]
    return np.stack(rows, axis=0)
