"""Noisy storage channel: per-base insertion/deletion/substitution errors.

The synthesis -> storage -> amplification -> sequencing pipeline is modelled
as a memoryless per-base process. For every input base an error event fires
with probability ``gamma``; the event kind is then drawn from the conditional
split (substitution, insertion, deletion). A substitution emits one of the
three other bases uniformly, an insertion emits one uniform random base and
then the original base, a deletion emits nothing. Expected output length is
therefore ``n * (1 - gamma*p_del + gamma*p_ins)``.

Every read gets its own RNG stream, seeded by a fixed 64-bit mixing of the
master seed and the read number, so multi-read generation is reproducible
and order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .sequences import digits_to_dna, dna_to_digits

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# per-position event codes in the event log
EVENT_NONE = 0
EVENT_SUB = 1
EVENT_INS = 2
EVENT_DEL = 3


def _avalanche(x: int) -> int:
    """64-bit finaliser (splitmix64): every input bit affects every output bit."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def derive_seed(master_seed: int, *components: int) -> int:
    """Mix a master seed and integer path components into one 64-bit seed.

    The chain is ``h = avalanche(h + GOLDEN + c)`` per component, h starting
    at the master seed. It is fixed: identical inputs give identical seeds on
    every platform, and distinct component paths give independent streams.
    """
    h = master_seed & _MASK64
    for c in components:
        h = _avalanche((h + _GOLDEN + (c & _MASK64)) & _MASK64)
    return h


@dataclass(frozen=True)
class ChannelSpec:
    """Channel parameters: total per-base error rate and the kind split.

    ``p_sub + p_ins + p_del`` must equal 1 (to 1e-12). The default split
    (0.17, 0.40, 0.43) reflects synthesis-dominated error profiles where
    indels outnumber substitutions.
    """

    gamma: float
    p_sub: float = 0.17
    p_ins: float = 0.40
    p_del: float = 0.43
    master_seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be in [0,1], got {self.gamma}")
        for name in ("p_sub", "p_ins", "p_del"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0,1], got {p}")
        total = self.p_sub + self.p_ins + self.p_del
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"error-kind probabilities must sum to 1, got {total}")


@dataclass(frozen=True)
class ReadSet:
    """``v`` independently corrupted copies of one source strand."""

    source_length: int
    reads: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.reads) < 1:
            raise ValueError("a ReadSet needs at least one read")
        if self.source_length < 0:
            raise ValueError("source_length must be non-negative")

    @property
    def v(self) -> int:
        return len(self.reads)


def _draw_events(n: int, spec: ChannelSpec, rng: np.random.Generator):
    """Draw the per-base event kinds plus the auxiliary base picks.

    A fixed number of variates is consumed per base regardless of outcome,
    which keeps the stream layout independent of gamma.
    """
    u = rng.random(n)
    t = rng.random(n)
    sub_offset = rng.integers(1, 4, size=n)   # offset into the 3 other bases
    ins_base = rng.integers(0, 4, size=n)     # inserted base, uniform over 4
    kinds = np.full(n, EVENT_NONE, dtype=np.int8)
    hit = u < spec.gamma
    kinds[hit & (t < spec.p_sub)] = EVENT_SUB
    kinds[hit & (t >= spec.p_sub) & (t < spec.p_sub + spec.p_ins)] = EVENT_INS
    kinds[hit & (t >= spec.p_sub + spec.p_ins)] = EVENT_DEL
    return kinds, sub_offset, ins_base


def corrupt_with_events(
    seq: str, spec: ChannelSpec, stream_seed: int
) -> tuple[str, np.ndarray]:
    """Corrupt a strand and also return the per-input-position event log.

    The log holds one EVENT_* code per input base. It exists for testing and
    diagnostics only; nothing downstream of the channel may consult it.
    """
    n = len(seq)
    if n == 0:
        return "", np.zeros(0, dtype=np.int8)
    rng = np.random.Generator(np.random.PCG64(stream_seed & _MASK64))
    kinds, sub_offset, ins_base = _draw_events(n, spec, rng)

    digits = dna_to_digits(seq)
    out_counts = np.ones(n, dtype=np.int64)
    out_counts[kinds == EVENT_DEL] = 0
    out_counts[kinds == EVENT_INS] = 2
    ends = np.cumsum(out_counts)
    starts = ends - out_counts

    out = np.empty(int(ends[-1]), dtype=np.int64)
    plain = kinds == EVENT_NONE
    out[starts[plain]] = digits[plain]
    sub = kinds == EVENT_SUB
    # offset 1..3 from the original base, mod 4: uniform over the other three
    out[starts[sub]] = (digits[sub] + sub_offset[sub]) % 4
    ins = kinds == EVENT_INS
    out[starts[ins]] = ins_base[ins]
    out[starts[ins] + 1] = digits[ins]
    return digits_to_dna(out), kinds


def corrupt(seq: str, spec: ChannelSpec, stream_seed: int) -> str:
    """Pass one strand through the channel; deterministic in the seed."""
    return corrupt_with_events(seq, spec, stream_seed)[0]


def generate_reads(seq: str, spec: ChannelSpec, v: int) -> ReadSet:
    """Produce ``v`` independent noisy reads of one strand.

    Read number i (1-based) uses the stream seed
    ``derive_seed(spec.master_seed, i)``, so reads can be generated in any
    order, or in parallel, with identical results.
    """
    if v < 1:
        raise ValueError("v must be >= 1")
    reads = tuple(
        corrupt(seq, spec, derive_seed(spec.master_seed, i)) for i in range(1, v + 1)
    )
    return ReadSet(source_length=len(seq), reads=reads)
