"""Base alphabet, digit mappings, decoder-symbol rows, and strand segmentation.

Sequences are plain Python strings over the alphabet ``ACGT``. Two integer
views coexist and are never converted implicitly:

* digits ``{0,1,2,3}`` (A=0, C=1, G=2, T=3) -- used by constraint statistics
  and symbol-error accounting;
* decoder symbols ``{0,1,2,3,4}`` (A=1 .. T=4, 0 = trailing pad) -- the
  fixed-width rows fed to consensus decoding.

The canonical base order A < C < G < T is fixed once here and is what every
deterministic tie-break in the package refers to.
"""

from __future__ import annotations

import numpy as np

BASES = "ACGT"

_BASE_TO_DIGIT = {b: i for i, b in enumerate(BASES)}

# 256-entry lookup for vectorised string -> digit conversion; 255 marks
# characters outside the alphabet.
_DIGIT_LUT = np.full(256, 255, dtype=np.uint8)
for _i, _b in enumerate(BASES):
    _DIGIT_LUT[ord(_b)] = _i

_BASE_BYTES = np.frombuffer(BASES.encode("ascii"), dtype=np.uint8)


def base_to_digit(base: str) -> int:
    """Map a single base to its digit: A->0, C->1, G->2, T->3."""
    try:
        return _BASE_TO_DIGIT[base]
    except KeyError:
        raise ValueError(f"not a DNA base: {base!r}") from None


def digit_to_base(digit: int) -> str:
    """Inverse of :func:`base_to_digit`."""
    if not 0 <= digit <= 3:
        raise ValueError(f"digit out of range 0..3: {digit!r}")
    return BASES[digit]


def dna_to_digits(seq: str) -> np.ndarray:
    """Convert a sequence string to an int64 array of digits in {0..3}."""
    raw = np.frombuffer(seq.encode("ascii"), dtype=np.uint8)
    digits = _DIGIT_LUT[raw]
    if np.any(digits == 255):
        bad = seq[int(np.argmax(digits == 255))]
        raise ValueError(f"not a DNA base: {bad!r}")
    return digits.astype(np.int64)


def digits_to_dna(digits: np.ndarray) -> str:
    """Convert an array of digits in {0..3} back to a sequence string."""
    arr = np.asarray(digits, dtype=np.int64)
    if arr.size and (arr.min() < 0 or arr.max() > 3):
        raise ValueError("digits out of range 0..3")
    return _BASE_BYTES[arr].tobytes().decode("ascii")


def to_decoder_symbols(seq: str, k: int) -> np.ndarray:
    """Render a read as a fixed-width decoder row of length ``k``.

    Position i holds base digit + 1 for the first ``k`` bases; if the read is
    shorter than ``k`` the remainder is zero padding; bases beyond ``k`` are
    dropped.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    row = np.zeros(k, dtype=np.int64)
    m = min(len(seq), k)
    if m:
        row[:m] = dna_to_digits(seq[:k]) + 1
    return row


def segment(seq: str, s: int) -> list[str]:
    """Split a strand into non-overlapping pieces of length ``s``.

    The last piece may be shorter; an empty strand yields an empty list.
    """
    if s < 1:
        raise ValueError("segment length must be >= 1")
    return [seq[i : i + s] for i in range(0, len(seq), s)]


def concat_segments(parts: list[str]) -> str:
    """Reassemble segments in order; inverse of :func:`segment`."""
    return "".join(parts)
