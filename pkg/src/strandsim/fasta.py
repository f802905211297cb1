"""Minimal strict FASTA I/O for ACGT strands.

The accepted format is deliberately narrow: each record is a ``>`` header
line followed by exactly one sequence line containing only A/C/G/T
(case-insensitive, normalised to uppercase). Anything else -- multi-line
sequences, IUPAC ambiguity codes, blank records -- is rejected.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, TextIO

_ALPHABET = set("ACGT")


def parse_fasta(text: str) -> list[tuple[str, str]]:
    """Parse FASTA text into (name, sequence) pairs.

    Raises ValueError on stray characters, sequences outside the header
    structure, or records with more than one sequence line.
    """
    records: list[tuple[str, str]] = []
    name: str | None = None
    have_seq = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            if name is not None and not have_seq:
                raise ValueError(f"record {name!r} has no sequence line")
            name = line[1:].strip()
            have_seq = False
            continue
        if name is None:
            raise ValueError(f"line {lineno}: sequence data before any '>' header")
        if have_seq:
            raise ValueError(
                f"line {lineno}: record {name!r} has more than one sequence line"
            )
        seq = line.upper()
        bad = set(seq) - _ALPHABET
        if bad:
            raise ValueError(
                f"line {lineno}: invalid character(s) {sorted(bad)!r} in sequence"
            )
        records.append((name, seq))
        have_seq = True
    if name is not None and not have_seq:
        raise ValueError(f"record {name!r} has no sequence line")
    return records


def read_fasta(path: str | Path) -> list[tuple[str, str]]:
    """Read and parse a FASTA file."""
    return parse_fasta(Path(path).read_text(encoding="utf-8"))


def format_fasta(records: Iterable[tuple[str, str]]) -> str:
    """Render (name, sequence) pairs as single-line-per-sequence FASTA."""
    chunks = []
    for name, seq in records:
        bad = set(seq) - _ALPHABET
        if bad:
            raise ValueError(f"record {name!r} contains non-ACGT characters: {sorted(bad)!r}")
        chunks.append(f">{name}\n{seq}\n")
    return "".join(chunks)


def write_fasta(records: Iterable[tuple[str, str]], fh: TextIO | str | Path) -> None:
    """Write records to a path or open text handle."""
    text = format_fasta(records)
    if isinstance(fh, (str, Path)):
        Path(fh).write_text(text, encoding="utf-8")
    else:
        fh.write(text)
