"""Bit and ternary (bit-or-erasure) sequences with their text forms.

Bit strings are plain tuples of 0/1 ints; ternary strings additionally
allow ``ERASURE`` (None) in erased positions.  Text form is ASCII
``'0'``/``'1'`` with ``'E'`` for an erasure.
"""

from __future__ import annotations

from typing import Iterable

Bits = tuple[int, ...]
Ternary = tuple["int | None", ...]

ERASURE = None
ERASURE_CHAR = "E"


def as_bits(values: Iterable[int]) -> Bits:
    """Validate and freeze a 0/1 sequence."""
    bits = tuple(values)
    for b in bits:
        if b != 0 and b != 1:
            raise ValueError(f"bit values must be 0 or 1, got {b!r}")
    return bits


def bits_from_text(text: str) -> Bits:
    """Parse an ASCII '0'/'1' string (surrounding whitespace ignored)."""
    text = text.strip()
    bits = []
    for ch in text:
        if ch == "0":
            bits.append(0)
        elif ch == "1":
            bits.append(1)
        else:
            raise ValueError(f"invalid bit character {ch!r}")
    return tuple(bits)


def bits_to_text(bits: Bits) -> str:
    return "".join("1" if b else "0" for b in bits)


def ternary_from_text(text: str) -> Ternary:
    """Parse '0'/'1'/'E' text into a ternary sequence."""
    text = text.strip()
    out: list[int | None] = []
    for ch in text:
        if ch == "0":
            out.append(0)
        elif ch == "1":
            out.append(1)
        elif ch == ERASURE_CHAR:
            out.append(ERASURE)
        else:
            raise ValueError(f"invalid ternary character {ch!r}")
    return tuple(out)


def ternary_to_text(symbols: Ternary) -> str:
    return "".join(ERASURE_CHAR if s is ERASURE else ("1" if s else "0") for s in symbols)


def has_erasure(symbols: Ternary) -> bool:
    return any(s is ERASURE for s in symbols)


def ternary_to_bits(symbols: Ternary) -> Bits:
    """Convert an erasure-free ternary sequence to bits."""
    if has_erasure(symbols):
        raise ValueError("sequence contains erasures")
    return tuple(int(s) for s in symbols)  # type: ignore[arg-type]
