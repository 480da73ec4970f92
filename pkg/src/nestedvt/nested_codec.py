"""Layered encoding and the inverse parity stripping.

Encoding walks bottom-up: data sections become inner codewords, each
group of m sibling codewords concatenates into the next layer's data.
Stripping walks top-down and keeps erasure marks that fall in data
positions while discarding those in parity blocks.
"""

from __future__ import annotations

from functools import lru_cache

from .bits import ERASURE, Bits, Ternary, as_bits
from .nested_layout import LayerSpec, PositionMatrix, codeword_span, layer_lengths
from .residues import ResidueScheme, residue_for
from .vt_core import encode_vt, parity_length

__all__ = [
    "encode_nested",
    "verify_all_conditions",
    "strip_nested",
    "condition_table",
]


def encode_nested(d: Bits, spec: LayerSpec) -> Bits:
    """Encode m^(ell-1) * d_sec data bits into the full layered codeword."""
    d = as_bits(d)
    if len(d) != spec.n_data:
        raise ValueError(f"expected {spec.n_data} data bits, got {len(d)}")
    lengths = layer_lengths(spec)
    words = [
        encode_vt(
            d[i * spec.d_sec : (i + 1) * spec.d_sec],
            residue_for(spec.scheme, 1, i + 1, lengths[0]),
        )
        for i in range(spec.sections)
    ]
    for layer in range(2, spec.ell + 1):
        merged = []
        for g in range(len(words) // spec.m):
            section: Bits = ()
            for child in words[g * spec.m : (g + 1) * spec.m]:
                section += child
            merged.append(
                encode_vt(section, residue_for(spec.scheme, layer, g + 1, lengths[layer - 1]))
            )
        words = merged
    return words[0]


@lru_cache(maxsize=64)
def condition_table(
    matrix: PositionMatrix, scheme: ResidueScheme
) -> tuple[tuple[int, int, int, int, int], ...]:
    """All (end, start, layer, index, residue) checks, sorted by end position."""
    entries = []
    for layer in range(1, matrix.ell + 1):
        n_l = matrix.layer_lengths[layer - 1]
        for index in range(1, len(matrix.rows[layer - 1]) + 1):
            start, end = codeword_span(matrix, layer, index)
            entries.append((end, start, layer, index, residue_for(scheme, layer, index, n_l)))
    return tuple(sorted(entries))


def _span_ok(x, start: int, end: int, residue: int) -> bool:
    n_l = end - start + 1
    total = 0
    for offset in range(n_l):
        s = x[start - 1 + offset]
        if s is ERASURE:
            return False
        if s:
            total += offset + 1
    return total % (n_l + 1) == residue


def verify_all_conditions(
    x,
    matrix: PositionMatrix,
    scheme: ResidueScheme,
    up_to: int | None = None,
) -> bool:
    """Check every inner codeword ending at or before position up_to.

    `x` may be a bit or ternary prefix at least up_to symbols long; a
    span containing an erasure fails its check.  Prefixes too short to
    contain any codeword pass vacuously.
    """
    gamma = len(x) if up_to is None else up_to
    if gamma > matrix.n:
        raise ValueError(f"up_to {gamma} exceeds codeword length {matrix.n}")
    if len(x) < gamma:
        raise ValueError("prefix shorter than requested check length")
    for end, start, _layer, _index, residue in condition_table(matrix, scheme):
        if end > gamma:
            break
        if not _span_ok(x, start, end, residue):
            return False
    return True


def strip_nested(x_hat: Ternary, spec: LayerSpec) -> Ternary:
    """Remove every layer's parity block from a full-length word.

    Erasures surviving in data positions propagate to the output;
    erasures confined to parity blocks are dropped with them.
    """
    lengths = layer_lengths(spec)
    if len(x_hat) != lengths[-1]:
        raise ValueError(f"expected {lengths[-1]} symbols, got {len(x_hat)}")

    def strip(word, layer: int):
        if layer == 1:
            return tuple(word[: spec.d_sec])
        n_data = spec.m * lengths[layer - 2]
        assert n_data + parity_length(n_data) == lengths[layer - 1]
        data = word[:n_data]
        out = ()
        for i in range(spec.m):
            child = data[i * lengths[layer - 2] : (i + 1) * lengths[layer - 2]]
            out += strip(child, layer - 1)
        return out

    return strip(tuple(x_hat), spec.ell)
