"""Geometry of the layered code: lengths, positions, and encoding rate.

A layer-l codeword is the concatenation of its m layer-(l-1) children
followed by its own parity block; layer 1 encodes raw data sections.
All positions are 1-based within the full codeword.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt

from .residues import ResidueScheme, all_zero
from .vt_core import parity_length


@dataclass(frozen=True)
class LayerSpec:
    """Nested-code shape: section length, merge factor, layer count."""

    d_sec: int
    m: int
    ell: int
    scheme: ResidueScheme = field(default_factory=all_zero)

    def __post_init__(self) -> None:
        if self.d_sec < 1:
            raise ValueError("d_sec must be >= 1")
        if self.ell < 1:
            raise ValueError("ell must be >= 1")
        if self.ell >= 2 and self.m < 2:
            raise ValueError("m must be >= 2 for multi-layer specs")
        if self.ell == 1 and self.m < 1:
            raise ValueError("m must be >= 1")

    @property
    def n_data(self) -> int:
        """Total data length m^(ell-1) * d_sec."""
        return self.m ** (self.ell - 1) * self.d_sec

    @property
    def sections(self) -> int:
        return self.m ** (self.ell - 1)


def layer_lengths(spec: LayerSpec) -> tuple[int, ...]:
    """Codeword length per layer, innermost first."""
    lengths = [spec.d_sec + parity_length(spec.d_sec)]
    for _ in range(2, spec.ell + 1):
        n_data = spec.m * lengths[-1]
        lengths.append(n_data + parity_length(n_data))
    return tuple(lengths)


@dataclass(frozen=True)
class PositionMatrix:
    """Last-bit position of every inner codeword, one row per layer.

    Row l (1-based) holds m^(ell-l) strictly increasing entries; the
    final row's single entry is the full codeword length.
    """

    rows: tuple[tuple[int, ...], ...]
    layer_lengths: tuple[int, ...]

    @property
    def ell(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return self.layer_lengths[-1]

    def padded(self) -> list[list[int]]:
        """Rectangular ell x m^(ell-1) view, zero-filled like the printed matrix."""
        width = len(self.rows[0])
        return [list(row) + [0] * (width - len(row)) for row in self.rows]


def position_matrix(spec: LayerSpec) -> PositionMatrix:
    lengths = layer_lengths(spec)
    rows: list[list[int]] = [[] for _ in range(spec.ell)]

    def place(layer: int, start: int) -> None:
        rows[layer - 1].append(start + lengths[layer - 1] - 1)
        if layer > 1:
            child_start = start
            for _ in range(spec.m):
                place(layer - 1, child_start)
                child_start += lengths[layer - 2]

    place(spec.ell, 1)
    return PositionMatrix(
        rows=tuple(tuple(sorted(row)) for row in rows),
        layer_lengths=lengths,
    )


def codeword_span(matrix: PositionMatrix, layer: int, index: int) -> tuple[int, int]:
    """Inclusive 1-based (start, end) of codeword `index` in `layer`."""
    if not 1 <= layer <= matrix.ell:
        raise ValueError(f"layer {layer} outside [1, {matrix.ell}]")
    row = matrix.rows[layer - 1]
    if not 1 <= index <= len(row):
        raise ValueError(f"index {index} outside [1, {len(row)}] in layer {layer}")
    end = row[index - 1]
    return end - matrix.layer_lengths[layer - 1] + 1, end


def encoding_rate(spec: LayerSpec) -> Fraction:
    """Exact data-to-codeword length ratio."""
    return Fraction(spec.n_data, layer_lengths(spec)[-1])


@dataclass(frozen=True)
class RateBounds:
    """Closed-form rate bracket; ordering is only guaranteed for d_sec >= 36."""

    r_minus: float
    rate: float
    r_plus: float
    guaranteed: bool


def rate_bounds(spec: LayerSpec) -> RateBounds:
    """Lower/upper closed-form bounds around the exact encoding rate.

    The geometric accumulation factor (m^(ell/2) - 1) / (sqrt(m) - 1)
    degenerates to 1 for a single layer.
    """
    d, m, ell = spec.d_sec, spec.m, spec.ell
    n_data = spec.n_data
    factor = 1.0 if ell == 1 else (m ** (ell / 2) - 1.0) / (sqrt(m) - 1.0)
    half_scale = m ** ((ell - 1) / 2)
    r_minus = n_data / (half_scale * sqrt(d) + sqrt(2.5) / 2.0 * factor) ** 2
    r_plus = 2.0 * n_data / (half_scale * sqrt(2.0 * d) + factor) ** 2
    return RateBounds(
        r_minus=r_minus,
        rate=float(encoding_rate(spec)),
        r_plus=r_plus,
        guaranteed=d >= 36,
    )
