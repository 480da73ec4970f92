"""Systematic random binary linear code for erasure recovery.

Encoding appends n_c - k parity bits, each the XOR of a seeded random
subset of the message bits.  Decoding solves for erased positions by
Gaussian elimination over GF(2), using the parity equations whose
positions survived.  Rows are int bitsets, LSB = unknown 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bits import ERASURE, Bits, Ternary, as_bits
from .rng import derived_rng


class UnrecoverableErasures(Exception):
    """Erased positions cannot be pinned down by the surviving equations."""


@dataclass(frozen=True)
class ErasureConfig:
    """Code geometry: k payload bits inside an n_c-bit systematic word."""

    k: int
    n_c: int
    epsilon: float
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError("epsilon must lie in [0, 1)")
        if self.k < 1 or self.k > self.n_c:
            raise ValueError("need 1 <= k <= n_c")

    @classmethod
    def from_payload(cls, k: int, epsilon: float, seed: int) -> "ErasureConfig":
        """Smallest code length reaching rate 1 - epsilon for k payload bits."""
        n_c = k if epsilon == 0.0 else math.ceil(k / (1.0 - epsilon))
        return cls(k=k, n_c=n_c, epsilon=epsilon, seed=seed)

    @classmethod
    def from_code_length(cls, n_c: int, epsilon: float, seed: int) -> "ErasureConfig":
        """Largest payload fitting n_c at rate at least 1 - epsilon - 1/n_c."""
        k = max(1, math.floor(n_c * (1.0 - epsilon)))
        return cls(k=k, n_c=n_c, epsilon=epsilon, seed=seed)

    @property
    def parity_bits(self) -> int:
        return self.n_c - self.k


def parity_masks(config: ErasureConfig) -> tuple[int, ...]:
    """Seeded generator columns: mask j selects the message bits XORed
    into parity bit j."""
    rng = derived_rng(config.seed, "ec-gen")
    return tuple(rng.getrandbits(config.k) for _ in range(config.parity_bits))


def _pack(bits: Bits) -> int:
    word = 0
    for i, b in enumerate(bits):
        if b:
            word |= 1 << i
    return word


def ec_encode(w: Bits, config: ErasureConfig) -> Bits:
    """[w || parity]; each parity bit is a mask-selected XOR of w."""
    w = as_bits(w)
    if len(w) != config.k:
        raise ValueError(f"expected {config.k} payload bits, got {len(w)}")
    packed = _pack(w)
    parity = tuple((mask & packed).bit_count() & 1 for mask in parity_masks(config))
    return w + parity


def ec_decode(d_hat: Ternary, config: ErasureConfig) -> Bits:
    """Recover the payload from a word with erasures at known positions.

    Unknowns are the erased payload positions; each surviving parity
    position contributes one linear equation.  Raises
    UnrecoverableErasures when the system is rank-deficient or
    inconsistent with the non-erased bits.
    """
    if len(d_hat) != config.n_c:
        raise ValueError(f"expected {config.n_c} symbols, got {len(d_hat)}")
    message = list(d_hat[: config.k])
    unknowns = [i for i, s in enumerate(message) if s is ERASURE]
    if not unknowns:
        return tuple(int(s) for s in message)

    column_of = {pos: col for col, pos in enumerate(unknowns)}
    masks = parity_masks(config)
    rows: list[int] = []  # bits 0..e-1: unknown coefficients; bit e: RHS
    rhs_bit = 1 << len(unknowns)
    for j, mask in enumerate(masks):
        parity_symbol = d_hat[config.k + j]
        if parity_symbol is ERASURE:
            continue
        row = 0
        rhs = int(parity_symbol)
        for i in range(config.k):
            if not (mask >> i) & 1:
                continue
            if i in column_of:
                row |= 1 << column_of[i]
            elif message[i]:
                rhs ^= 1
        rows.append(row | (rhs_bit if rhs else 0))

    solution = _solve_gf2(rows, len(unknowns), rhs_bit)
    for pos, value in zip(unknowns, solution):
        message[pos] = value
    return tuple(int(s) for s in message)


def _solve_gf2(rows: list[int], e: int, rhs_bit: int) -> list[int]:
    """Unique solution of the e-unknown system, or UnrecoverableErasures."""
    pivots: list[int | None] = [None] * e
    reduced: list[int] = []
    for row in rows:
        for col in range(e):
            if (row >> col) & 1 and pivots[col] is not None:
                row ^= reduced[pivots[col]]
        low = row & (rhs_bit - 1)
        if low == 0:
            if row & rhs_bit:
                raise UnrecoverableErasures("parity equations are inconsistent")
            continue
        col = (low & -low).bit_length() - 1
        pivots[col] = len(reduced)
        reduced.append(row)
    if any(p is None for p in pivots):
        raise UnrecoverableErasures(
            f"rank deficit: {sum(p is None for p in pivots)} of {e} erasures undetermined"
        )
    solution = [0] * e
    for col in range(e - 1, -1, -1):
        row = reduced[pivots[col]]  # type: ignore[index]
        value = (row >> (rhs_bit.bit_length() - 1)) & 1
        for other in range(col + 1, e):
            if (row >> other) & 1:
                value ^= solution[other]
        solution[col] = value
    return solution
