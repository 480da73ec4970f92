"""Seeded chop-and-shuffle channel and its parameter conversions.

The channel breaks each of the n-1 internal boundaries independently
with probability p_break, which makes fragment lengths i.i.d.
Geometric(p_break) with the final fragment truncated at the end of the
word.  Fragments are then shuffled uniformly and labeled in arrival
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bits import Bits, bits_from_text, bits_to_text
from .rng import derived_rng


@dataclass(frozen=True)
class ChannelParams:
    p_break: float
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_break <= 1.0:
            raise ValueError("p_break must lie in [0, 1]")


@dataclass(frozen=True)
class Fragment:
    """One channel-output piece, labeled by its post-shuffle arrival order."""

    id: int
    bits: Bits

    @property
    def length(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class FragmentSet:
    fragments: tuple[Fragment, ...]

    def __post_init__(self) -> None:
        if not self.fragments:
            raise ValueError("fragment set must be non-empty")

    def __iter__(self):
        return iter(self.fragments)

    def __len__(self) -> int:
        return len(self.fragments)

    @property
    def total_length(self) -> int:
        return sum(f.length for f in self.fragments)


def _geometric(rng, p: float) -> int:
    # Inverse-CDF draw; equivalent to scanning Bernoulli(p) boundaries.
    u = rng.random()
    while u == 0.0:
        u = rng.random()
    return 1 + math.floor(math.log(u) / math.log1p(-p))


def chop(x: Bits, params: ChannelParams) -> list[Bits]:
    """Break x into fragments, returned in original order.

    Deterministic for a given (x length is irrelevant to the stream:
    the generator is derived from the seed and the 'chop' context).
    """
    n = len(x)
    if n < 1:
        raise ValueError("cannot chop an empty string")
    if params.p_break == 0.0:
        return [tuple(x)]
    if params.p_break == 1.0:
        return [(b,) for b in x]
    rng = derived_rng(params.seed, "chop")
    pieces = []
    pos = 0
    while pos < n:
        gap = _geometric(rng, params.p_break)
        cut = min(pos + gap, n)
        pieces.append(tuple(x[pos:cut]))
        pos = cut
    return pieces


def shuffle(pieces: list[Bits], params: ChannelParams) -> FragmentSet:
    """Uniform seeded permutation; labels assigned in post-shuffle order."""
    if not pieces:
        raise ValueError("nothing to shuffle")
    order = list(range(len(pieces)))
    derived_rng(params.seed, "shuffle").shuffle(order)
    return FragmentSet(
        fragments=tuple(
            Fragment(id=label, bits=pieces[src]) for label, src in enumerate(order, start=1)
        )
    )


def chop_and_shuffle(x: Bits, params: ChannelParams) -> FragmentSet:
    return shuffle(chop(x, params), params)


def alpha_to_p(alpha: float, n: int) -> float:
    """Break probability giving normalized breakage alpha at length n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    return min(1.0, max(0.0, alpha / math.log2(n)))


def capacity(alpha: float) -> float:
    """Channel capacity e^(-alpha)."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    return math.exp(-alpha)


def write_fragments(path, fragments: FragmentSet, n: int, seed: int, p: float) -> None:
    """One fragment per line (ASCII bits, shuffled order) under a header."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"# n={n} seed={seed} p={p!r}\n")
        for fragment in fragments:
            fh.write(bits_to_text(fragment.bits) + "\n")


def read_fragments(path) -> tuple[FragmentSet, dict]:
    """Parse a fragment file; returns the set and its header fields."""
    header: dict = {}
    pieces: list[Bits] = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for token in line[1:].split():
                    if "=" in token:
                        key, value = token.split("=", 1)
                        header[key] = value
                continue
            pieces.append(bits_from_text(line))
    if not pieces:
        raise ValueError("fragment file contains no fragments")
    fragments = FragmentSet(
        fragments=tuple(Fragment(id=i, bits=b) for i, b in enumerate(pieces, start=1))
    )
    return fragments, header
