"""Single VT codeword construction, syndrome checks, and parity stripping.

A VT codeword of length n with residue r satisfies
``sum(i * x_i for i=1..n) == r (mod n+1)``.  Encoding is systematic:
the codeword is the data followed by a parity block whose length depends
only on the data length.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .bits import Bits, as_bits


def syndrome(x: Bits) -> int:
    """Weighted checksum sum(i*x_i) mod (n+1), indices 1-based."""
    n = len(x)
    if n == 0:
        raise ValueError("syndrome of empty string is undefined")
    total = 0
    for i, b in enumerate(x, start=1):
        if b:
            total += i
    return total % (n + 1)


def parity_length(n_d: int) -> int:
    """Parity bits needed for n_d data bits: smallest p with p(p-1) >= 2*n_d.

    Equals ceil((1 + sqrt(1 + 8*n_d)) / 2), evaluated in exact integer
    arithmetic so perfect squares (e.g. n_d = 36) do not misround.
    """
    if n_d < 1:
        raise ValueError("n_d must be >= 1")
    p = (1 + isqrt(1 + 8 * n_d)) // 2
    while p * (p - 1) < 2 * n_d:
        p += 1
    return p


def parity_length_sloane(n_d: int) -> int:
    """Baseline parity count ceil(sqrt(2*n_d + 9/4) + 1/2), exact integers.

    The ceiling condition p >= sqrt(2*n_d + 9/4) + 1/2 rearranges to
    p(p-1) >= 2*n_d + 2.  Comparison baseline only.
    """
    if n_d < 1:
        raise ValueError("n_d must be >= 1")
    p = (1 + isqrt(1 + 8 * (n_d + 1))) // 2
    while p * (p - 1) < 2 * (n_d + 1):
        p += 1
    return p


@dataclass(frozen=True)
class VtParams:
    """Geometry of one systematic VT codeword."""

    n_d: int
    p: int
    n: int
    r: int

    @classmethod
    def for_data(cls, n_d: int, r: int) -> "VtParams":
        p = parity_length(n_d)
        n = n_d + p
        if not 0 <= r <= n:
            raise ValueError(f"residue {r} outside [0, {n}]")
        return cls(n_d=n_d, p=p, n=n, r=r)


@dataclass(frozen=True)
class ParityWorksheet:
    """Intermediate quantities of the parity construction."""

    r_prime: int
    delta: int
    k_max: int
    b: int


def parity_worksheet(d: Bits, r: int) -> ParityWorksheet:
    """Work out the parity-block residue target and bit placement.

    r_prime is the data residue with the data occupying positions
    1..n_d of the full length-n word; delta is the residue the parity
    block must contribute when summed with right-hand indices i'
    (i' = 1 for the last bit).  k_max solves the largest k with
    p*k - k(k-1)/2 <= delta, and b is the leftover single-bit position.
    """
    params = VtParams.for_data(len(d), r)
    p, n = params.p, params.n
    r_prime = syndrome(d + (0,) * p)
    delta = r_prime - r if r_prime >= r else (n + 1) - (r - r_prime)
    k_max = 0
    while k_max < p and p * (k_max + 1) - (k_max + 1) * k_max // 2 <= delta:
        k_max += 1
    b = delta - (p * k_max - k_max * (k_max - 1) // 2)
    return ParityWorksheet(r_prime=r_prime, delta=delta, k_max=k_max, b=b)


def build_parity(d: Bits, r: int) -> Bits:
    """Parity block making the systematic codeword's syndrome equal r.

    Left positions 1..k_max of the block are set to 1; if b > 0 one
    further bit is set at right-hand index i' = b.  b <= p - k_max is
    guaranteed by k_max maximality, so the extra bit never collides
    with the run.
    """
    d = as_bits(d)
    ws = parity_worksheet(d, r)
    p = parity_length(len(d))
    assert 0 <= ws.b <= p - ws.k_max, "parity placement out of range"
    parity = [0] * p
    for k in range(1, ws.k_max + 1):
        parity[k - 1] = 1
    if ws.b > 0:
        k_extra = p - ws.b + 1
        assert parity[k_extra - 1] == 0, "parity positions collided"
        parity[k_extra - 1] = 1
    return tuple(parity)


def encode_vt(d: Bits, r: int) -> Bits:
    """Systematic VT codeword [d || parity] with syndrome r."""
    d = as_bits(d)
    return d + build_parity(d, r)


def check_vt(x: Bits, r: int) -> bool:
    return syndrome(x) == r


def strip_parity(x: Bits, n_d: int) -> Bits:
    """Drop the parity block of a length n_d + parity_length(n_d) codeword."""
    expected = n_d + parity_length(n_d)
    if len(x) != expected:
        raise ValueError(f"expected codeword of length {expected}, got {len(x)}")
    return tuple(x[:n_d])
