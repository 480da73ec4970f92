"""Residue assignment rules for the inner codewords."""

from __future__ import annotations

from dataclasses import dataclass

ALL_ZERO = "all-zero"
FIXED = "fixed"
DISTINCT = "distinct"


@dataclass(frozen=True)
class ResidueScheme:
    """How each inner codeword picks its target residue.

    all-zero: every codeword uses residue 0.
    fixed:    every codeword uses r0, clamped into its valid range.
    distinct: codeword i (1-based within its layer) uses (i-1) mod (n_l+1).
    """

    kind: str
    r0: int = 0

    def __post_init__(self) -> None:
        if self.kind not in (ALL_ZERO, FIXED, DISTINCT):
            raise ValueError(f"unknown residue scheme {self.kind!r}")
        if self.kind == FIXED and self.r0 < 0:
            raise ValueError("fixed residue must be non-negative")


def all_zero() -> ResidueScheme:
    return ResidueScheme(ALL_ZERO)


def fixed(r0: int) -> ResidueScheme:
    return ResidueScheme(FIXED, r0=r0)


def distinct() -> ResidueScheme:
    return ResidueScheme(DISTINCT)


def scheme_from_name(name: str, r0: int = 0) -> ResidueScheme:
    """Parse a CLI-style scheme name."""
    name = name.lower().replace("_", "-")
    if name in ("all-zero", "allzero", "zero"):
        return all_zero()
    if name in ("fixed", "fixed-nonzero", "fixednonzero"):
        return fixed(r0)
    if name == "distinct":
        return distinct()
    raise ValueError(f"unknown residue scheme {name!r}")


def residue_for(scheme: ResidueScheme, layer: int, index: int, n_l: int) -> int:
    """Target residue for codeword `index` of a layer with codeword length n_l."""
    if scheme.kind == ALL_ZERO:
        return 0
    if scheme.kind == FIXED:
        return min(scheme.r0, n_l)
    return (index - 1) % (n_l + 1)
