"""Fragment reassembly by candidate-combination search.

The decoder grows prefixes (candidate combinations) fragment by
fragment; a prefix stays alive only while every inner codeword it
fully covers passes its residue check.  A limited-memory period tau
prunes the pool to the candidates satisfying the most checks; if the
pool dies out with nothing found, tau grows by one and the search
restarts.  A brute-force permutation oracle provides the independent
ground truth for small fragment counts.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass
from math import factorial

from .bits import ERASURE, Bits, Ternary, ternary_to_bits
from .channel_sim import Fragment, FragmentSet
from .nested_codec import condition_table, strip_nested
from .nested_layout import LayerSpec, position_matrix
from .residues import ResidueScheme

UNIQUE = "unique"
AMBIGUOUS = "ambiguous"
TIMEOUT = "timeout"
NO_SOLUTION = "no-solution"

SUCCESS = "success"
ERROR = "error"
ERASURE_RESOLVED = "erasure-resolved"
UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class Candidate:
    """A live prefix: assembled bits plus the fragment labels consumed."""

    bits: Bits
    used: frozenset[int]
    satisfied: int

    @property
    def gamma(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class SearchConfig:
    """tau: initial pruning period; delta: extension-attempt budget."""

    tau: int = 1
    delta: int = 1_000_000
    collect: str = "all"

    def __post_init__(self) -> None:
        if self.tau < 1:
            raise ValueError("tau must be >= 1")
        if self.delta < 1:
            raise ValueError("delta must be >= 1")
        if self.collect not in ("all", "first"):
            raise ValueError("collect must be 'all' or 'first'")


@dataclass(frozen=True)
class SearchStats:
    extensions: int
    restarts: int
    tau_final: int
    candidates: int


@dataclass(frozen=True)
class DecodeOutcome:
    """Search result: decoded data, an erasure overlap, or a non-answer.

    status is one of unique/ambiguous/timeout/no-solution; codewords
    holds every distinct full-length reconstruction found.
    """

    status: str
    data: Bits | None
    data_overlap: Ternary | None
    codewords: tuple[Bits, ...]
    stats: SearchStats

    def record(self) -> dict:
        """Per-trial JSON record of the decoder interface."""
        return {
            "outcome": self.status,
            "iterations": self.stats.extensions,
            "tau_final": self.stats.tau_final,
            "candidates_found": len(self.codewords),
        }


def _checks_in_range(word: Bits, conditions, ends, lo: int, hi: int) -> bool:
    """Verify every condition whose end lies in (lo, hi] against word."""
    for idx in range(bisect_right(ends, lo), bisect_right(ends, hi)):
        end, start, _layer, _index, residue = conditions[idx]
        total = 0
        for offset in range(end - start + 1):
            if word[start - 1 + offset]:
                total += offset + 1
        if total % (end - start + 2) != residue:
            return False
    return True


def is_helpful(
    candidate: Candidate,
    fragment: Fragment,
    matrix,
    scheme: ResidueScheme,
) -> bool:
    """True iff appending the fragment keeps every covered check passing."""
    if fragment.id in candidate.used:
        raise ValueError("fragment already used by this candidate")
    new_gamma = candidate.gamma + fragment.length
    if new_gamma > matrix.n:
        raise ValueError("extension would exceed the codeword length")
    conditions = condition_table(matrix, scheme)
    ends = [c[0] for c in conditions]
    return _checks_in_range(candidate.bits + fragment.bits, conditions, ends, candidate.gamma, new_gamma)


def decode_search(fragments: FragmentSet, spec: LayerSpec, config: SearchConfig) -> DecodeOutcome:
    """Search fragment orderings for full-length words passing all checks.

    Expansion is breadth-style from the empty prefix; each round extends
    every live candidate by every unused fragment that keeps it valid.
    Every tau rounds the pool is pruned to the candidates with the most
    satisfied checks (ties all kept).  A dead pool without a solution
    restarts the search with tau+1; a pass that pruned nothing and still
    found nothing is exhaustive, so the search reports no-solution.
    """
    matrix = position_matrix(spec)
    n = matrix.n
    if fragments.total_length != n:
        raise ValueError(f"fragment lengths sum to {fragments.total_length}, expected {n}")
    conditions = condition_table(matrix, spec.scheme)
    ends = [c[0] for c in conditions]
    frag_list = fragments.fragments

    extensions = 0
    restarts = 0
    explored = 0
    budget_hit = False
    solutions: dict[Bits, None] = {}
    tau = config.tau

    while True:
        live = [Candidate(bits=(), used=frozenset(), satisfied=0)]
        tau_prime = 0
        prune_dropped = False
        stop = False
        while live and not stop:
            next_gen: list[Candidate] = []
            seen: set[tuple[Bits, frozenset[int]]] = set()
            for cand in live:
                for frag in frag_list:
                    if frag.id in cand.used:
                        continue
                    if extensions >= config.delta:
                        budget_hit = True
                        stop = True
                        break
                    extensions += 1
                    new_bits = cand.bits + frag.bits
                    if not _checks_in_range(new_bits, conditions, ends, cand.gamma, len(new_bits)):
                        continue
                    if len(new_bits) == n:
                        solutions.setdefault(new_bits)
                        if config.collect == "first":
                            stop = True
                            break
                        continue
                    key = (new_bits, cand.used | {frag.id})
                    if key in seen:
                        continue
                    seen.add(key)
                    next_gen.append(
                        Candidate(
                            bits=new_bits,
                            used=key[1],
                            satisfied=bisect_right(ends, len(new_bits)),
                        )
                    )
                    explored += 1
                if stop:
                    break
            if stop:
                break
            tau_prime += 1
            if tau_prime >= tau and next_gen:
                best = max(c.satisfied for c in next_gen)
                kept = [c for c in next_gen if c.satisfied == best]
                if len(kept) < len(next_gen):
                    prune_dropped = True
                next_gen = kept
                tau_prime = 0
            live = next_gen
        if solutions or budget_hit:
            break
        if not prune_dropped:
            break
        tau += 1
        restarts += 1

    stats = SearchStats(
        extensions=extensions, restarts=restarts, tau_final=tau, candidates=explored
    )
    if solutions:
        words = tuple(solutions)
        if len(words) == 1:
            data = ternary_to_bits(strip_nested(words[0], spec))
            return DecodeOutcome(UNIQUE, data, None, words, stats)
        merged = strip_nested(overlap(list(words)), spec)
        return DecodeOutcome(AMBIGUOUS, None, merged, words, stats)
    if budget_hit:
        return DecodeOutcome(TIMEOUT, None, None, (), stats)
    return DecodeOutcome(NO_SOLUTION, None, None, (), stats)


def brute_force_oracle(fragments: FragmentSet, spec: LayerSpec, ceiling: int = 9) -> set[Bits]:
    """All distinct fragment-permutation concatenations passing every check.

    Refuses fragment counts above the ceiling: the permutation count
    grows factorially.
    """
    if len(fragments) > ceiling:
        raise ValueError(f"{len(fragments)} fragments exceed the oracle ceiling {ceiling}")
    matrix = position_matrix(spec)
    n = matrix.n
    if fragments.total_length != n:
        raise ValueError(f"fragment lengths sum to {fragments.total_length}, expected {n}")
    conditions = condition_table(matrix, spec.scheme)
    ends = [c[0] for c in conditions]
    found: set[Bits] = set()
    for perm in itertools.permutations(fragments.fragments):
        word: Bits = ()
        for fragment in perm:
            word += fragment.bits
        if word in found:
            continue
        if _checks_in_range(word, conditions, ends, 0, n):
            found.add(word)
    return found


def overlap(candidates: list[Bits]) -> Ternary:
    """Position-wise agreement; disagreeing positions become erasures."""
    if not candidates:
        raise ValueError("overlap of an empty candidate list")
    length = len(candidates[0])
    for cand in candidates:
        if len(cand) != length:
            raise ValueError("overlap requires equal-length candidates")
    merged: list[int | None] = []
    for i in range(length):
        symbol = candidates[0][i]
        merged.append(symbol if all(c[i] == symbol for c in candidates) else ERASURE)
    return tuple(merged)


def declare_error(outcome: DecodeOutcome, d_true: Bits) -> str:
    """Classify a decode against the transmitted data.

    unique-and-equal is a success; a unique wrong answer, or an overlap
    disagreeing with the truth in a non-erased position, is an error;
    a consistent overlap defers to the erasure layer; timeout and
    no-solution count separately as unresolved.
    """
    if outcome.status == UNIQUE:
        return SUCCESS if outcome.data == tuple(d_true) else ERROR
    if outcome.status == AMBIGUOUS:
        assert outcome.data_overlap is not None
        if len(outcome.data_overlap) != len(d_true):
            return ERROR
        for sym, true_bit in zip(outcome.data_overlap, d_true):
            if sym is not ERASURE and sym != true_bit:
                return ERROR
        return ERASURE_RESOLVED
    return UNRESOLVED


def brute_force_extension_bound(m: int) -> int:
    """Extension count of unpruned permutation search: sum_k M!/(M-k)!."""
    return sum(factorial(m) // factorial(m - k) for k in range(1, m + 1))
