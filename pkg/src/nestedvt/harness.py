"""Monte Carlo trial pipeline and the experiment CSV emitters.

A trial runs the full chain: payload -> erasure encode -> layered
encode -> chop-and-shuffle -> reassembly search -> strip -> erasure
decode (when the search returns an ambiguous overlap).  Everything is
derived from (master_seed, trial_index), so trials are reproducible
individually and safe to run in parallel.
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from io import StringIO

from .bits import Bits
from .channel_sim import ChannelParams, alpha_to_p, chop_and_shuffle
from .erasure_code import ErasureConfig, UnrecoverableErasures, ec_decode, ec_encode
from .nested_codec import encode_nested
from .nested_layout import LayerSpec, layer_lengths, rate_bounds
from .reassembler import (
    AMBIGUOUS,
    SearchConfig,
    UNIQUE,
    brute_force_extension_bound,
    decode_search,
)
from .residues import all_zero, distinct, fixed
from .rng import derived_rng, derived_seed

CSV_SCHEMA = "nestedvt-csv v1"

SUCCESS = "success"
ERROR = "error"
UNRESOLVED = "unresolved"
ERASURE_RESOLVED = "erasure-resolved"
ERASURE_FAILED = "erasure-failed"


@dataclass(frozen=True)
class TrialRecord:
    master_seed: int
    trial_index: int
    alpha: float
    p_break: float
    d_sec: int
    m: int
    ell: int
    scheme: str
    epsilon: float
    fragments: int
    outcome: str
    decoder_status: str
    iterations: int
    tau_final: int
    candidates_found: int
    wall_time: float


def run_trial(
    master_seed: int,
    trial_index: int,
    spec: LayerSpec,
    alpha: float,
    config: SearchConfig,
    epsilon: float = 0.0,
) -> TrialRecord:
    """One end-to-end trial, deterministic in (master_seed, trial_index)."""
    n = layer_lengths(spec)[-1]
    p_break = alpha_to_p(alpha, n)
    ec_config = ErasureConfig.from_code_length(
        spec.n_data, epsilon, seed=derived_seed(master_seed, "ec")
    )
    payload_rng = derived_rng(master_seed, "payload", trial_index)
    w: Bits = tuple(payload_rng.getrandbits(1) for _ in range(ec_config.k))
    d = ec_encode(w, ec_config)
    x = encode_nested(d, spec)
    channel = ChannelParams(p_break, seed=derived_seed(master_seed, "trial", trial_index))
    fragment_set = chop_and_shuffle(x, channel)

    started = time.perf_counter()
    outcome = decode_search(fragment_set, spec, config)
    wall_time = time.perf_counter() - started

    if outcome.status == UNIQUE:
        classification = SUCCESS if outcome.data == d else ERROR
    elif outcome.status == AMBIGUOUS:
        try:
            recovered = ec_decode(outcome.data_overlap, ec_config)
            classification = ERASURE_RESOLVED if recovered == w else ERROR
        except UnrecoverableErasures:
            classification = ERASURE_FAILED
    else:
        classification = UNRESOLVED

    return TrialRecord(
        master_seed=master_seed,
        trial_index=trial_index,
        alpha=alpha,
        p_break=p_break,
        d_sec=spec.d_sec,
        m=spec.m,
        ell=spec.ell,
        scheme=spec.scheme.kind,
        epsilon=epsilon,
        fragments=len(fragment_set),
        outcome=classification,
        decoder_status=outcome.status,
        iterations=outcome.stats.extensions,
        tau_final=outcome.stats.tau_final,
        candidates_found=len(outcome.codewords),
        wall_time=wall_time,
    )


def _run_trials(
    master_seed: int,
    count: int,
    spec: LayerSpec,
    alpha: float,
    config: SearchConfig,
    epsilon: float,
    workers: int = 1,
) -> list[TrialRecord]:
    if workers <= 1:
        return [
            run_trial(master_seed, index, spec, alpha, config, epsilon) for index in range(count)
        ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        records = list(
            pool.map(
                run_trial,
                [master_seed] * count,
                range(count),
                [spec] * count,
                [alpha] * count,
                [config] * count,
                [epsilon] * count,
                chunksize=max(1, count // (workers * 4)),
            )
        )
    return sorted(records, key=lambda r: r.trial_index)


def _format(value) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def _emit_csv(kind: str, header: list[str], rows: list[list], comments: list[str]) -> str:
    out = StringIO()
    out.write(f"# {CSV_SCHEMA} kind={kind}\n")
    for comment in comments:
        out.write(f"# {comment}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format(v) for v in row])
    return out.getvalue()


def _rate(records: list[TrialRecord], outcome: str) -> float:
    return sum(1 for r in records if r.outcome == outcome) / len(records)


def experiment_error_vs_alpha(
    alphas: list[float],
    spec: LayerSpec,
    trials: int,
    config: SearchConfig,
    master_seed: int,
    epsilon: float = 0.0,
    workers: int = 1,
) -> tuple[str, list[TrialRecord]]:
    """One aggregated CSV row per alpha value."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    header = [
        "alpha",
        "trials",
        "success_rate",
        "error_rate",
        "unresolved_rate",
        "erasure_resolved_rate",
        "erasure_failed_rate",
        "mean_iterations",
        "mean_fragments",
    ]
    rows = []
    all_records: list[TrialRecord] = []
    for alpha in alphas:
        seed = _alpha_seed(master_seed, alpha)
        records = _run_trials(seed, trials, spec, alpha, config, epsilon, workers)
        all_records.extend(records)
        rows.append(
            [
                alpha,
                trials,
                _rate(records, SUCCESS),
                _rate(records, ERROR),
                _rate(records, UNRESOLVED),
                _rate(records, ERASURE_RESOLVED),
                _rate(records, ERASURE_FAILED),
                sum(r.iterations for r in records) / trials,
                sum(r.fragments for r in records) / trials,
            ]
        )
    comments = [_spec_comment(spec, master_seed, epsilon, config)]
    return _emit_csv("error-vs-alpha", header, rows, comments), all_records


def experiment_residue_schemes(
    spec: LayerSpec,
    alpha: float,
    trials: int,
    config: SearchConfig,
    master_seed: int,
    r0: int = 1,
    epsilon: float = 0.0,
    workers: int = 1,
) -> tuple[str, list[TrialRecord]]:
    """Paired-seed comparison of the three residue assignment rules.

    Every scheme sees the same channel realizations: the chop and
    shuffle streams derive from the trial seed alone.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    header = [
        "scheme",
        "alpha",
        "trials",
        "success_rate",
        "error_rate",
        "unresolved_rate",
        "erasure_resolved_rate",
        "erasure_failed_rate",
        "mean_iterations",
    ]
    rows = []
    all_records: list[TrialRecord] = []
    for label, scheme in (
        ("all-zero", all_zero()),
        (f"fixed({r0})", fixed(r0)),
        ("distinct", distinct()),
    ):
        variant = replace(spec, scheme=scheme)
        records = _run_trials(master_seed, trials, variant, alpha, config, epsilon, workers)
        all_records.extend(records)
        rows.append(
            [
                label,
                alpha,
                trials,
                _rate(records, SUCCESS),
                _rate(records, ERROR),
                _rate(records, UNRESOLVED),
                _rate(records, ERASURE_RESOLVED),
                _rate(records, ERASURE_FAILED),
                sum(r.iterations for r in records) / trials,
            ]
        )
    comments = [_spec_comment(spec, master_seed, epsilon, config)]
    return _emit_csv("residue-schemes", header, rows, comments), all_records


def experiment_complexity(
    spec: LayerSpec,
    alpha: float,
    trials: int,
    config: SearchConfig,
    master_seed: int,
    oracle_ceiling: int = 9,
    workers: int = 1,
) -> tuple[str, list[TrialRecord]]:
    """Per-trial decoder extension count against the permutation bound."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    records = _run_trials(master_seed, trials, spec, alpha, config, 0.0, workers)
    header = [
        "trial_index",
        "fragments",
        "decoder_status",
        "decoder_extensions",
        "brute_force_extensions",
        "ratio",
    ]
    rows = []
    excluded = 0
    for record in records:
        if record.fragments > oracle_ceiling:
            excluded += 1
            continue
        bound = brute_force_extension_bound(record.fragments)
        rows.append(
            [
                record.trial_index,
                record.fragments,
                record.decoder_status,
                record.iterations,
                bound,
                record.iterations / bound,
            ]
        )
    comments = [
        _spec_comment(spec, master_seed, 0.0, config),
        f"alpha={alpha!r} oracle_ceiling={oracle_ceiling} excluded_trials={excluded}",
    ]
    return _emit_csv("complexity", header, rows, comments), records


def rate_sweep_csv(
    d_secs: list[int], m: int, ell: int, log2_n_range: tuple[float, float] = (9.0, 17.0)
) -> str:
    """Bound-vs-rate table over growing section sizes, filtered to the
    requested log2(n) window."""
    header = ["log2_n", "r_minus", "rate", "r_plus", "d_sec", "m", "ell", "n"]
    rows = []
    for d_sec in d_secs:
        spec = LayerSpec(d_sec=d_sec, m=m, ell=ell)
        n = layer_lengths(spec)[-1]
        log2_n = math.log2(n)
        if not log2_n_range[0] <= log2_n < log2_n_range[1]:
            continue
        bounds = rate_bounds(spec)
        rows.append([log2_n, bounds.r_minus, bounds.rate, bounds.r_plus, d_sec, m, ell, n])
    return _emit_csv("rate-bounds", header, rows, [])


# Doubling steps keep the bound gap strictly shrinking; denser grids pick up
# ceil-induced jitter in the exact rate.
DEFAULT_SWEEP_D_SECS = [96, 128, 256, 512, 1024, 2048, 4096, 8192, 16384]


def _alpha_seed(master_seed: int, alpha: float) -> int:
    return derived_seed(master_seed, "alpha", repr(alpha))


def _spec_comment(spec: LayerSpec, master_seed: int, epsilon: float, config: SearchConfig) -> str:
    return (
        f"d_sec={spec.d_sec} m={spec.m} ell={spec.ell} scheme={spec.scheme.kind} "
        f"seed={master_seed} epsilon={epsilon!r} tau={config.tau} delta={config.delta}"
    )


def write_trial_log(path, records: list[TrialRecord]) -> None:
    """One JSON object per trial: the decoder's outcome record fields."""
    with open(path, "w", encoding="ascii") as fh:
        for record in records:
            fh.write(
                json.dumps(
                    {
                        "outcome": record.decoder_status,
                        "iterations": record.iterations,
                        "tau_final": record.tau_final,
                        "candidates_found": record.candidates_found,
                    },
                    sort_keys=True,
                )
                + "\n"
            )
