"""Command-line surface: encode/chop/decode/oracle, bounds, experiments.

Exit codes: 0 on success, 1 on usage errors, 2 when `decode` cannot
produce a clean payload.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bits import bits_from_text, bits_to_text, ternary_to_text
from .channel_sim import ChannelParams, alpha_to_p, chop, read_fragments, shuffle, write_fragments
from .erasure_code import ErasureConfig, UnrecoverableErasures, ec_decode, ec_encode
from .harness import (
    DEFAULT_SWEEP_D_SECS,
    experiment_complexity,
    experiment_error_vs_alpha,
    experiment_residue_schemes,
    rate_sweep_csv,
    write_trial_log,
)
from .nested_codec import encode_nested
from .nested_layout import LayerSpec, layer_lengths, rate_bounds
from .plotting import emit_svg, render_figure
from .reassembler import AMBIGUOUS, SearchConfig, UNIQUE, brute_force_oracle, decode_search
from .residues import scheme_from_name


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _add_spec_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--d-sec", type=int, default=None, help="section length in bits")
    parser.add_argument("--m", type=int, default=None, help="codewords merged per layer")
    parser.add_argument("--ell", type=int, default=None, help="number of layers")
    parser.add_argument(
        "--scheme",
        default=None,
        help="residue scheme: all-zero | fixed | distinct (default all-zero)",
    )
    parser.add_argument("--r0", type=int, default=None, help="residue for the fixed scheme")


def _spec_from(args, cfg: dict) -> LayerSpec:
    d_sec = _pick(args.d_sec, cfg, "d_sec", 36)
    m = _pick(args.m, cfg, "m", 2)
    ell = _pick(args.ell, cfg, "ell", 3)
    scheme = scheme_from_name(
        _pick(args.scheme, cfg, "scheme", "all-zero"), _pick(args.r0, cfg, "r0", 1)
    )
    return LayerSpec(d_sec=d_sec, m=m, ell=ell, scheme=scheme)


def _pick(cli_value, cfg: dict, key: str, default):
    if cli_value is not None:
        return cli_value
    if key in cfg:
        return cfg[key]
    return default


def _load_config(path) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _read_lines(path) -> list[str]:
    with open(path, "r", encoding="ascii") as fh:
        return [line.strip() for line in fh if line.strip()]


def _search_config(args, cfg: dict) -> SearchConfig:
    return SearchConfig(
        tau=_pick(args.tau, cfg, "tau", 1),
        delta=_pick(args.delta, cfg, "delta", 1_000_000),
        collect=_pick(getattr(args, "collect", None), cfg, "collect", "all"),
    )


def cmd_encode(args) -> int:
    cfg = _load_config(args.config)
    spec = _spec_from(args, cfg)
    epsilon = _pick(args.epsilon, cfg, "epsilon", 0.0)
    seed = _pick(args.seed, cfg, "seed", 0)
    lines_out = []
    for line in _read_lines(args.infile):
        data = bits_from_text(line)
        if epsilon > 0.0:
            ec = ErasureConfig.from_code_length(spec.n_data, epsilon, seed=seed)
            data = ec_encode(data, ec)
        lines_out.append(bits_to_text(encode_nested(data, spec)))
    _write_lines(args.out, lines_out)
    return 0


def cmd_chop(args) -> int:
    cfg = _load_config(args.config)
    seed = _pick(args.seed, cfg, "seed", 0)
    lines = _read_lines(args.infile)
    if len(lines) != 1:
        raise SystemExit("chop expects exactly one codeword line")
    x = bits_from_text(lines[0])
    if args.p is not None:
        p_break = args.p
    elif args.alpha is not None:
        p_break = alpha_to_p(args.alpha, len(x))
    else:
        raise SystemExit("chop requires --p or --alpha")
    params = ChannelParams(p_break=p_break, seed=seed)
    fragments = shuffle(chop(x, params), params)
    write_fragments(args.out, fragments, n=len(x), seed=seed, p=p_break)
    return 0


def cmd_decode(args) -> int:
    cfg = _load_config(args.config)
    spec = _spec_from(args, cfg)
    epsilon = _pick(args.epsilon, cfg, "epsilon", 0.0)
    seed = _pick(args.seed, cfg, "seed", 0)
    fragments, _header = read_fragments(args.infile)
    outcome = decode_search(fragments, spec, _search_config(args, cfg))
    if args.record:
        with open(args.record, "w", encoding="ascii") as fh:
            fh.write(json.dumps(outcome.record(), sort_keys=True) + "\n")
    if outcome.status == UNIQUE:
        if epsilon > 0.0:
            ec = ErasureConfig.from_code_length(spec.n_data, epsilon, seed=seed)
            payload = ec_decode(outcome.data, ec)
            _write_lines(args.out, [bits_to_text(payload)])
        else:
            _write_lines(args.out, [bits_to_text(outcome.data)])
        return 0
    if outcome.status == AMBIGUOUS:
        if epsilon > 0.0:
            ec = ErasureConfig.from_code_length(spec.n_data, epsilon, seed=seed)
            try:
                payload = ec_decode(outcome.data_overlap, ec)
            except UnrecoverableErasures as exc:
                sys.stderr.write(f"erasure decode failed: {exc}\n")
                _write_lines(args.out, [ternary_to_text(outcome.data_overlap)])
                return 2
            _write_lines(args.out, [bits_to_text(payload)])
            return 0
        _write_lines(args.out, [ternary_to_text(outcome.data_overlap)])
        return 2
    sys.stderr.write(f"decode failed: {outcome.status} after {outcome.stats.extensions} extensions\n")
    return 2


def cmd_oracle(args) -> int:
    cfg = _load_config(args.config)
    spec = _spec_from(args, cfg)
    fragments, _header = read_fragments(args.infile)
    solutions = brute_force_oracle(fragments, spec, ceiling=args.ceiling)
    _write_lines(args.out, [bits_to_text(word) for word in sorted(solutions)])
    return 0


def cmd_rate_bounds(args) -> int:
    cfg = _load_config(args.config)
    if args.sweep:
        m = _pick(args.m, cfg, "m", 2)
        ell = _pick(args.ell, cfg, "ell", 3)
        csv_text = rate_sweep_csv(DEFAULT_SWEEP_D_SECS, m=m, ell=ell)
        out = Path(args.out if args.out else "rate_bounds.csv")
        out.write_text(csv_text, encoding="ascii")
        print(f"wrote {out}")
        if not args.no_figure:
            fig_path = out.with_suffix(".png")
            render_figure(out, "log2_n", ["r_minus", "rate", "r_plus"], fig_path,
                          title="encoding rate and closed-form bounds")
            print(f"wrote {fig_path}")
        return 0
    spec = _spec_from(args, cfg)
    bounds = rate_bounds(spec)
    n = layer_lengths(spec)[-1]
    flag = "" if bounds.guaranteed else " (ordering not guaranteed: d_sec < 36)"
    print(
        f"n={n} R-={bounds.r_minus:.6f} R={bounds.rate:.6f} R+={bounds.r_plus:.6f}{flag}"
    )
    return 0


def cmd_experiment(args) -> int:
    cfg = _load_config(args.config)
    spec = _spec_from(args, cfg)
    config = _search_config(args, cfg)
    seed = _pick(args.seed, cfg, "seed", 20240808)
    trials = _pick(args.trials, cfg, "trials", 200)
    epsilon = _pick(args.epsilon, cfg, "epsilon", 0.0)
    workers = _pick(args.workers, cfg, "workers", 1)
    out = Path(args.out if args.out else f"{args.kind}.csv")

    if args.kind == "error-vs-alpha":
        alphas_raw = _pick(args.alphas, cfg, "alphas", "0.1,0.2,0.3,0.4,0.5")
        alphas = (
            [float(a) for a in alphas_raw.split(",")]
            if isinstance(alphas_raw, str)
            else [float(a) for a in alphas_raw]
        )
        csv_text, records = experiment_error_vs_alpha(
            alphas, spec, trials, config, seed, epsilon, workers
        )
        figure_cols = ("alpha", ["success_rate", "error_rate", "unresolved_rate"])
    elif args.kind == "residues":
        alpha = _pick(args.alpha, cfg, "alpha", 0.3)
        r0 = _pick(args.r0, cfg, "r0", 1)
        csv_text, records = experiment_residue_schemes(
            spec, alpha, trials, config, seed, r0, epsilon, workers
        )
        figure_cols = None
    else:  # complexity
        alpha = _pick(args.alpha, cfg, "alpha", 0.3)
        ceiling = _pick(args.ceiling, cfg, "ceiling", 9)
        csv_text, records = experiment_complexity(
            spec, alpha, trials, config, seed, ceiling, workers
        )
        figure_cols = ("fragments", ["ratio"])

    out.write_text(csv_text, encoding="ascii")
    print(f"wrote {out}")
    if args.trial_log:
        write_trial_log(args.trial_log, records)
        print(f"wrote {args.trial_log}")
    if not args.no_figure:
        fig_path = out.with_suffix(".png")
        if figure_cols is not None:
            render_figure(out, figure_cols[0], figure_cols[1], fig_path, title=args.kind)
        else:
            _render_residue_bars(out, fig_path)
        print(f"wrote {fig_path}")
    return 0


def _render_residue_bars(csv_path, out_path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    from .plotting import read_csv_table

    _header, rows = read_csv_table(csv_path)
    labels = [row["scheme"] for row in rows]
    error = [float(row["error_rate"]) for row in rows]
    unresolved = [float(row["unresolved_rate"]) for row in rows]
    xs = range(len(labels))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.bar([x - 0.2 for x in xs], error, width=0.4, label="error_rate")
    ax.bar([x + 0.2 for x in xs], unresolved, width=0.4, label="unresolved_rate")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels)
    ax.legend()
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)


def cmd_plot(args) -> int:
    emit_svg(args.csv, args.x, args.y.split(","), args.out)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nestedvt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="layered VT encode of bitstring lines")
    _add_spec_flags(enc)
    enc.add_argument("--epsilon", type=float, default=None, help="erasure-code redundancy")
    enc.add_argument("--seed", type=int, default=None)
    enc.add_argument("--config", default=None, help="JSON defaults file")
    enc.add_argument("--in", dest="infile", required=True)
    enc.add_argument("--out", required=True)
    enc.set_defaults(func=cmd_encode)

    chp = sub.add_parser("chop", help="chop and shuffle one codeword into fragments")
    chp.add_argument("--p", type=float, default=None, help="per-boundary break probability")
    chp.add_argument("--alpha", type=float, default=None, help="breakage level p*log2(n)")
    chp.add_argument("--seed", type=int, default=None)
    chp.add_argument("--config", default=None)
    chp.add_argument("--in", dest="infile", required=True)
    chp.add_argument("--out", required=True)
    chp.set_defaults(func=cmd_chop)

    dec = sub.add_parser("decode", help="reassemble fragments and recover the payload")
    _add_spec_flags(dec)
    dec.add_argument("--epsilon", type=float, default=None)
    dec.add_argument("--seed", type=int, default=None)
    dec.add_argument("--tau", type=int, default=None)
    dec.add_argument("--delta", type=int, default=None)
    dec.add_argument("--collect", choices=("all", "first"), default=None)
    dec.add_argument("--record", default=None, help="write the JSON outcome record here")
    dec.add_argument("--config", default=None)
    dec.add_argument("--in", dest="infile", required=True)
    dec.add_argument("--out", required=True)
    dec.set_defaults(func=cmd_decode)

    orc = sub.add_parser("oracle", help="brute-force all valid reassemblies")
    _add_spec_flags(orc)
    orc.add_argument("--ceiling", type=int, default=9)
    orc.add_argument("--config", default=None)
    orc.add_argument("--in", dest="infile", required=True)
    orc.add_argument("--out", required=True)
    orc.set_defaults(func=cmd_oracle)

    rb = sub.add_parser("rate-bounds", help="closed-form rate bounds for a spec, or a sweep")
    _add_spec_flags(rb)
    rb.add_argument("--sweep", action="store_true", help="emit the bounds-vs-size CSV")
    rb.add_argument("--no-figure", action="store_true")
    rb.add_argument("--config", default=None)
    rb.add_argument("--out", default=None)
    rb.set_defaults(func=cmd_rate_bounds)

    exp = sub.add_parser("experiment", help="Monte Carlo experiment suites")
    exp.add_argument("kind", choices=("error-vs-alpha", "residues", "complexity"))
    _add_spec_flags(exp)
    exp.add_argument("--alphas", default=None, help="comma-separated alpha grid")
    exp.add_argument("--alpha", type=float, default=None, help="single alpha value")
    exp.add_argument("--epsilon", type=float, default=None)
    exp.add_argument("--tau", type=int, default=None)
    exp.add_argument("--delta", type=int, default=None)
    exp.add_argument("--seed", type=int, default=None)
    exp.add_argument("--trials", type=int, default=None)
    exp.add_argument("--ceiling", type=int, default=None)
    exp.add_argument("--workers", type=int, default=None)
    exp.add_argument("--trial-log", default=None, help="write per-trial JSON records here")
    exp.add_argument("--no-figure", action="store_true")
    exp.add_argument("--config", default=None)
    exp.add_argument("--out", default=None)
    exp.set_defaults(func=cmd_experiment)

    plo = sub.add_parser("plot", help="render a CSV as a minimal SVG line chart")
    plo.add_argument("--csv", required=True)
    plo.add_argument("--x", required=True)
    plo.add_argument("--y", required=True, help="comma-separated y columns")
    plo.add_argument("--out", required=True)
    plo.set_defaults(func=cmd_plot)
    return parser


def _write_lines(path, lines: list[str]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for line in lines:
            fh.write(line + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"nestedvt: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
