"""Command-line front end: ``dloco <command> [options]``.

Exit codes: 0 on success, 1 on bad usage or invalid input, 2 when decoding
flags at least one frame.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis, detection, rll
from .bridging import Scheme
from .cardinality import (
    CodeParams,
    adder_size_bits,
    build_cardinality_table,
    cardinality,
    floor_log2,
    storage_overhead_bits,
)
from .codec import format_word
from .stream import StreamConfig, decode_stream, encode_stream

EXIT_OK, EXIT_USAGE, EXIT_FLAGGED = 0, 1, 2
SIMULATE_TRIALS = 10_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- input / output ----------------------------------------------------------


def _read_input(path: str | None) -> bytes:
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def parse_message(data: bytes, kind: str = "auto") -> str:
    """Turn encode input into a bit string.

    ``auto`` accepts ``0``/``1`` text, ``0x``-prefixed hex, and otherwise
    treats the input as raw bytes (8 bits each, most significant first).
    """
    text = data.decode("ascii", errors="replace").strip()
    compact = "".join(text.split())
    if kind == "auto":
        if compact and set(compact) <= {"0", "1"}:
            kind = "bits"
        elif compact.lower().startswith("0x"):
            kind = "hex"
        else:
            kind = "bytes"
    if kind == "bits":
        if not compact or set(compact) - {"0", "1"}:
            raise UsageError("bit input must be a non-empty string of 0 and 1")
        return compact
    if kind == "hex":
        digits = compact[2:] if compact.lower().startswith("0x") else compact
        try:
            value = int(digits, 16)
        except ValueError:
            raise UsageError("malformed hex input") from None
        return format(value, f"0{4 * len(digits)}b")
    if not data:
        raise UsageError("empty input")
    return "".join(format(b, "08b") for b in data)


def _codeword_length(args, default: int | None = None) -> int:
    if args.mprime is not None:
        if args.m is not None and args.m != 3 * args.mprime:
            raise UsageError("--m and --mprime disagree")
        return 3 * args.mprime
    if args.m is not None:
        return args.m
    if default is None:
        raise UsageError("--m or --mprime is required")
    return default


def _stream_config(args) -> StreamConfig:
    m = _codeword_length(args, 21)
    return StreamConfig(CodeParams(args.q, args.ell, m), Scheme.parse(args.scheme), args.balance)


# -- commands ----------------------------------------------------------------


def cmd_encode(args) -> int:
    config = _stream_config(args)
    bits = parse_message(_read_input(args.input), args.input_format)
    dna = encode_stream(bits, config)
    _write_output(args.output, dna + "\n")
    print(f"message_bits={len(bits)} symbols={len(dna)}", file=sys.stderr)
    return EXIT_OK


def cmd_decode(args) -> int:
    config = _stream_config(args)
    dna = _read_input(args.input).decode("ascii", errors="replace")
    bits, report = decode_stream(dna, config, args.nbits)
    _write_output(args.output, bits + "\n")
    summary = report.to_records() if args.format == "csv" else report.to_text()
    print(summary, file=sys.stderr)
    return EXIT_OK if report.clean else EXIT_FLAGGED


def cmd_card(args) -> int:
    m = _codeword_length(args)
    table = build_cardinality_table(args.q, args.ell, m)
    n = cardinality(table, m)
    rows = [
        ("q", args.q), ("ell", args.ell), ("m", m), ("N", n),
        ("floor_log2_N", floor_log2(n)), ("adder_bits", adder_size_bits(table, m)),
        ("storage_bits", storage_overhead_bits(table, m)),
    ]
    if args.format == "csv":
        text = ",".join(k for k, _ in rows) + "\n" + ",".join(str(v) for _, v in rows) + "\n"
    else:
        text = "".join(f"{k} = {v}\n" for k, v in rows)
    _write_output(args.output, text)
    return EXIT_OK


def cmd_tables(args) -> int:
    parts = []
    which = args.which
    if which in ("rates", "all"):
        parts.append(analysis.format_rate_table(analysis.rate_table(), args.format, args.rounding))
    if which in ("adders", "all"):
        parts.append(analysis.format_adder_table(analysis.adder_table(), args.format))
    if which in ("storage", "all"):
        parts.append(analysis.format_storage_table(analysis.storage_table(), args.format))
    if which in ("comparison", "all"):
        parts.append(analysis.format_comparison_table(analysis.comparison_table(), args.format))
    _write_output(args.output, "\n".join(parts))
    return EXIT_OK


def cmd_capacity(args) -> int:
    beta = analysis.beta_max(args.q, args.ell)
    beta_pi = analysis.beta_power_iteration(args.q, args.ell)
    cap = analysis.capacity(args.q, args.ell)
    if args.format == "csv":
        text = f"q,ell,beta_max,beta_power_iteration,capacity\n{args.q},{args.ell},{beta:.12g},{beta_pi:.12g},{cap:.12g}\n"
    else:
        text = (
            f"q = {args.q}, ell = {args.ell}\n"
            f"beta_max (bisection)       = {beta:.10f}\n"
            f"beta_max (power iteration) = {beta_pi:.10f}\n"
            f"normalized capacity        = {cap:.10f}\n"
        )
    _write_output(args.output, text)
    return EXIT_OK


def _p_grid(args) -> list[float]:
    return list(args.p) if args.p else list(detection.DEFAULT_P_GRID)


def cmd_bounds(args) -> int:
    if args.mprime is not None or args.m is not None:
        if args.mprime is None or args.m is None:
            raise UsageError("bounds needs both --mprime (scheme III) and --m (scheme II-B)")
        cases = [(args.mprime, args.m)]
    else:
        cases = list(detection.BOUND_CASES)
    grid = _p_grid(args)
    parts = []
    for mp, m in cases:
        mc_iii = mc_iib = None
        if args.trials:
            iii = StreamConfig(CodeParams(4, 3, 3 * mp), Scheme.III, True)
            iib = StreamConfig(CodeParams(4, 3, m), Scheme.IIB, True)
            mc_iii = [s.undetected_rate for s in detection.monte_carlo_sweep(iii, grid, args.trials, args.seed, args.workers)]
            mc_iib = [s.undetected_rate for s in detection.monte_carlo_sweep(iib, grid, args.trials, args.seed, args.workers)]
        csv_text = detection.emit_bound_curves(mp, m, grid, mc_iii, mc_iib)
        parts.append(csv_text if len(cases) == 1 else f"# m'={mp} m={m}\n{csv_text}")
    _write_output(args.output, "".join(parts))
    return EXIT_OK


def cmd_simulate(args) -> int:
    config = _stream_config(args)
    grid = list(args.p) if args.p else [0.01]
    trials = args.trials if args.trials is not None else SIMULATE_TRIALS
    results = detection.monte_carlo_sweep(config, grid, trials, args.seed, args.workers)
    has_bound = config.scheme in (Scheme.IIB, Scheme.III)
    if args.format == "csv":
        lines = ["p,frames,errored,detected,undetected,false_alarms,undetected_rate,half_width,bound"]
        for p, s in zip(grid, results):
            bound = f"{detection.analytic_bound(config, p):.6g}" if has_bound else ""
            lines.append(
                f"{p:.6g},{s.frames},{s.errored},{s.detected},{s.undetected},{s.false_alarms},"
                f"{s.undetected_rate:.6g},{s.half_width():.6g},{bound}"
            )
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"scheme {config.scheme.label}, m = {config.params.m}, seed = {args.seed}"]
        for p, s in zip(grid, results):
            lines.append(f"p = {p:.6g}: {s.summary()}")
            if has_bound:
                lines.append(f"  analytic bound = {detection.analytic_bound(config, p):.6g}")
        text = "\n".join(lines) + "\n"
    _write_output(args.output, text)
    return EXIT_OK


def cmd_rll(args) -> int:
    if args.q16 is not None:
        try:
            word = [int(s) for s in args.q16.replace(",", " ").split()]
        except ValueError:
            raise UsageError("--q16 takes comma-separated integers") from None
        _write_output(args.output, format_word(rll.q16_tandem_map(word)) + "\n")
        return EXIT_OK
    code = rll.RllCode(_codeword_length(args, 6), args.ell)
    if args.unrank is not None:
        text = rll.format_bits(rll.rll_unrank(code, args.unrank)) + "\n"
    elif args.rank is not None:
        text = f"{rll.rll_rank(code, args.rank)}\n"
    else:
        words = [rll.format_bits(rll.rll_unrank(code, i)) for i in range(code.cardinality)]
        if args.format == "csv":
            text = "index,word\n" + "".join(f"{i},{w}\n" for i, w in enumerate(words))
        else:
            text = f"# n={code.n} max_zeros={code.k_constraint} count={code.cardinality}\n"
            text += "".join(f"{i} {w}\n" for i, w in enumerate(words))
    _write_output(args.output, text)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _probability(value: str) -> float:
    p = float(value)
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=4, help="alphabet size (default 4)")
    common.add_argument("--ell", type=int, default=3, help="maximum run length (default 3)")
    common.add_argument("--m", type=_positive, default=None, help="codeword length")
    common.add_argument("--mprime", type=_positive, default=None, help="scheme III third length, m = 3 m'")
    common.add_argument("--scheme", choices=[s.value for s in Scheme], default="iib")
    common.add_argument("--balance", action=argparse.BooleanOptionalAction, default=True)
    common.add_argument("--input", default=None, help="input file (default stdin)")
    common.add_argument("--output", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=["text", "csv"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--p", type=_probability, nargs="+", default=None, help="substitution probabilities")

    parser = _Parser(prog="dloco", description="Run-length-limited DNA codes with bridging and balancing.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("encode", parents=[common], help="encode a binary message into DNA")
    p.add_argument("--input-format", choices=["auto", "bits", "hex", "bytes"], default="auto")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[common], help="decode DNA and report detections")
    p.add_argument("--nbits", type=int, default=None, help="trim output to this many bits")
    p.set_defaults(func=cmd_decode)

    sub.add_parser("card", parents=[common], help="codebook size and overheads").set_defaults(func=cmd_card)

    p = sub.add_parser("tables", parents=[common], help="rate, adder, storage and comparison tables")
    p.add_argument("--which", choices=["rates", "adders", "storage", "comparison", "all"], default="all")
    p.add_argument("--rounding", choices=["half-even", "truncate"], default="half-even")
    p.set_defaults(func=cmd_tables)

    sub.add_parser("capacity", parents=[common], help="capacity of the run-length constraint").set_defaults(
        func=cmd_capacity
    )
    sub.add_parser("bounds", parents=[common], help="no-detection bound curves as CSV").set_defaults(func=cmd_bounds)

    p = sub.add_parser("simulate", parents=[common], help="Monte-Carlo substitution experiment")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("rll", parents=[common], help="binary RLL code and q = 16 mapping")
    p.add_argument("--unrank", type=int, default=None)
    p.add_argument("--rank", default=None)
    p.add_argument("--q16", default=None, help="16-ary word to map to DNA, e.g. 0,7,3")
    p.set_defaults(func=cmd_rll)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"dloco {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
