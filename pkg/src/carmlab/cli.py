"""Command-line front end.

Every subcommand is deterministic given its full flag set: randomness is
always surfaced as --seed.  Machine output is JSON (one document, manifest
embedded) or CSV (manifest written as a sidecar when --output is used);
exit codes are 0 on success, 2 for domain/usage errors, 3 for budget or
cap errors, 1 for anything unexpected.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .accuracy import (empirical_proportion_distribution, posterior_composite_given,
                       posterior_general)
from .arith import natural_log_squared_floor
from .bench import DEFAULT_BIT_LENGTHS, run_benchmark
from .bound import classify_by_bound, prime_factor_bound
from .census import DEFAULT_BRUTE_FORCE_CAP, census_brute_force, census_carmichael_exact
from .detector import (DetectorConfig, detect_carmichael_composite,
                       detect_carmichael_general)
from .errors import CapExceededError, DomainError, FactorizationError
from .factoring import factorize
from .korselt import (DEFAULT_ENUMERATION_CAP, enumerate_carmichael,
                      enumerate_carmichael_range, is_carmichael)
from .reproduce import (bound_curve_series, reproduce_fermat_table,
                        reproduce_proportion_examples, reproduce_witness_catalog)
from .schemas import SCHEMAS

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_FLOAT_INT_LIMIT = 1 << 53


def _parse_int(text: str) -> int:
    """Sizes accept 10000000, 10_000_000, 10**7, and 1e7."""
    s = text.strip().replace(",", "_")
    try:
        return int(s)
    except ValueError:
        pass
    try:
        if "**" in s:
            base, _, exponent = s.partition("**")
            return int(base) ** int(exponent)
        value = float(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if abs(value) > _FLOAT_INT_LIMIT:
        raise argparse.ArgumentTypeError(
            f"{text!r} exceeds exact float range; write the integer out")
    if value != int(value):
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    return int(value)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational") from exc


def _manifest(command: str, args: argparse.Namespace, seed: int | None = None) -> dict:
    skip = {"handler", "output"}
    parameters = {key: str(value) for key, value in sorted(vars(args).items())
                  if key not in skip and value is not None}
    return {"command": command, "parameters": parameters,
            "seed": seed if seed is not None else 0,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "tool_version": __version__}


def _emit_json(payload: dict, manifest: dict, output: str | None) -> None:
    document = dict(payload)
    document["manifest"] = manifest
    text = json.dumps(document, indent=2)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def _emit_text(text: str, manifest: dict, output: str | None) -> None:
    if output:
        Path(output).write_text(text + "\n")
        _write_sidecar(output, manifest)
    else:
        print(text)


def _emit_csv(header: list[str], rows: list[list], manifest: dict,
              output: str | None) -> None:
    buffer = io.StringIO()
    buffer.write(",".join(header) + "\n")
    for row in rows:
        buffer.write(",".join(str(cell) for cell in row) + "\n")
    if output:
        Path(output).write_text(buffer.getvalue())
        _write_sidecar(output, manifest)
    else:
        sys.stdout.write(buffer.getvalue())


def _write_sidecar(output: str, manifest: dict) -> None:
    Path(output + ".manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


# ---------------------------------------------------------------- census

def cmd_census(args: argparse.Namespace) -> int:
    n = args.n
    if args.exact:
        census = census_carmichael_exact(n, factorize(n))
    else:
        census = census_brute_force(n, cap=args.cap)
    manifest = _manifest("census", args)
    if args.json:
        _emit_json(census.to_json_dict(), manifest, args.output)
    elif args.csv:
        record = census.to_json_dict()
        _emit_csv(list(record), [list(record.values())], manifest, args.output)
    else:
        _emit_text(_census_text(census), manifest, args.output)
    return EXIT_OK


def _census_text(census) -> str:
    n = census.n
    lines = [f"n = {n}  method = {census.method.value}"]
    if census.method.value == "BruteForce" and n <= 128:
        residues = [pow(a, n - 1, n) for a in range(1, n)]
        lines.append("a     : " + " ".join(f"{a:>4}" for a in range(1, n)))
        lines.append("a^n-1 : " + " ".join(f"{r:>4}" for r in residues))
        lines.append("        (entries != 1 are Fermat witnesses)")
    proportion = census.proportion_witnesses
    lines.append(f"count_A = {census.count_A}  count_B = {census.count_B}  "
                 f"count_C = {census.count_C}")
    lines.append(f"witness proportion = {proportion.numerator}/{proportion.denominator}"
                 f" = {float(proportion) * 100:.2f}%")
    return "\n".join(lines)


# -------------------------------------------------------------- classify

def cmd_classify(args: argparse.Namespace) -> int:
    cfg = DetectorConfig(t_override=args.t, threshold=args.threshold,
                         rng_seed=args.seed)
    if args.assume_composite:
        verdict = detect_carmichael_composite(args.n, cfg)
    else:
        verdict = detect_carmichael_general(args.n, cfg)
    _emit_json(verdict.to_json_dict(), _manifest("classify", args, args.seed),
               args.output)
    return EXIT_OK


# -------------------------------------------------------------- enumerate

def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.limit > DEFAULT_ENUMERATION_CAP:
        raise CapExceededError(
            f"limit {args.limit} exceeds the enumeration cap {DEFAULT_ENUMERATION_CAP}")
    if args.parallel > 1:
        results = _enumerate_parallel(args.limit, args.parallel)
    else:
        results = enumerate_carmichael(args.limit)
    manifest = _manifest("enumerate", args)
    if args.certificates:
        lines = [json.dumps(is_carmichael(n).to_json_dict()) for n in results]
    else:
        lines = [str(n) for n in results]
    body = "\n".join(lines)
    if args.output:
        Path(args.output).write_text(body + ("\n" if body else ""))
        _write_sidecar(args.output, manifest)
    elif body:
        print(body)
    return EXIT_OK


def _enumerate_parallel(limit: int, jobs: int) -> list[int]:
    # contiguous ranges; blocks are independent and merge in order
    edges = [3 + (limit - 2) * i // jobs for i in range(jobs + 1)]
    spans = [(edges[i] + (1 if i else 0), edges[i + 1]) for i in range(jobs)]
    spans = [(lo, hi) for lo, hi in spans if lo <= hi]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_range_worker, spans)
    merged: list[int] = []
    for part in parts:
        merged.extend(part)
    return merged


def _range_worker(span: tuple[int, int]) -> list[int]:
    return enumerate_carmichael_range(span[0], span[1])


# ------------------------------------------------------------------ bound

def cmd_bound(args: argparse.Namespace) -> int:
    evaluation = prime_factor_bound(args.n, bracket_width=args.bracket_width)
    verdict = None
    try:
        fac = factorize(args.n)
        if is_carmichael(args.n, fac):
            verdict = classify_by_bound(args.n, fac).value
    except FactorizationError:
        pass  # bound still reportable without the factor-based verdict
    _emit_json(evaluation.to_json_dict(verdict), _manifest("bound", args), args.output)
    return EXIT_OK


# ------------------------------------------------------------------ model

def cmd_model(args: argparse.Namespace) -> int:
    t = args.t if args.t is not None else natural_log_squared_floor(2 ** args.bits)
    build = posterior_general if args.general else posterior_composite_given
    report = build(t, threshold=args.threshold, bit_length=args.bits,
                   fraction_A=args.fraction_a, fraction_B=args.fraction_b)
    _emit_json(report.to_json_dict(), _manifest("model", args), args.output)
    return EXIT_OK


# -------------------------------------------------------------- reproduce

def cmd_reproduce(args: argparse.Namespace) -> int:
    manifest = _manifest("reproduce", args, getattr(args, "seed", None))
    if args.table == 1:
        report = reproduce_fermat_table()
        if args.json:
            _emit_json(report, manifest, args.output)
        elif args.csv:
            header = ["a", "computed", "published", "match", "witness"]
            rows = [[c["a"], c["computed"], c["published"], c["match"], c["witness"]]
                    for c in report["cells"]]
            _emit_csv(header, rows, manifest, args.output)
        else:
            _emit_text(_fermat_table_text(report), manifest, args.output)
    elif args.table == 2:
        report = reproduce_witness_catalog()
        if args.json:
            _emit_json(report, manifest, args.output)
        elif args.csv:
            header = ["published_percent", "printed_n", "n", "computed_percent",
                      "percent_match", "is_carmichael", "grouping_ok", "flags"]
            rows = [[r["published_percent"], r["printed_n"], r["n"],
                     r["computed_percent"], r["percent_match"], r["is_carmichael"],
                     r["grouping_ok"], ";".join(r["flags"])]
                    for r in report["rows"]]
            _emit_csv(header, rows, manifest, args.output)
        else:
            _emit_text(_catalog_text(report), manifest, args.output)
    elif args.proportions:
        report = reproduce_proportion_examples()
        if args.json:
            _emit_json(report, manifest, args.output)
        else:
            _emit_text(_proportions_text(report), manifest, args.output)
    elif args.figure == 1:
        series = bound_curve_series(n=args.n or 1729)
        if args.json:
            _emit_json({"series": series}, manifest, args.output)
        else:
            _emit_csv(["a", "value"],
                      [[f"{p['a']:.6f}", f"{p['value']:.12g}"] for p in series],
                      manifest, args.output)
    elif args.figure == 2:
        histogram = empirical_proportion_distribution(
            args.n or 561, factorize(args.n or 561),
            t=args.t, trials=args.trials, seed=args.seed)
        if args.json:
            _emit_json(histogram.to_json_dict(), manifest, args.output)
        else:
            _emit_csv(["bin_lo", "bin_hi", "count"],
                      [[f"{lo:.8f}", f"{hi:.8f}", count]
                       for lo, hi, count in histogram.csv_rows()],
                      manifest, args.output)
    else:
        raise DomainError("choose one of --table, --proportions, --figure")
    return EXIT_OK


def _fermat_table_text(report: dict) -> str:
    lines = [f"Fermat test residues for n = {report['n']} (reference row diff)"]
    lines.append("a         : " + " ".join(f"{c['a']:>3}" for c in report["cells"]))
    lines.append("computed  : " + " ".join(f"{c['computed']:>3}" for c in report["cells"]))
    lines.append("published : " + " ".join(f"{c['published']:>3}" for c in report["cells"]))
    lines.append("match     : " + " ".join(" ok" if c["match"] else "BAD"
                                           for c in report["cells"]))
    lines.append(f"witnesses = {report['witnesses']}  proportion = "
                 f"{report['proportion_percent']:.2f}%  all cells match: "
                 f"{report['all_match']}")
    return "\n".join(lines)


def _catalog_text(report: dict) -> str:
    lines = ["high-witness Carmichael catalog (recomputed from factors)"]
    for row in report["rows"]:
        status = "ok " if row["percent_match"] and row["is_carmichael"] else "BAD"
        lines.append(f"[{status}] {row['published_percent']:>6}%  n = {row['n']:<20} "
                     f"computed {row['computed_percent']:.2f}%  carmichael="
                     f"{row['is_carmichael']}")
        for flag in row["flags"]:
            lines.append(f"       flag: {flag} (printed: {row['printed_n']})")
    lines.append(f"all rows match: {report['all_match']}")
    return "\n".join(lines)


def _proportions_text(report: dict) -> str:
    lines = ["worked witness-proportion examples"]
    for row in report["rows"]:
        mark = "ok " if row["match"] else "DIFF"
        lines.append(f"[{mark}] n = {row['n']}: exact "
                     f"{row['proportion_num']}/{row['proportion_den']} = "
                     f"{row['decimal']}  published {row['published']}")
        if row["note"]:
            lines.append(f"       note: {row['note']}")
    return "\n".join(lines)


# ------------------------------------------------------------------ bench

def cmd_bench(args: argparse.Namespace) -> int:
    if args.range:
        lo, _, hi = args.range.partition(":")
        low, high = _parse_int(lo), _parse_int(hi)
        bits = []
        while low <= high:
            bits.append(low)
            low *= 2
        bits = tuple(bits)
    else:
        bits = tuple(_parse_int(piece) for piece in args.bits.split(":"))
    report = run_benchmark(bit_lengths=bits, t=args.t, repeats=args.repeats,
                           seed=args.seed)
    _emit_json(report.to_json_dict(), _manifest("bench", args, args.seed), args.output)
    return EXIT_OK


# ----------------------------------------------------------------- schema

def cmd_schema(args: argparse.Namespace) -> int:
    print(json.dumps(SCHEMAS[args.name], indent=2))
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carmlab",
        description="Carmichael number analysis: censuses, classification, "
                    "enumeration, bounds, accuracy modeling, reproduction, "
                    "and benchmarking.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="Fermat witness census of one n")
    p.add_argument("n", type=_parse_int)
    p.add_argument("--exact", action="store_true",
                   help="totient-based census (Carmichael numbers and primes only)")
    p.add_argument("--brute", action="store_true",
                   help="force the brute-force census (the default)")
    p.add_argument("--cap", type=_parse_int, default=DEFAULT_BRUTE_FORCE_CAP)
    _output_flags(p)
    p.set_defaults(handler=cmd_census)

    p = sub.add_parser("classify", help="Monte Carlo classification of one n")
    p.add_argument("n", type=_parse_int)
    p.add_argument("--seed", type=_parse_int, default=0)
    p.add_argument("--t", type=_parse_int, default=None,
                   help="sample size override (default floor((ln n)^2))")
    p.add_argument("--threshold", type=_parse_fraction, default=Fraction(45, 100))
    p.add_argument("--assume-composite", action="store_true",
                   help="skip the primality split; caller asserts n is composite")
    p.add_argument("--output")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("enumerate", help="all Carmichael numbers up to a limit")
    p.add_argument("--limit", type=_parse_int, required=True)
    p.add_argument("--certificates", action="store_true",
                   help="emit JSON certificate records instead of plain integers")
    p.add_argument("--parallel", type=int, default=1, metavar="N",
                   help="scan N ranges concurrently")
    p.add_argument("--output")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("bound", help="smallest-prime-factor bound for one n")
    p.add_argument("n", type=_parse_int)
    p.add_argument("--bracket-width", type=float, default=1e-9)
    p.add_argument("--output")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("model", help="analytic detector accuracy at a bit length")
    p.add_argument("--bits", type=_parse_int, default=1024)
    p.add_argument("--t", type=_parse_int, default=None,
                   help="sample size (default floor((ln 2^bits)^2))")
    p.add_argument("--threshold", type=_parse_fraction, default=Fraction(45, 100))
    p.add_argument("--general", action="store_true",
                   help="model the prime-splitting variant instead")
    p.add_argument("--fraction-a", type=_parse_fraction, default=None,
                   help="assumed non-witness fraction |A|/n (default worst case 1/2)")
    p.add_argument("--fraction-b", type=_parse_fraction, default=None,
                   help="assumed coprime-witness fraction |B|/n (default 1/2)")
    p.add_argument("--output")
    p.set_defaults(handler=cmd_model)

    p = sub.add_parser("reproduce", help="recompute bundled reference values")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--table", type=int, choices=(1, 2))
    group.add_argument("--proportions", action="store_true",
                       help="the three worked proportion examples")
    group.add_argument("--figure", type=int, choices=(1, 2),
                       help="reference figures as data series (CSV by default)")
    p.add_argument("--n", type=_parse_int, default=None)
    p.add_argument("--t", type=_parse_int, default=40)
    p.add_argument("--trials", type=_parse_int, default=2000)
    p.add_argument("--seed", type=_parse_int, default=0)
    _output_flags(p)
    p.set_defaults(handler=cmd_reproduce)

    p = sub.add_parser("bench", help="classification cost versus bit length")
    p.add_argument("--range", default=None, metavar="LO:HI",
                   help="doubling bit lengths from LO to HI, e.g. 64:1024")
    p.add_argument("--bits", default=":".join(str(b) for b in DEFAULT_BIT_LENGTHS),
                   help="explicit colon-separated bit lengths, e.g. 64:128:256")
    p.add_argument("--t", type=_parse_int, default=16)
    p.add_argument("--repeats", type=_parse_int, default=3)
    p.add_argument("--seed", type=_parse_int, default=0)
    p.add_argument("--output")
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("schema", help="dump a JSON schema for machine output")
    p.add_argument("name", choices=sorted(SCHEMAS))
    p.set_defaults(handler=cmd_schema)

    return parser


def _output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--output")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceededError, FactorizationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
