"""Command-line interface.

Subcommands: ``languages`` (registered grammars), ``compare`` (score one
file pair), ``run`` (score a JSONL dataset into a report), ``correlate``
(Pearson matrix over a report's metric columns), ``dump-symbols`` (golden
subtree-symbol listing for one file).

Exit codes: 0 success, 2 usage or unknown language, 3 parse failure,
4 insufficient data, 5 I/O or data-format failure. Defaults for the
shared flags can be overridden through SYNTROPY_* environment variables
(SYNTROPY_DEPTH, SYNTROPY_EPSILON, SYNTROPY_ENCODING, SYNTROPY_METRIC,
SYNTROPY_WORKERS, SYNTROPY_SAMPLES) for CI use.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .codec import EncodingScheme, extract_symbols
from .errors import (
    DatasetFormatError,
    EmptyReportError,
    EmptySourceError,
    InsufficientDataError,
    ParseFailureError,
    SyntropyError,
    UnknownLanguageError,
)
from .harness import (
    RunConfig,
    load_report_json,
    load_tasks_jsonl,
    pearson_matrix,
    report_json,
    run_dataset,
    score_pair,
    write_report,
    write_scores_csv,
)
from .frontend import default_registry

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DATA = 4
EXIT_IO = 5

ENV_PREFIX = "SYNTROPY_"


def _env(name: str, fallback, cast=str):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except (TypeError, ValueError):
        raise SystemExit(f"invalid value for {ENV_PREFIX}{name}: {raw!r}")


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--depth", type=int, default=_env("DEPTH", 1, int), help="subtree depth bound (default 1)"
    )
    parser.add_argument(
        "--epsilon",
        type=float,
        default=_env("EPSILON", 1e-12, float),
        help="smoothing floor for the directed metric (default 1e-12)",
    )
    parser.add_argument(
        "--encoding",
        choices=["structural", "value", "both"],
        default=_env("ENCODING", "both"),
        help="subtree encoding(s) to score (default both)",
    )
    parser.add_argument(
        "--metric",
        choices=["sce", "jsd", "both"],
        default=_env("METRIC", "both"),
        help="metric(s) to report (default both)",
    )
    parser.add_argument(
        "--no-clamp",
        action="store_true",
        help="report raw directed ratios instead of clamping into [0, 1]",
    )
    parser.add_argument(
        "--strict",
        action="store_true",
        help="reject trees containing error-recovery nodes",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=_env("WORKERS", 1, int),
        help="worker threads for dataset runs (default 1)",
    )
    parser.add_argument(
        "--samples",
        type=int,
        default=_env("SAMPLES", 5, int),
        help="use at most this many samples per task; 0 means all (default 5)",
    )


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    encodings = ("structural", "value") if args.encoding == "both" else (args.encoding,)
    metrics = ("sce", "jsd") if args.metric == "both" else (args.metric,)
    try:
        return RunConfig(
            depth=args.depth,
            epsilon=args.epsilon,
            encodings=encodings,
            metrics=metrics,
            clamp_sce=not args.no_clamp,
            strict_parse=args.strict,
            workers=args.workers,
            max_samples=None if args.samples == 0 else args.samples,
        )
    except ValueError as exc:
        raise SystemExit(f"invalid configuration: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syntropy",
        description="Structural stability metrics for code samples via AST subtree distributions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("languages", help="list registered grammar backends")

    p_compare = sub.add_parser("compare", help="score one pair of source files")
    p_compare.add_argument("file_a", type=Path)
    p_compare.add_argument("file_b", type=Path)
    p_compare.add_argument("--language", required=True, help="grammar to parse both files with")
    _add_common_flags(p_compare)

    p_run = sub.add_parser("run", help="score a JSONL dataset into a stability report")
    p_run.add_argument("dataset", type=Path, help="JSONL file, one task object per line")
    p_run.add_argument("--out", type=Path, required=True, help="report JSON output path")
    p_run.add_argument("--csv", type=Path, default=None, help="optional per-task CSV output path")
    _add_common_flags(p_run)

    p_corr = sub.add_parser("correlate", help="Pearson matrix over a report's metric columns")
    p_corr.add_argument("report", type=Path, help="report JSON produced by `syntropy run`")
    p_corr.add_argument("--out", type=Path, required=True, help="correlation CSV output path")
    p_corr.add_argument(
        "--no-external",
        action="store_true",
        help="exclude ingested external metric columns from the matrix",
    )

    p_dump = sub.add_parser("dump-symbols", help="dump a file's subtree symbol multiset")
    p_dump.add_argument("file", type=Path)
    p_dump.add_argument("--language", required=True)
    _add_common_flags(p_dump)

    return parser


def _read_source(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"syntropy: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


def _escape(symbol: str) -> str:
    return (
        symbol.replace("\\", "\\\\")
        .replace("\t", "\\t")
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


def cmd_languages(args: argparse.Namespace) -> int:
    for lang in default_registry().languages():
        print(f"{lang.name}\t{lang.grammar_version}")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    registry = default_registry()
    trees = [
        registry.parse(args.language, _read_source(path), strict=config.strict_parse)
        for path in (args.file_a, args.file_b)
    ]
    scores: dict[str, float] = {}
    directed: dict[str, dict[str, float]] = {}
    for encoding in config.encodings:
        scheme = EncodingScheme.from_name(encoding)
        ma, mb = (extract_symbols(t, config.depth, scheme) for t in trees)
        pair = score_pair(ma, mb, epsilon=config.epsilon, clamp=config.clamp_sce)
        suffix = "" if encoding == "value" else "_structural"
        if "jsd" in config.metrics:
            scores[f"jsd{suffix}"] = pair["jsd"]
        if "sce" in config.metrics:
            scores[f"sce{suffix}"] = (pair["sce_ab"] + pair["sce_ba"]) / 2.0
            directed[f"sce{suffix}"] = {
                "ab": pair["sce_ab"],
                "ba": pair["sce_ba"],
                "raw_ab": pair["sce_ab_raw"],
                "raw_ba": pair["sce_ba_raw"],
            }
    record = {
        "file_a": str(args.file_a),
        "file_b": str(args.file_b),
        "language": args.language,
        "config": config.to_dict(),
        "scores": scores,
        "directed": directed,
    }
    print(json.dumps(record, sort_keys=True, indent=2))
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    try:
        tasks = load_tasks_jsonl(args.dataset)
    except OSError as exc:
        print(f"syntropy: cannot read {args.dataset}: {exc}", file=sys.stderr)
        return EXIT_IO
    report = run_dataset(tasks, config, dataset_path=str(args.dataset))
    write_report(report, args.out)
    if args.csv is not None:
        write_scores_csv(report, args.csv)
    scored = len(report.per_task)
    skipped = len(report.skipped)
    print(f"scored {scored} task(s), skipped {skipped}")
    for key in sorted(report.aggregate):
        print(f"  {key}: {report.aggregate[key]:.6f}")
    return EXIT_OK


def cmd_correlate(args: argparse.Namespace) -> int:
    try:
        report = load_report_json(args.report)
    except OSError as exc:
        print(f"syntropy: cannot read {args.report}: {exc}", file=sys.stderr)
        return EXIT_IO
    matrix = pearson_matrix(report, include_external=not args.no_external)
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        matrix.write_csv(handle)
    print(f"wrote {len(matrix.metric_names)}x{len(matrix.metric_names)} matrix to {args.out}")
    return EXIT_OK


def cmd_dump_symbols(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    encoding = config.encodings[0] if len(config.encodings) == 1 else "structural"
    scheme = EncodingScheme.from_name(encoding)
    tree = default_registry().parse(
        args.language, _read_source(args.file), strict=config.strict_parse
    )
    multiset = extract_symbols(tree, config.depth, scheme)
    for symbol in sorted(multiset.counts):
        print(f"{multiset.counts[symbol]}\t{_escape(symbol)}")
    return EXIT_OK


_COMMANDS = {
    "languages": cmd_languages,
    "compare": cmd_compare,
    "run": cmd_run,
    "correlate": cmd_correlate,
    "dump-symbols": cmd_dump_symbols,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UnknownLanguageError as exc:
        print(f"syntropy: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseFailureError, EmptySourceError) as exc:
        print(f"syntropy: parse failure: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InsufficientDataError, EmptyReportError) as exc:
        print(f"syntropy: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DatasetFormatError as exc:
        print(f"syntropy: {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"syntropy: {exc}", file=sys.stderr)
        return EXIT_IO
    except SyntropyError as exc:
        print(f"syntropy: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
