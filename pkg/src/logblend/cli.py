"""Command-line interface.

Subcommands: stats, heterogeneity, pool build, mix, fuzz, parse, combine,
evaluate, benchmark. All structured output is JSON. Exit codes: 0 success,
1 usage error, 2 data/format error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import Dataset, load_raw, load_structured, write_dataset
from .errors import LogblendError
from .fuzzing import MODE_LABELED, MODE_PARSED, FuzzConfig, fuzz
from .harness import (
    EvaluationReport,
    build_combined_dataset,
    plan_from_dict,
    run_experiment,
)
from .heterogeneity import (
    INDUSTRY_REFERENCE,
    ReferenceStats,
    h_score,
    proxy_stats,
)
from .metrics import evaluate
from .mixing import MixConfig, mix, mix_with_parser_labels
from .parsers import (
    IdentityParserConfig,
    TokenFrequencyParserConfig,
    TreeParserConfig,
    parse,
    read_parse_result,
    write_parse_result,
)
from .pool import OutlierPool, VariablePool, build_outlier_pool, build_variable_pool

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract here is 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


class UsageError(Exception):
    pass


def _load(path: str, raw: bool) -> Dataset:
    return load_raw(path) if raw else load_structured(path)


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _add_common(sub: argparse.ArgumentParser, seed: bool = False) -> None:
    sub.add_argument("--out", help="output file (default: stdout for JSON)")
    sub.add_argument(
        "--format", choices=["json"], default="json", help="output format"
    )
    if seed:
        sub.add_argument("--seed", type=int, default=0, help="random seed")


def _reference_from(args: argparse.Namespace) -> ReferenceStats:
    if args.ref_nuw or args.ref_nuc or args.ref_nuldl:
        return ReferenceStats(
            nuw=args.ref_nuw or INDUSTRY_REFERENCE.nuw,
            nuc=args.ref_nuc or INDUSTRY_REFERENCE.nuc,
            nuldl=args.ref_nuldl or INDUSTRY_REFERENCE.nuldl,
        )
    return INDUSTRY_REFERENCE


def _parser_config(args: argparse.Namespace):
    if args.parser == "tree":
        return TreeParserConfig(
            depth=args.depth,
            similarity_threshold=args.st,
            max_children=args.max_children,
            masks=tuple(args.mask or ()),
        )
    if args.parser == "tokenfreq":
        return TokenFrequencyParserConfig(threshold=args.tf_threshold)
    return IdentityParserConfig()


def build_arg_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="logblend", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="proxy statistics of a dataset")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--raw", action="store_true", help="input is newline-delimited text")
    _add_common(p)

    p = sub.add_parser("heterogeneity", help="heterogeneity score of a dataset")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--raw", action="store_true")
    p.add_argument("--ref-nuw", type=int, default=0)
    p.add_argument("--ref-nuc", type=int, default=0)
    p.add_argument("--ref-nuldl", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("pool", help="build synthesis pools")
    pool_sub = p.add_subparsers(dest="pool_command", required=True)
    b = pool_sub.add_parser("build", help="build outlier and variable pools")
    b.add_argument("datasets", nargs="+", help="structured dataset files")
    b.add_argument("--outlier-fraction", type=float, default=0.05)
    b.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("mix", help="replace frequent entries with pooled outliers")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--pool", required=True, help="pool directory or outlier pool file")
    p.add_argument("--strength", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--include-own-source", action="store_true")
    p.add_argument("--parsed", help="parser output file used as surrogate labels")
    p.add_argument("--out", required=True)

    p = sub.add_parser("fuzz", help="resample every variable from the pool")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--vpool", required=True, help="variable pool file")
    p.add_argument("--mode", choices=[MODE_LABELED, MODE_PARSED], default=MODE_LABELED)
    p.add_argument("--parsed", help="parser output file (parsed mode)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("parse", help="run a built-in parser")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--raw", action="store_true")
    p.add_argument(
        "--parser", choices=["tree", "tokenfreq", "identity"], default="tree"
    )
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--st", type=float, default=0.4, help="similarity threshold")
    p.add_argument("--max-children", type=int, default=100)
    p.add_argument("--tf-threshold", type=float, default=0.6)
    p.add_argument("--mask", action="append", help="regex replaced by <*> pre-parse")
    p.add_argument("--out", required=True, help="LineId,EventTemplate output file")

    p = sub.add_parser("combine", help="uniform sample across datasets")
    p.add_argument("datasets", nargs="+")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("evaluate", help="metrics of a parse result against labels")
    p.add_argument("--truth", required=True, help="structured dataset with labels")
    p.add_argument("--predicted", required=True, help="LineId,EventTemplate file")
    _add_common(p)

    p = sub.add_parser("benchmark", help="run an experiment plan")
    p.add_argument("--plan", required=True, help="plan JSON file")
    p.add_argument("--runs", type=int, help="override plan run count")
    p.add_argument("--seed", type=int, help="override plan base seed")
    p.add_argument("--workers", type=int, help="override plan worker count")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    p.add_argument("--out", help="report file (default: stdout)")
    p.add_argument("--format", choices=["json"], default="json")

    return top


def _cmd_stats(args) -> None:
    ds = _load(args.input, args.raw)
    _emit(proxy_stats(ds).as_dict(), args.out)


def _cmd_heterogeneity(args) -> None:
    ds = _load(args.input, args.raw)
    score = h_score(proxy_stats(ds), _reference_from(args))
    _emit(score.as_dict(), args.out)


def _cmd_pool_build(args) -> None:
    datasets = [load_structured(p) for p in args.datasets]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    opool = build_outlier_pool(datasets, outlier_fraction=args.outlier_fraction)
    vpool = build_variable_pool(datasets)
    opool.save(out_dir / "outlier_pool.csv")
    vpool.save(out_dir / "variable_pool.tsv")
    skipped = sum(len(v) for v in vpool.skipped.values())
    _emit(
        {
            "outlier_pool": str(out_dir / "outlier_pool.csv"),
            "outlier_entries": len(opool),
            "variable_pool": str(out_dir / "variable_pool.tsv"),
            "variable_values": len(vpool),
            "skipped_records": skipped,
        },
        None,
    )


def _resolve_outlier_pool(path: str) -> OutlierPool:
    p = Path(path)
    if p.is_dir():
        p = p / "outlier_pool.csv"
    return OutlierPool.load(p)


def _cmd_mix(args) -> None:
    ds = load_structured(args.input)
    pool = _resolve_outlier_pool(args.pool)
    cfg = MixConfig(
        strength=args.strength,
        seed=args.seed,
        exclude_source=not args.include_own_source,
    )
    if args.parsed:
        parsed = read_parse_result(args.parsed, expected_len=len(ds.records))
        mixed = mix_with_parser_labels(ds, parsed, pool, cfg)
    else:
        mixed = mix(ds, pool, cfg)
    write_dataset(mixed, args.out)


def _cmd_fuzz(args) -> None:
    ds = load_structured(args.input)
    vpool = VariablePool.load(args.vpool)
    cfg = FuzzConfig(seed=args.seed, mode=args.mode)
    parsed = None
    if args.mode == MODE_PARSED:
        if not args.parsed:
            raise LogblendError("--parsed is required in parsed mode")
        parsed = read_parse_result(args.parsed, expected_len=len(ds.records))
    result = fuzz(ds, vpool, cfg, parsed)
    write_dataset(result.dataset, args.out)
    if result.skipped_line_ids:
        print(
            f"skipped {len(result.skipped_line_ids)} unalignable records",
            file=sys.stderr,
        )


def _cmd_parse(args) -> None:
    ds = _load(args.input, args.raw)
    result = parse(ds, _parser_config(args))
    write_parse_result(result, args.out)


def _cmd_combine(args) -> None:
    datasets = [load_structured(p) for p in args.datasets]
    combined = build_combined_dataset(datasets, size=args.size, seed=args.seed)
    write_dataset(combined, args.out)


def _cmd_evaluate(args) -> None:
    truth_ds = load_structured(args.truth)
    predicted = read_parse_result(args.predicted, expected_len=len(truth_ds.records))
    report = evaluate(predicted, truth_ds.labels())
    _emit(report.as_dict(), args.out)


def _cmd_benchmark(args) -> None:
    plan_path = Path(args.plan)
    doc = json.loads(plan_path.read_text(encoding="utf-8"))
    plan = plan_from_dict(doc, base_dir=plan_path.parent)
    if args.runs is not None:
        plan.runs = args.runs
    if args.seed is not None:
        plan.base_seed = args.seed
    if args.workers is not None:
        plan.workers = args.workers
    report: EvaluationReport = run_experiment(plan)
    _emit(report.to_dict(include_timings=args.timings), args.out)


_COMMANDS = {
    "stats": _cmd_stats,
    "heterogeneity": _cmd_heterogeneity,
    "mix": _cmd_mix,
    "fuzz": _cmd_fuzz,
    "parse": _cmd_parse,
    "combine": _cmd_combine,
    "evaluate": _cmd_evaluate,
    "benchmark": _cmd_benchmark,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "pool":
            _cmd_pool_build(args)
        else:
            _COMMANDS[args.command](args)
        return EXIT_OK
    except (LogblendError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
