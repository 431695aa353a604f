"""The divsamp command: sample, eval, bench, time, and cache subcommands.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 on success, 2 on
bad flags or invalid config, 1 on runtime failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dataset import LabeledDataset, TextDataset, load_csv, load_jsonl, subsample
from .embedding import (
    DEFAULT_API_KEY_ENV,
    RemoteEmbedderConfig,
    TfidfConfig,
    cache_clear,
    cache_stats,
    embed_remote,
    tfidf_fit_transform,
)
from .harness import (
    ConfigError,
    load_run_config,
    percent_increase_table,
    run_ablation_suite,
    run_benchmark,
    timing_sweep,
    validate_config,
    write_curves_csv,
    write_results_jsonl,
    write_summary_csv,
    write_timing_csv,
    write_timing_summary_csv,
)
from .metric import LabelOracle, agg_wasted, curve_to_csv, curve_to_json
from .samplers import SAMPLER_IDS, run_sampler

EMBEDDER_IDS = ("tfidf", "remote")

_EPILOG = (
    "sampler ids: " + ", ".join(SAMPLER_IDS) + "\n"
    "embedder ids: " + ", ".join(EMBEDDER_IDS) + "\n"
    "API key environment variable (remote embedder): "
    + DEFAULT_API_KEY_ENV + " by default, override with --api-key-env"
)


def _add_dataset_flags(parser: argparse.ArgumentParser, label_required: bool) -> None:
    parser.add_argument("--input", required=True, help="CSV or JSONL dataset file")
    parser.add_argument("--text-col", default="text", help="text column/field name")
    parser.add_argument(
        "--label-col",
        default=None,
        required=label_required,
        help="label column/field name" + (" (required)" if label_required else ""),
    )
    parser.add_argument(
        "--subsample-size",
        type=int,
        default=0,
        help="subsample to this many rows before anything else (0 = off)",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for all randomness")


def _add_embedder_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--embedder", choices=EMBEDDER_IDS, default="tfidf", help="embedding backend"
    )
    parser.add_argument("--min-df", type=int, default=5, help="tfidf: minimum document count")
    parser.add_argument(
        "--max-df", type=float, default=0.5, help="tfidf: maximum document fraction"
    )
    parser.add_argument("--model", default="text-embedding-3-small", help="remote: model name")
    parser.add_argument("--endpoint-url", default="", help="remote: embeddings endpoint URL")
    parser.add_argument("--cache-dir", default=".divsamp-cache", help="remote: vector cache directory")
    parser.add_argument(
        "--api-key-env", default=DEFAULT_API_KEY_ENV, help="remote: env var holding the API key"
    )
    parser.add_argument(
        "--normalize-embeddings",
        action="store_true",
        help="L2-normalize embedding rows before sampling",
    )
    parser.add_argument(
        "--metric",
        choices=("euclidean", "cosine"),
        default="euclidean",
        help="distance used by clustering/rss/kcenter",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divsamp",
        description="Ordered diversity sampling and its evaluation harness.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sample = sub.add_parser(
        "sample",
        help="emit an ordered diverse sample as JSON",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    _add_dataset_flags(p_sample, label_required=False)
    _add_embedder_flags(p_sample)
    p_sample.add_argument(
        "--sampler", required=True, choices=SAMPLER_IDS, help="sampler id"
    )
    p_sample.add_argument(
        "--n", type=int, default=6, help="components per pick group (3n picks total)"
    )
    p_sample.set_defaults(func=cmd_sample)

    p_eval = sub.add_parser(
        "eval",
        help="score a sample sequence with the label-induced oracle",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    _add_dataset_flags(p_eval, label_required=True)
    _add_embedder_flags(p_eval)
    p_eval.add_argument("--sampler", choices=SAMPLER_IDS, help="sampler id to run and score")
    p_eval.add_argument(
        "--sequence", help="JSON file holding an array of row indices to score"
    )
    p_eval.add_argument("--n", type=int, default=6, help="components per pick group")
    p_eval.add_argument(
        "--curve-out", default="curve.csv", help="where to write the per-step curve CSV"
    )
    p_eval.add_argument("--curve-json", default=None, help="optional JSON curve output path")
    p_eval.set_defaults(func=cmd_eval)

    p_bench = sub.add_parser("bench", help="run a benchmark sweep from a config file")
    p_bench.add_argument("--config", required=True, help="TOML or JSON sweep config")
    p_bench.add_argument(
        "--ablation",
        action="store_true",
        help="also run the v1/v2 ablation suite and write ablation.csv",
    )
    p_bench.set_defaults(func=cmd_bench)

    p_time = sub.add_parser("time", help="run a timing sweep from a config file")
    p_time.add_argument("--config", required=True, help="TOML or JSON sweep config")
    p_time.add_argument(
        "--mode",
        required=True,
        choices=("dataset-size", "sample-count"),
        help="vary dataset size at k=60, or sample count at N=2500",
    )
    p_time.set_defaults(func=cmd_time)

    p_cache = sub.add_parser("cache", help="inspect or clear the embedding cache")
    p_cache.add_argument("--cache-dir", default=".divsamp-cache")
    p_cache.add_argument("--stats", action="store_true", help="print cache statistics")
    p_cache.add_argument("--clear", action="store_true", help="remove all cached vectors")
    p_cache.set_defaults(func=cmd_cache)

    return parser


def _load_dataset(args) -> TextDataset | LabeledDataset:
    path = Path(args.input)
    loader = load_jsonl if path.suffix in (".jsonl", ".ndjson") else load_csv
    data = loader(path, args.text_col, args.label_col)
    if args.subsample_size and isinstance(data, LabeledDataset):
        data = subsample(data, args.subsample_size, args.seed).data
    elif args.subsample_size:
        # Unlabeled input: wrap, subsample, unwrap.
        labeled = LabeledDataset(base=data, labels=("",) * len(data))
        data = subsample(labeled, args.subsample_size, args.seed).data.base
    return data


def _embed_dataset(args, data: TextDataset | LabeledDataset):
    texts = data.base if isinstance(data, LabeledDataset) else data
    if args.embedder == "tfidf":
        matrix = tfidf_fit_transform(
            texts, TfidfConfig(min_df=args.min_df, max_df=args.max_df)
        )
    else:
        if not args.endpoint_url:
            raise ValueError("--endpoint-url is required with --embedder remote")
        matrix = embed_remote(
            texts,
            RemoteEmbedderConfig(
                endpoint_url=args.endpoint_url,
                model_name=args.model,
                api_key_env=args.api_key_env,
                cache_dir=args.cache_dir,
            ),
        )
    if args.normalize_embeddings:
        matrix = matrix.normalized()
    return matrix


def cmd_sample(args) -> int:
    data = _load_dataset(args)
    matrix = _embed_dataset(args, data)
    sequence = run_sampler(
        args.sampler, matrix, args.n, seed=args.seed, metric=args.metric
    )
    rows = data.rows
    if sequence.truncated:
        print("warning: dataset smaller than requested sample", file=sys.stderr)
    print(
        json.dumps(
            {
                "sampler": sequence.sampler_id,
                "indices": list(sequence.indices),
                "texts": [rows[i] for i in sequence.indices],
            }
        )
    )
    return 0


def cmd_eval(args) -> int:
    if bool(args.sampler) == bool(args.sequence):
        print("eval needs exactly one of --sampler or --sequence", file=sys.stderr)
        return 2
    data = _load_dataset(args)
    if not isinstance(data, LabeledDataset):
        print("eval requires labeled input (--label-col)", file=sys.stderr)
        return 2
    if args.sequence:
        payload = json.loads(Path(args.sequence).read_text(encoding="utf-8"))
        if not isinstance(payload, list) or not all(
            isinstance(i, int) for i in payload
        ):
            raise ValueError("--sequence file must hold a JSON array of integers")
        indices = payload
        bad = [i for i in indices if not 0 <= i < len(data)]
        if bad:
            raise ValueError(
                f"sequence index {bad[0]} out of range for {len(data)} rows"
            )
    else:
        matrix = _embed_dataset(args, data)
        indices = list(
            run_sampler(
                args.sampler, matrix, args.n, seed=args.seed, metric=args.metric
            ).indices
        )
    oracle = LabelOracle(data.labels)
    curve = agg_wasted(indices, range(len(data)), oracle)
    Path(args.curve_out).write_text(curve_to_csv(curve), encoding="utf-8")
    if args.curve_json:
        Path(args.curve_json).write_text(curve_to_json(curve), encoding="utf-8")
    print(curve.total)
    return 0


def cmd_bench(args) -> int:
    config = load_run_config(args.config)
    validate_config(config, require_reference=True)
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    results, errors = run_benchmark(config)
    for message in errors:
        print(f"run skipped: {message}", file=sys.stderr)
    write_results_jsonl(results, out_dir / "results.jsonl")
    write_curves_csv(results, out_dir / "curves.csv")
    table = percent_increase_table(results, config.reference_sampler)
    write_summary_csv(table, out_dir / "summary.csv")
    if args.ablation:
        ab_table, ab_results, ab_errors = run_ablation_suite(config)
        for message in ab_errors:
            print(f"ablation run skipped: {message}", file=sys.stderr)
        write_results_jsonl(ab_results, out_dir / "ablation_results.jsonl")
        write_summary_csv(ab_table, out_dir / "ablation.csv")
    print(f"wrote {len(results)} runs to {out_dir}", file=sys.stderr)
    return 0


def cmd_time(args) -> int:
    config = load_run_config(args.config)
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records, summary = timing_sweep(config, mode=args.mode)
    write_timing_csv(records, out_dir / "timing.csv")
    write_timing_summary_csv(summary, out_dir / "timing_summary.csv")
    print(f"wrote {len(records)} timing records to {out_dir}", file=sys.stderr)
    return 0


def cmd_cache(args) -> int:
    if args.clear:
        removed = cache_clear(args.cache_dir)
        print(json.dumps({"cleared": removed}))
        return 0
    print(json.dumps(cache_stats(args.cache_dir)))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
