"""Benchmark sweeps: datasets x embedders x samplers x seeds.

Each (dataset, seed) pair is subsampled, embedded, and projected once;
every configured sampler then runs on the shared inputs and is scored with
the label-induced oracle. Randomness for each tuple is derived by hashing
(dataset id, sampler id, run seed), so results are independent of
execution order and reruns are byte-identical.
"""

from __future__ import annotations

import csv
import json
import time
import warnings
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .dataset import LabeledDataset, load_csv, load_jsonl, subsample
from .embedding import (
    DEFAULT_API_KEY_ENV,
    EmbeddingMatrix,
    RemoteEmbedderConfig,
    TfidfConfig,
    embed_remote,
    tfidf_fit_transform,
)
from .metric import AggWastedCurve, LabelOracle, agg_wasted
from .pca import PcaProjection, pca_fit, pca_project
from .rng import derive_seed
from .samplers import (
    SAMPLER_IDS,
    needs_projection,
    run_sampler,
)
from .synthetic import gaussian_cluster_instance

DATASET_SIZE_GRID = (250, 500, 1000, 1500, 2000, 2500, 3000)
DATASET_SIZE_SAMPLE_COUNT = 60
SAMPLE_COUNT_GRID = (18, 36, 54, 72)
SAMPLE_COUNT_DATASET_SIZE = 2500

EMBEDDER_KINDS = ("tfidf", "remote", "identity", "random")


class ConfigError(ValueError):
    """Invalid sweep configuration; carries every problem found."""

    def __init__(self, problems: list[str]) -> None:
        self.problems = list(problems)
        super().__init__("; ".join(problems))


class SweepError(RuntimeError):
    """No run in the sweep succeeded."""


@dataclass(frozen=True)
class DatasetSpec:
    """A benchmark source: either a labeled file or a synthetic instance."""

    dataset_id: str
    path: str | None = None
    format: str = "csv"                   # csv | jsonl
    text_col: str = "text"
    label_col: str = "label"
    synthetic_seed: int | None = None
    synthetic_points: int = 250
    synthetic_clusters: int | None = None
    synthetic_dim: int = 32

    @property
    def is_synthetic(self) -> bool:
        return self.synthetic_seed is not None


@dataclass(frozen=True)
class EmbedderSpec:
    kind: str = "tfidf"
    min_df: int = 5
    max_df: float = 0.5
    endpoint_url: str = ""
    model_name: str = "text-embedding-3-small"
    api_key_env: str = DEFAULT_API_KEY_ENV
    cache_dir: str = ".divsamp-cache"
    batch_size: int = 64
    max_retries: int = 3
    random_dim: int = 32


@dataclass(frozen=True)
class RunConfig:
    datasets: tuple[DatasetSpec, ...]
    sampler_ids: tuple[str, ...]
    embedder: EmbedderSpec = EmbedderSpec()
    n: int = 6
    subsample_size: int = 250
    seeds: tuple[int, ...] = tuple(range(10))
    output_dir: str | Path = "divsamp-out"
    reference_sampler: str = "v2"
    metric: str = "euclidean"
    normalize_embeddings: bool = False
    timing_repetitions: int = 5
    timing_samplers: tuple[str, ...] = ()
    timing_grid: tuple[int, ...] = ()


@dataclass(frozen=True)
class RunResult:
    dataset_id: str
    sampler_id: str
    embedder_id: str
    seed: int
    indices: tuple[int, ...]
    curve: AggWastedCurve
    sample_time_ns: int
    pca_time_ns: int
    truncated: bool = False

    def __post_init__(self) -> None:
        if len(self.curve) != len(self.indices):
            raise ValueError("curve length != sequence length")


@dataclass(frozen=True)
class SummaryTable:
    """Mean final scores and percent increases vs a reference sampler.

    When a reference mean is zero, that embedder row falls back to absolute
    differences and is flagged in `absolute_rows`.
    """

    sampler_ids: tuple[str, ...]
    embedder_ids: tuple[str, ...]
    mean_final: dict
    increase: dict
    per_step: dict
    reference: dict
    absolute_rows: frozenset


@dataclass(frozen=True)
class TimingRecord:
    sampler_id: str
    n_rows: int
    sample_count: int
    repetition: int
    sample_time_ns: int
    pca_time_ns: int

    def __post_init__(self) -> None:
        if self.sample_time_ns <= 0:
            raise ValueError("wall time must be positive")


def validate_config(config: RunConfig, require_reference: bool = False) -> None:
    problems: list[str] = []
    if not config.datasets:
        problems.append("no datasets configured")
    if not config.sampler_ids:
        problems.append("no samplers configured")
    for sid in config.sampler_ids:
        if sid not in SAMPLER_IDS:
            problems.append(
                f"unknown sampler {sid!r} (valid: {', '.join(SAMPLER_IDS)})"
            )
    if not config.seeds:
        problems.append("seeds must be non-empty")
    if config.n < 1:
        problems.append("n must be >= 1")
    if config.subsample_size < 1:
        problems.append("subsample_size must be >= 1")
    if config.embedder.kind not in EMBEDDER_KINDS:
        problems.append(
            f"unknown embedder kind {config.embedder.kind!r} "
            f"(valid: {', '.join(EMBEDDER_KINDS)})"
        )
    if config.embedder.kind == "remote" and not config.embedder.endpoint_url:
        problems.append("remote embedder requires endpoint_url")
    if config.metric not in ("euclidean", "cosine"):
        problems.append(f"unknown metric {config.metric!r}")
    seen_ids = set()
    for spec in config.datasets:
        if spec.dataset_id in seen_ids:
            problems.append(f"duplicate dataset id {spec.dataset_id!r}")
        seen_ids.add(spec.dataset_id)
        if spec.is_synthetic:
            continue
        if spec.path is None:
            problems.append(f"dataset {spec.dataset_id!r}: no path and not synthetic")
        elif not Path(spec.path).is_file():
            problems.append(f"dataset {spec.dataset_id!r}: no such file {spec.path}")
        if spec.format not in ("csv", "jsonl"):
            problems.append(
                f"dataset {spec.dataset_id!r}: unknown format {spec.format!r}"
            )
    if require_reference and config.sampler_ids and (
        config.reference_sampler not in config.sampler_ids
    ):
        problems.append(
            f"reference sampler {config.reference_sampler!r} not in sampler list"
        )
    if problems:
        raise ConfigError(problems)


def _load_source(
    spec: DatasetSpec,
) -> tuple[LabeledDataset, EmbeddingMatrix | None]:
    if spec.is_synthetic:
        return gaussian_cluster_instance(
            seed=spec.synthetic_seed,
            n_points=spec.synthetic_points,
            n_clusters=spec.synthetic_clusters,
            dim=spec.synthetic_dim,
        )
    loader = load_csv if spec.format == "csv" else load_jsonl
    data = loader(spec.path, spec.text_col, spec.label_col)
    if not isinstance(data, LabeledDataset):
        raise ValueError(f"dataset {spec.dataset_id!r} has no labels")
    return data, None


def _embed(
    rows: tuple[str, ...],
    spec: EmbedderSpec,
    dataset_id: str,
    subsample_seed: int,
    source_vectors: np.ndarray | None,
) -> EmbeddingMatrix:
    if spec.kind == "identity":
        if source_vectors is None:
            raise ValueError(
                "identity embedder requires a dataset that carries vectors"
            )
        return EmbeddingMatrix(values=source_vectors, embedder_id="identity")
    if spec.kind == "tfidf":
        from .dataset import TextDataset

        return tfidf_fit_transform(
            TextDataset(rows=rows, source_id=dataset_id),
            TfidfConfig(min_df=spec.min_df, max_df=spec.max_df),
        )
    if spec.kind == "remote":
        from .dataset import TextDataset

        return embed_remote(
            TextDataset(rows=rows, source_id=dataset_id),
            RemoteEmbedderConfig(
                endpoint_url=spec.endpoint_url,
                model_name=spec.model_name,
                api_key_env=spec.api_key_env,
                batch_size=spec.batch_size,
                max_retries=spec.max_retries,
                cache_dir=spec.cache_dir,
            ),
        )
    if spec.kind == "random":
        rng = np.random.default_rng(
            derive_seed("random-embedding", dataset_id, subsample_seed)
        )
        values = rng.standard_normal((len(rows), spec.random_dim))
        return EmbeddingMatrix(
            values=values, embedder_id=f"random:{spec.random_dim}"
        )
    raise ValueError(f"unknown embedder kind {spec.kind!r}")


def _prepare_tuple(
    config: RunConfig,
    spec: DatasetSpec,
    source: LabeledDataset,
    source_vectors: np.ndarray | None,
    seed: int,
) -> tuple[LabeledDataset, EmbeddingMatrix]:
    sub_seed = derive_seed(spec.dataset_id, "subsample", seed)
    instance = subsample(source, config.subsample_size, sub_seed)
    vectors = None
    if source_vectors is not None:
        vectors = source_vectors[list(instance.source_indices)]
    matrix = _embed(
        instance.data.rows, config.embedder, spec.dataset_id, sub_seed, vectors
    )
    if config.normalize_embeddings:
        matrix = matrix.normalized()
    return instance.data, matrix


def _fit_projection(
    matrix: EmbeddingMatrix, n: int
) -> tuple[PcaProjection, int]:
    start = time.perf_counter_ns()
    model = pca_fit(matrix, n)
    projection = pca_project(model, matrix)
    return projection, time.perf_counter_ns() - start


def run_benchmark(config: RunConfig) -> tuple[list[RunResult], list[str]]:
    """Run the full sweep; returns (results, per-run error messages).

    Individual (dataset, seed, sampler) failures are recorded and skipped;
    a sweep with zero successes raises SweepError.
    """
    validate_config(config)
    results: list[RunResult] = []
    errors: list[str] = []
    any_projection = any(needs_projection(s) for s in config.sampler_ids) or (
        "pca-clustering" in config.sampler_ids
    )
    for spec in config.datasets:
        try:
            source, source_vectors = _load_source(spec)
        except Exception as exc:
            errors.append(f"{spec.dataset_id}: load failed: {exc}")
            continue
        vectors = (
            source_vectors.values if source_vectors is not None else None
        )
        for seed in config.seeds:
            try:
                data, matrix = _prepare_tuple(
                    config, spec, source, vectors, seed
                )
            except Exception as exc:
                errors.append(f"{spec.dataset_id}/seed={seed}: {exc}")
                continue
            oracle = LabelOracle(data.labels)
            universe = range(len(data))
            projection, pca_ns = (None, 0)
            if any_projection:
                try:
                    projection, pca_ns = _fit_projection(matrix, config.n)
                except Exception as exc:
                    errors.append(
                        f"{spec.dataset_id}/seed={seed}: PCA failed: {exc}"
                    )
            for sampler_id in config.sampler_ids:
                wants_projection = (
                    needs_projection(sampler_id)
                    or sampler_id == "pca-clustering"
                )
                try:
                    if wants_projection and projection is None:
                        raise ValueError("projection unavailable")
                    sampler_seed = derive_seed(
                        spec.dataset_id, sampler_id, seed
                    )
                    start = time.perf_counter_ns()
                    sequence = run_sampler(
                        sampler_id,
                        matrix,
                        config.n,
                        seed=sampler_seed,
                        metric=config.metric,
                        projection=projection if wants_projection else None,
                    )
                    elapsed = time.perf_counter_ns() - start
                    curve = agg_wasted(sequence.indices, universe, oracle)
                    results.append(
                        RunResult(
                            dataset_id=spec.dataset_id,
                            sampler_id=sampler_id,
                            embedder_id=matrix.embedder_id,
                            seed=seed,
                            indices=sequence.indices,
                            curve=curve,
                            sample_time_ns=max(elapsed, 1),
                            pca_time_ns=pca_ns if wants_projection else 0,
                            truncated=sequence.truncated,
                        )
                    )
                except Exception as exc:
                    errors.append(
                        f"{spec.dataset_id}/seed={seed}/{sampler_id}: {exc}"
                    )
    if not results:
        raise SweepError(
            "no successful runs; first errors: " + "; ".join(errors[:5])
        )
    results.sort(key=lambda r: (r.dataset_id, r.embedder_id, r.sampler_id, r.seed))
    return results, errors


def aggregate_curves(
    results: list[RunResult],
) -> dict[tuple[str, str], list[float]]:
    """Arithmetic mean of running totals at each step, grouped by
    (sampler, embedder) across datasets and seeds."""
    groups: dict[tuple[str, str], list[tuple[int, ...]]] = {}
    for result in results:
        groups.setdefault(
            (result.sampler_id, result.embedder_id), []
        ).append(result.curve.running_total)
    means: dict[tuple[str, str], list[float]] = {}
    for key, curves in groups.items():
        lengths = {len(c) for c in curves}
        if len(lengths) != 1:
            raise ValueError(
                f"mixed curve lengths {sorted(lengths)} for group {key}"
            )
        stacked = np.asarray(curves, dtype=np.float64)
        means[key] = [float(v) for v in stacked.mean(axis=0)]
    return means


def percent_increase_table(
    results: list[RunResult],
    reference_sampler: str = "v2",
    reference_map: dict[str, str] | None = None,
) -> SummaryTable:
    """Per-embedder rows of mean final scores and percent increases.

    Each sampler is compared against `reference_sampler` (or its entry in
    `reference_map`, used by the ablation suite to compare each ablated
    variant to its own base). Rows whose reference mean is zero report
    absolute differences instead and are flagged.
    """
    per_step = aggregate_curves(results)
    sampler_ids = tuple(
        dict.fromkeys(r.sampler_id for r in results)
    )
    embedder_ids = tuple(sorted({r.embedder_id for r in results}))
    references = {
        sid: (reference_map or {}).get(sid, reference_sampler)
        for sid in sampler_ids
    }
    missing = sorted(set(references.values()) - set(sampler_ids))
    if missing:
        raise ValueError(f"reference sampler(s) {missing} absent from results")
    mean_final = {
        (emb, sid): curve[-1]
        for (sid, emb), curve in per_step.items()
    }
    increase: dict[tuple[str, str], float] = {}
    absolute_rows: set[str] = set()
    for emb in embedder_ids:
        for sid in sampler_ids:
            if (emb, sid) not in mean_final:
                continue
            ref = references[sid]
            ref_mean = mean_final.get((emb, ref))
            if ref_mean is None:
                raise ValueError(
                    f"reference {ref!r} has no results for embedder {emb!r}"
                )
            own = mean_final[(emb, sid)]
            if ref_mean == 0.0:
                absolute_rows.add(emb)
                increase[(emb, sid)] = own - ref_mean
            else:
                increase[(emb, sid)] = 100.0 * (own - ref_mean) / ref_mean
    return SummaryTable(
        sampler_ids=sampler_ids,
        embedder_ids=embedder_ids,
        mean_final=mean_final,
        increase=increase,
        per_step={
            (emb, sid): curve for (sid, emb), curve in per_step.items()
        },
        reference=references,
        absolute_rows=frozenset(absolute_rows),
    )


def run_ablation_suite(
    config: RunConfig, bases: tuple[str, ...] = ("v1", "v2")
) -> tuple[SummaryTable, list[RunResult], list[str]]:
    """Run each base sampler and its three single-part ablations under
    identical (dataset, seed, embedding) tuples; percent increases are
    relative to each variant's own base."""
    for base in bases:
        if base not in ("v1", "v2"):
            raise ValueError(f"unknown ablation base {base!r}")
    sampler_ids: list[str] = []
    reference_map: dict[str, str] = {}
    for base in bases:
        family = [base] + [f"{base}-{part}" for part in ("Y", "Z", "W")]
        sampler_ids.extend(family)
        for sid in family:
            reference_map[sid] = base
    ablation_config = replace(
        config,
        sampler_ids=tuple(sampler_ids),
        reference_sampler=bases[0],
    )
    results, errors = run_benchmark(ablation_config)
    table = percent_increase_table(
        results, reference_sampler=bases[0], reference_map=reference_map
    )
    return table, results, errors


def trimmed_mean(values: list[int]) -> float:
    """Mean after dropping one minimum and one maximum (outlier runs)."""
    if len(values) < 3:
        return float(np.mean(values))
    ordered = sorted(values)
    return float(np.mean(ordered[1:-1]))


def timing_sweep(
    config: RunConfig,
    mode: str,
) -> tuple[list[TimingRecord], list[dict]]:
    """Wall-time sweep over dataset sizes (k=60) or sample counts (N=2500).

    Times cover the sampling step only; PCA fitting for projection-based
    samplers is timed as its own phase and reported in a separate column.
    Runs on the first configured dataset; grid points larger than the
    dataset are skipped with a warning.
    """
    validate_config(config)
    if mode == "dataset-size":
        grid = [
            (size, DATASET_SIZE_SAMPLE_COUNT)
            for size in (config.timing_grid or DATASET_SIZE_GRID)
        ]
    elif mode == "sample-count":
        grid = [
            (SAMPLE_COUNT_DATASET_SIZE, k)
            for k in (config.timing_grid or SAMPLE_COUNT_GRID)
        ]
    else:
        raise ValueError(f"unknown timing mode {mode!r}")
    samplers = config.timing_samplers or config.sampler_ids
    repetitions = max(config.timing_repetitions, 1)
    spec = config.datasets[0]
    source, source_matrix = _load_source(spec)
    vectors = source_matrix.values if source_matrix is not None else None
    records: list[TimingRecord] = []
    for n_rows, sample_count in grid:
        if len(source) < n_rows:
            warnings.warn(
                f"skipping grid point N={n_rows}: dataset has only "
                f"{len(source)} rows"
            )
            continue
        if sample_count % 3 != 0:
            raise ValueError(
                f"sample count {sample_count} is not divisible by 3"
            )
        n = sample_count // 3
        sized_config = replace(config, subsample_size=n_rows)
        _, matrix = _prepare_tuple(sized_config, spec, source, vectors, n_rows)
        for sampler_id in samplers:
            wants_projection = (
                needs_projection(sampler_id) or sampler_id == "pca-clustering"
            )
            for repetition in range(repetitions):
                pca_ns = 0
                projection = None
                if wants_projection:
                    projection, pca_ns = _fit_projection(matrix, n)
                sampler_seed = derive_seed(
                    spec.dataset_id, sampler_id, n_rows, sample_count, repetition
                )
                start = time.perf_counter_ns()
                run_sampler(
                    sampler_id,
                    matrix,
                    n,
                    seed=sampler_seed,
                    metric=config.metric,
                    projection=projection,
                )
                elapsed = time.perf_counter_ns() - start
                records.append(
                    TimingRecord(
                        sampler_id=sampler_id,
                        n_rows=n_rows,
                        sample_count=sample_count,
                        repetition=repetition,
                        sample_time_ns=max(elapsed, 1),
                        pca_time_ns=pca_ns,
                    )
                )
    summary: list[dict] = []
    for sampler_id in samplers:
        for n_rows, sample_count in grid:
            cell = [
                r
                for r in records
                if r.sampler_id == sampler_id
                and r.n_rows == n_rows
                and r.sample_count == sample_count
            ]
            if not cell:
                continue
            summary.append(
                {
                    "sampler": sampler_id,
                    "n_rows": n_rows,
                    "sample_count": sample_count,
                    "repetitions": len(cell),
                    "trimmed_mean_sample_ns": trimmed_mean(
                        [r.sample_time_ns for r in cell]
                    ),
                    "trimmed_mean_pca_ns": trimmed_mean(
                        [r.pca_time_ns for r in cell]
                    ),
                }
            )
    return records, summary


# ---------------------------------------------------------------------------
# File outputs
# ---------------------------------------------------------------------------

def write_results_jsonl(results: list[RunResult], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for r in results:
            fh.write(
                json.dumps(
                    {
                        "dataset_id": r.dataset_id,
                        "sampler_id": r.sampler_id,
                        "embedder_id": r.embedder_id,
                        "seed": r.seed,
                        "indices": list(r.indices),
                        "wasted_flags": list(r.curve.wasted_flags),
                        "running_total": list(r.curve.running_total),
                        "final": r.curve.total,
                        "sample_time_ns": r.sample_time_ns,
                        "pca_time_ns": r.pca_time_ns,
                        "truncated": r.truncated,
                    },
                    sort_keys=True,
                )
                + "\n"
            )


def write_curves_csv(results: list[RunResult], path: str | Path) -> None:
    means = aggregate_curves(results)
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "sampler", "embedder", "mean_total"])
        for (sampler_id, embedder_id) in sorted(means):
            for step, value in enumerate(means[(sampler_id, embedder_id)], 1):
                writer.writerow([step, sampler_id, embedder_id, repr(value)])


def write_summary_csv(table: SummaryTable, path: str | Path) -> None:
    """Wide table: one row per embedder, one column per sampler, cells are
    percent increases vs the reference (or absolute differences where the
    `mode` column says so)."""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["embedder", "mode", *table.sampler_ids])
        for emb in table.embedder_ids:
            mode = "absolute" if emb in table.absolute_rows else "percent"
            row = [emb, mode]
            for sid in table.sampler_ids:
                value = table.increase.get((emb, sid))
                row.append("" if value is None else f"{value:.4f}")
            writer.writerow(row)


def write_timing_csv(records: list[TimingRecord], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "sampler",
                "n_rows",
                "sample_count",
                "repetition",
                "sample_time_ns",
                "pca_time_ns",
            ]
        )
        for r in records:
            writer.writerow(
                [
                    r.sampler_id,
                    r.n_rows,
                    r.sample_count,
                    r.repetition,
                    r.sample_time_ns,
                    r.pca_time_ns,
                ]
            )


def write_timing_summary_csv(summary: list[dict], path: str | Path) -> None:
    fields = [
        "sampler",
        "n_rows",
        "sample_count",
        "repetitions",
        "trimmed_mean_sample_ns",
        "trimmed_mean_pca_ns",
    ]
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        writer.writerows(summary)


# ---------------------------------------------------------------------------
# Config files (TOML or JSON)
# ---------------------------------------------------------------------------

def _dataset_spec_from_mapping(raw: dict, index: int) -> DatasetSpec:
    raw = dict(raw)
    if "synthetic" in raw:
        kind = raw.pop("synthetic")
        if kind not in ("gaussian", "gaussian-clusters"):
            raise ConfigError([f"dataset #{index}: unknown synthetic kind {kind!r}"])
        seed = int(raw.pop("seed", index))
        clusters = raw.pop("clusters", None)
        return DatasetSpec(
            dataset_id=raw.pop("id", f"gaussian-{seed}"),
            synthetic_seed=seed,
            synthetic_points=int(raw.pop("points", 250)),
            synthetic_clusters=int(clusters) if clusters is not None else None,
            synthetic_dim=int(raw.pop("dim", 32)),
        )
    path = raw.pop("path", None)
    fmt = raw.pop("format", None)
    if fmt is None and path is not None:
        fmt = "jsonl" if str(path).endswith((".jsonl", ".ndjson")) else "csv"
    return DatasetSpec(
        dataset_id=raw.pop("id", Path(path).stem if path else f"dataset-{index}"),
        path=path,
        format=fmt or "csv",
        text_col=raw.pop("text_col", "text"),
        label_col=raw.pop("label_col", "label"),
    )


def load_run_config(path: str | Path) -> RunConfig:
    """Parse a sweep config file; .toml and .json are supported."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError([f"no such config file: {path}"])
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".toml":
        try:
            import tomllib  # Python >= 3.11
        except ImportError:
            import tomli as tomllib
        raw = tomllib.loads(text)
    elif path.suffix == ".json":
        raw = json.loads(text)
    else:
        raise ConfigError([f"config must be .toml or .json, got {path.suffix!r}"])

    datasets = tuple(
        _dataset_spec_from_mapping(entry, i)
        for i, entry in enumerate(raw.get("datasets", []))
    )
    emb_raw = dict(raw.get("embedder", {}))
    embedder = EmbedderSpec(
        kind=emb_raw.get("kind", "tfidf"),
        min_df=int(emb_raw.get("min_df", 5)),
        max_df=float(emb_raw.get("max_df", 0.5)),
        endpoint_url=emb_raw.get("endpoint_url", ""),
        model_name=emb_raw.get("model", emb_raw.get("model_name", "text-embedding-3-small")),
        api_key_env=emb_raw.get("api_key_env", DEFAULT_API_KEY_ENV),
        cache_dir=emb_raw.get("cache_dir", ".divsamp-cache"),
        batch_size=int(emb_raw.get("batch_size", 64)),
        max_retries=int(emb_raw.get("max_retries", 3)),
        random_dim=int(emb_raw.get("random_dim", 32)),
    )
    config = RunConfig(
        datasets=datasets,
        sampler_ids=tuple(raw.get("samplers", [])),
        embedder=embedder,
        n=int(raw.get("n", 6)),
        subsample_size=int(raw.get("subsample_size", 250)),
        seeds=tuple(int(s) for s in raw.get("seeds", range(10))),
        output_dir=raw.get("output_dir", "divsamp-out"),
        reference_sampler=raw.get("reference_sampler", "v2"),
        metric=raw.get("metric", "euclidean"),
        normalize_embeddings=bool(raw.get("normalize_embeddings", False)),
        timing_repetitions=int(raw.get("timing_repetitions", 5)),
        timing_samplers=tuple(raw.get("timing_samplers", [])),
        timing_grid=tuple(int(v) for v in raw.get("timing_grid", [])),
    )
    validate_config(config)
    return config
