#!/usr/bin/env python3
# Wall-time behavior of the samplers as the dataset grows.
#
# Timing covers the sampling step only; PCA fitting is measured as its own
# phase so projection-based samplers can be read either way. Each cell is
# repeated and summarized with a trimmed mean (min and max dropped). The
# pair-scan of reverse semantic search is quadratic in the remaining
# points, which shows immediately in the growth column.

from divsamp.harness import DatasetSpec, EmbedderSpec, RunConfig, timing_sweep

config = RunConfig(
    datasets=(
        DatasetSpec(
            dataset_id="timing",
            synthetic_seed=7,
            synthetic_points=2000,
            synthetic_clusters=8,
        ),
    ),
    sampler_ids=("v1", "v2", "clustering", "rss", "kcenter", "random"),
    embedder=EmbedderSpec(kind="random", random_dim=32),
    timing_grid=(250, 500, 1000, 2000),  # the full sweep runs 250..3000
    timing_repetitions=5,
)

records, summary = timing_sweep(config, mode="dataset-size")
print(f"{len(records)} timed runs (sampling 60 rows per run)")
print()
print(f"{'sampler':>12} {'N':>6} {'sample ms':>10} {'pca ms':>8}")
for row in summary:
    print(
        f"{row['sampler']:>12} {row['n_rows']:>6}"
        f" {row['trimmed_mean_sample_ns'] / 1e6:>10.2f}"
        f" {row['trimmed_mean_pca_ns'] / 1e6:>8.2f}"
    )

print()
for sampler in ("rss", "kcenter", "v1"):
    cells = {r["n_rows"]: r["trimmed_mean_sample_ns"] for r in summary if r["sampler"] == sampler}
    growth = cells[2000] / cells[250]
    print(f"{sampler}: time x{growth:.1f} as N grows 250 -> 2000")
