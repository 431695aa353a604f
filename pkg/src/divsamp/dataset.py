"""Text dataset loading and seeded benchmark subsampling.

Datasets are ordered collections of text rows, optionally labeled. Row
order always matches the source file, and indices are 0-based everywhere
in this package.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from .rng import SplitMix64


class DatasetError(ValueError):
    """Raised for unreadable, malformed, or empty dataset inputs."""


@dataclass(frozen=True)
class TextDataset:
    """Ordered rows of text. `source_id` identifies where they came from."""

    rows: tuple[str, ...]
    source_id: str

    def __post_init__(self) -> None:
        if len(self.rows) == 0:
            raise DatasetError(f"empty dataset: {self.source_id}")

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class LabeledDataset:
    """A TextDataset plus one category label per row.

    Labels are opaque strings compared by exact equality; no normalization
    is applied.
    """

    base: TextDataset
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.base.rows):
            raise DatasetError(
                f"label count {len(self.labels)} != row count "
                f"{len(self.base.rows)} for {self.base.source_id}"
            )

    @property
    def rows(self) -> tuple[str, ...]:
        return self.base.rows

    @property
    def source_id(self) -> str:
        return self.base.source_id

    def distinct_labels(self) -> set[str]:
        return set(self.labels)

    def __len__(self) -> int:
        return len(self.base.rows)


@dataclass(frozen=True)
class BenchmarkInstance:
    """A seeded down-sample of a labeled dataset, used as one benchmark.

    `source_indices` maps instance rows back to rows of the original
    dataset (ascending, so the subsampler leaks no ordering signal).
    """

    data: LabeledDataset
    subsample_seed: int
    target_size: int
    source_indices: tuple[int, ...] = field(default=())


def load_csv(
    path: str | Path,
    text_column: str,
    label_column: str | None = None,
) -> TextDataset | LabeledDataset:
    """Load a CSV file (RFC 4180, header row required) into a dataset.

    Returns a LabeledDataset when `label_column` is given, else a
    TextDataset. Quoted fields with embedded commas/newlines are handled by
    the csv module.
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"no such file: {path}")
    texts: list[str] = []
    labels: list[str] = []
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DatasetError(f"empty dataset: {path}")
        for col in filter(None, [text_column, label_column]):
            if col not in reader.fieldnames:
                raise DatasetError(
                    f"{path}: missing column {col!r} "
                    f"(header has {reader.fieldnames})"
                )
        try:
            for record in reader:
                line = reader.line_num
                if record.get(text_column) is None:
                    raise DatasetError(
                        f"{path}: malformed record at line {line}: "
                        f"no value for column {text_column!r}"
                    )
                # csv.DictReader collects overflow fields under None.
                if None in record:
                    raise DatasetError(
                        f"{path}: malformed record at line {line}: "
                        "more fields than header columns"
                    )
                texts.append(record[text_column])
                if label_column is not None:
                    if record.get(label_column) is None:
                        raise DatasetError(
                            f"{path}: malformed record at line {line}: "
                            f"no value for column {label_column!r}"
                        )
                    labels.append(record[label_column])
        except csv.Error as exc:
            raise DatasetError(
                f"{path}: malformed CSV at line {reader.line_num}: {exc}"
            ) from exc
    base = TextDataset(rows=tuple(texts), source_id=str(path))
    if label_column is None:
        return base
    return LabeledDataset(base=base, labels=tuple(labels))


def load_jsonl(
    path: str | Path,
    text_field: str,
    label_field: str | None = None,
) -> TextDataset | LabeledDataset:
    """Load a JSON-lines file (one object per line, UTF-8) into a dataset."""
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"no such file: {path}")
    texts: list[str] = []
    labels: list[str] = []
    with path.open("r", encoding="utf-8") as fh:
        for line_num, line in enumerate(fh, start=1):
            if line.strip() == "":
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(
                    f"{path}: malformed JSON at line {line_num}: {exc}"
                ) from exc
            if not isinstance(obj, dict):
                raise DatasetError(
                    f"{path}: line {line_num} is not a JSON object"
                )
            if text_field not in obj:
                raise DatasetError(
                    f"{path}: line {line_num} missing field {text_field!r}"
                )
            texts.append(str(obj[text_field]))
            if label_field is not None:
                if label_field not in obj:
                    raise DatasetError(
                        f"{path}: line {line_num} missing field {label_field!r}"
                    )
                labels.append(str(obj[label_field]))
    base = TextDataset(rows=tuple(texts), source_id=str(path))
    if label_field is None:
        return base
    return LabeledDataset(base=base, labels=tuple(labels))


def subsample(
    data: LabeledDataset,
    target_size: int,
    seed: int,
) -> BenchmarkInstance:
    """Down-sample to `target_size` rows, uniformly without replacement.

    Selected rows are returned in ascending original-index order so that
    downstream samplers receive no ordering signal from the draw. If the
    dataset is already small enough, all rows pass through unchanged.
    Deterministic for fixed (data, target_size, seed).
    """
    if target_size < 1:
        raise ValueError("target_size must be >= 1")
    n = len(data)
    if target_size >= n:
        chosen = list(range(n))
    else:
        rng = SplitMix64(seed)
        chosen = sorted(rng.sample_indices(n, target_size))
    base = TextDataset(
        rows=tuple(data.rows[i] for i in chosen),
        source_id=data.source_id,
    )
    picked = LabeledDataset(
        base=base,
        labels=tuple(data.labels[i] for i in chosen),
    )
    return BenchmarkInstance(
        data=picked,
        subsample_seed=seed,
        target_size=target_size,
        source_indices=tuple(chosen),
    )
