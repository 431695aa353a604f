"""Novelty oracles and the wasted-opportunity metric for ordered samples.

A pick is a wasted opportunity when it is not new with respect to the
picks before it while some element of the dataset would have been new in
its place. Summing the per-prefix flags gives the aggregated score, which
stays comparable across datasets with different numbers of categories.
Dead ends are forgiven: once nothing in the dataset would be new, further
picks cost nothing.

Also included is an exhaustive (branch-and-bound) minimizer over ordered
selections, used as a test oracle at small sizes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

IsNewOracle = Callable[[Sequence], int]


@dataclass(frozen=True)
class LabelOracle:
    """IsNew induced by a labeling: a pick (a row index) is new iff its
    label has not appeared among the earlier picks' labels.

    Label oracles admit a zero-score strategy for any k: pick rows with
    unseen labels while any exist (such picks are new, so they cost
    nothing), and once every label is seen no element of the dataset can
    be new, so the alternative-exists condition fails and later picks cost
    nothing either. The exhaustive minimizer therefore returns 0 on every
    labeled instance, which the tests exercise.
    """

    labeling: tuple[str, ...]

    def __init__(self, labeling: Sequence[str] | Mapping[int, str]) -> None:
        if isinstance(labeling, Mapping):
            labels = tuple(labeling[i] for i in range(len(labeling)))
        else:
            labels = tuple(labeling)
        object.__setattr__(self, "labeling", labels)

    def label_of(self, index: int) -> str:
        return self.labeling[index]

    def __call__(self, sequence: Sequence[int]) -> int:
        last = self.label_of(sequence[-1])
        return is_new_label(
            [self.label_of(i) for i in sequence[:-1]], last
        )


@dataclass(frozen=True)
class ThresholdOracle:
    """IsNew over numeric points: the last point is new iff every earlier
    point lies at distance >= threshold from it. A test fixture that, unlike
    label oracles, rewards lookahead."""

    threshold: float

    def __call__(self, sequence: Sequence[float]) -> int:
        last = sequence[-1]
        for earlier in sequence[:-1]:
            if abs(earlier - last) < self.threshold:
                return 0
        return 1


def is_new_label(prefix_labels: Sequence[str], candidate_label: str) -> int:
    """0 iff the candidate's label already appears in the prefix."""
    return 0 if candidate_label in prefix_labels else 1


@dataclass(frozen=True)
class AggWastedCurve:
    """Per-prefix wasted flags and their running totals."""

    wasted_flags: tuple[int, ...]
    running_total: tuple[int, ...]

    def __post_init__(self) -> None:
        acc = 0
        for flag, total in zip(self.wasted_flags, self.running_total):
            acc += flag
            if acc != total:
                raise ValueError("running_total inconsistent with flags")
        if len(self.wasted_flags) != len(self.running_total):
            raise ValueError("flag and total lengths differ")

    @property
    def total(self) -> int:
        return self.running_total[-1] if self.running_total else 0

    def __len__(self) -> int:
        return len(self.wasted_flags)


def _curve_from_flags(flags: list[int]) -> AggWastedCurve:
    totals: list[int] = []
    acc = 0
    for flag in flags:
        acc += flag
        totals.append(acc)
    return AggWastedCurve(wasted_flags=tuple(flags), running_total=tuple(totals))


def wasted(prefix: Sequence, dataset: Sequence, oracle: IsNewOracle) -> int:
    """1 iff the last pick is not new (a) while some element of the dataset
    would have been new in its place (b). The existential in (b) ranges over
    every element of the dataset, picked or not."""
    if len(prefix) == 0:
        raise ValueError("prefix must be non-empty")
    if int(bool(oracle(tuple(prefix)))) == 1:
        return 0
    head = tuple(prefix[:-1])
    for candidate in dataset:
        if int(bool(oracle(head + (candidate,)))) == 1:
            return 1
    return 0


def _agg_wasted_labels(
    pick_labels: Sequence[str], dataset_labels: Sequence[str]
) -> AggWastedCurve:
    """O(1)-per-step path for label oracles.

    A pick wastes iff its label was already seen while some dataset label
    was still unseen; the alternative-exists test never needs to exclude
    picked rows because a picked row's label is seen by definition.
    """
    dataset_label_set = set(dataset_labels)
    seen: set[str] = set()
    unseen = len(dataset_label_set)
    flags: list[int] = []
    for label in pick_labels:
        is_new = label not in seen
        flags.append(0 if is_new or unseen == 0 else 1)
        if is_new:
            seen.add(label)
            if label in dataset_label_set:
                unseen -= 1
    return _curve_from_flags(flags)


def agg_wasted(
    sequence: Sequence, dataset: Sequence, oracle: IsNewOracle
) -> AggWastedCurve:
    """Wasted flags over every prefix of the sequence, plus running totals.

    The final running total is the aggregated wasted-opportunity score.
    """
    if len(sequence) == 0:
        raise ValueError("sequence must be non-empty")
    if isinstance(oracle, LabelOracle):
        return _agg_wasted_labels(
            [oracle.label_of(p) for p in sequence],
            [oracle.label_of(d) for d in dataset],
        )
    picks = tuple(sequence)
    flags = [wasted(picks[: i + 1], dataset, oracle) for i in range(len(picks))]
    return _curve_from_flags(flags)


def brute_force_min_agg_wasted(
    dataset: Sequence,
    oracle: IsNewOracle,
    k: int,
    fixed_prefix: Sequence | None = None,
) -> tuple[int, tuple]:
    """Exact minimum aggregated score over all length-k ordered selections
    (distinct dataset positions) extending `fixed_prefix`, plus one witness.

    Exhaustive depth-first search with branch-and-bound on the running
    total; children that do not waste are explored first, so a zero-cost
    completion (when one exists) is found immediately and prunes the rest.
    Guarded to small instances: requires len(dataset) <= 12 or k <= 6.
    """
    points = list(dataset)
    n_points = len(points)
    if not (n_points <= 12 or k <= 6):
        raise ValueError(
            f"instance too large for exhaustive search "
            f"(N={n_points}, k={k}; need N <= 12 or k <= 6)"
        )
    if not 1 <= k <= n_points:
        raise ValueError(f"k={k} out of range for {n_points} points")

    used = [False] * n_points
    prefix: list = []
    base_cost = 0
    if fixed_prefix:
        if len(fixed_prefix) > k:
            raise ValueError("fixed_prefix longer than k")
        for pick in fixed_prefix:
            matches = [
                i for i, p in enumerate(points) if p == pick and not used[i]
            ]
            if not matches:
                raise ValueError(f"prefix pick {pick!r} not available in dataset")
            used[matches[0]] = True
            prefix.append(pick)
        base_cost = agg_wasted(prefix, points, oracle).total

    best_cost = [k + 1]
    best_seq: list[tuple] = [()]

    def descend(sequence: list, cost: int) -> None:
        if cost >= best_cost[0]:
            return
        if len(sequence) == k:
            best_cost[0] = cost
            best_seq[0] = tuple(sequence)
            return
        head = tuple(sequence)
        # One oracle sweep over the whole dataset serves condition (a) for
        # every child and condition (b) for this depth.
        newness = [int(bool(oracle(head + (p,)))) for p in points]
        any_new = any(newness)
        children = [i for i in range(n_points) if not used[i]]
        children.sort(key=lambda i: (0 if newness[i] else 1, i))
        for i in children:
            flag = 0 if newness[i] or not any_new else 1
            if cost + flag >= best_cost[0]:
                continue
            used[i] = True
            sequence.append(points[i])
            descend(sequence, cost + flag)
            sequence.pop()
            used[i] = False

    if len(prefix) == k:
        return base_cost, tuple(prefix)
    descend(prefix, base_cost)
    return best_cost[0], best_seq[0]


def curve_rows(curve: AggWastedCurve) -> list[dict]:
    """Rows for export; `step` counts picks starting at 1."""
    return [
        {"step": i + 1, "wasted": flag, "running_total": total}
        for i, (flag, total) in enumerate(
            zip(curve.wasted_flags, curve.running_total)
        )
    ]


def curve_to_csv(curve: AggWastedCurve) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(
        buffer, fieldnames=["step", "wasted", "running_total"]
    )
    writer.writeheader()
    writer.writerows(curve_rows(curve))
    return buffer.getvalue()


def curve_to_json(curve: AggWastedCurve) -> str:
    return json.dumps(
        {
            "wasted": list(curve.wasted_flags),
            "running_total": list(curve.running_total),
            "total": curve.total,
        }
    )
