import numpy as np
import pytest

from divsamp.metric import (
    AggWastedCurve,
    LabelOracle,
    ThresholdOracle,
    agg_wasted,
    brute_force_min_agg_wasted,
    curve_rows,
    curve_to_csv,
    curve_to_json,
    is_new_label,
    wasted,
)

from conftest import first_char_oracle, second_char_oracle

DATASET = ("1A", "1B", "2B", "2C", "1A", "2B")


# --- worked examples -----------------------------------------------------------

def test_wasted_second_pick_repeats_category():
    assert wasted(("1A", "1B"), DATASET, first_char_oracle) == 1


def test_wasted_dead_end_is_forgiven():
    # Third pick repeats a category, but no dataset element would be new.
    assert wasted(("1A", "2B", "2C"), DATASET, first_char_oracle) == 0


def test_wasted_new_single_pick():
    assert wasted(("1A",), DATASET, first_char_oracle) == 0


def test_agg_wasted_first_char_examples():
    assert agg_wasted(("1A", "1B", "2B"), DATASET, first_char_oracle).total == 1
    assert agg_wasted(("1A", "2B", "2C"), DATASET, first_char_oracle).total == 0


def test_agg_wasted_second_char_examples():
    assert agg_wasted(("1A", "1B", "2B"), DATASET, second_char_oracle).total == 1
    assert agg_wasted(("1A", "2B", "2C"), DATASET, second_char_oracle).total == 0


def test_agg_wasted_flags_positions():
    curve = agg_wasted(("1A", "1B", "2B"), DATASET, first_char_oracle)
    assert curve.wasted_flags == (0, 1, 0)
    assert curve.running_total == (0, 1, 1)


# --- label oracle ---------------------------------------------------------------

def test_is_new_label_cases():
    assert is_new_label(["A"], "B") == 1
    assert is_new_label(["A"], "A") == 0
    assert is_new_label([], "anything") == 1


def test_label_oracle_calls():
    oracle = LabelOracle(("a", "b", "a"))
    assert oracle((0,)) == 1
    assert oracle((0, 2)) == 0
    assert oracle((0, 1)) == 1


def test_label_fast_path_matches_generic():
    rng = np.random.default_rng(0)
    for _ in range(50):
        n = int(rng.integers(2, 12))
        labels = tuple(str(v) for v in rng.integers(0, 4, size=n))
        oracle = LabelOracle(labels)
        universe = tuple(range(n))
        k = int(rng.integers(1, n + 1))
        picks = tuple(int(i) for i in rng.permutation(n)[:k])
        fast = agg_wasted(picks, universe, oracle)

        def generic_oracle(seq):
            last = labels[seq[-1]]
            return 0 if any(labels[i] == last for i in seq[:-1]) else 1

        generic = agg_wasted(picks, universe, generic_oracle)
        assert fast.wasted_flags == generic.wasted_flags


# --- threshold oracle and the exhaustive minimizer -------------------------------

def test_threshold_oracle():
    oracle = ThresholdOracle(3)
    assert oracle((1, 4)) == 1
    assert oracle((1, 3)) == 0
    assert oracle((1, 4, 7)) == 1
    assert oracle((1, 4, 6)) == 0


def test_min_agg_wasted_seven_points():
    points = (1, 2, 3, 4, 5, 6, 7)
    minimum, witness = brute_force_min_agg_wasted(points, ThresholdOracle(3), 3)
    assert minimum == 0
    assert witness == (1, 4, 7)
    assert agg_wasted(witness, points, ThresholdOracle(3)).total == 0


def test_min_agg_wasted_forced_dead_end_prefix():
    # After <1,5> nothing in 1..7 is >= 3 away from both picks, so
    # condition (b) fails for every completion: the dead end scores 0 under
    # the two-condition definition, exactly like the forgiven third pick in
    # the category example above.
    points = (1, 2, 3, 4, 5, 6, 7)
    minimum, witness = brute_force_min_agg_wasted(
        points, ThresholdOracle(3), 3, fixed_prefix=(1, 5)
    )
    assert minimum == 0
    assert witness[:2] == (1, 5)
    for third in (2, 3, 4, 6, 7):
        assert agg_wasted((1, 5, third), points, ThresholdOracle(3)).total == 0


def test_min_agg_wasted_greedy_trap_vs_lookahead():
    # <1,5> locks out any new third pick, while <1,4> keeps 7 available:
    # the instance separates greedy picking from lookahead even though the
    # per-prefix score forgives the dead end.
    points = (1, 2, 3, 4, 5, 6, 7)
    oracle = ThresholdOracle(3)
    new_after_15 = [c for c in points if oracle((1, 5, c)) == 1]
    new_after_14 = [c for c in points if oracle((1, 4, c)) == 1]
    assert new_after_15 == []
    assert new_after_14 == [7]


def test_min_agg_wasted_label_oracle_always_zero():
    rng = np.random.default_rng(1)
    for _ in range(20):
        n = int(rng.integers(1, 9))
        labels = tuple(str(v) for v in rng.integers(0, 3, size=n))
        oracle = LabelOracle(labels)
        for k in range(1, n + 1):
            minimum, witness = brute_force_min_agg_wasted(range(n), oracle, k)
            assert minimum == 0
            assert len(witness) == k


def test_min_agg_wasted_respects_prefix_cost():
    # A prefix that already wasted keeps its cost in the minimum.
    labels = ("a", "a", "b")
    oracle = LabelOracle(labels)
    minimum, witness = brute_force_min_agg_wasted(
        range(3), oracle, 3, fixed_prefix=(0, 1)
    )
    assert minimum == 1
    assert witness == (0, 1, 2)


def test_min_agg_wasted_size_guard():
    labels = tuple(str(i % 3) for i in range(13))
    with pytest.raises(ValueError, match="too large"):
        brute_force_min_agg_wasted(range(13), LabelOracle(labels), 7)
    # Large N is fine while k stays small.
    minimum, _ = brute_force_min_agg_wasted(range(13), LabelOracle(labels), 3)
    assert minimum == 0


def test_min_agg_wasted_rejects_bad_prefix():
    with pytest.raises(ValueError, match="not available"):
        brute_force_min_agg_wasted((1, 2, 3), ThresholdOracle(1), 2, fixed_prefix=(9,))


# --- curve values and export ------------------------------------------------------

def test_curve_monotone_and_bounded():
    rng = np.random.default_rng(2)
    for _ in range(30):
        n = int(rng.integers(2, 10))
        labels = tuple(str(v) for v in rng.integers(0, 3, size=n))
        picks = tuple(int(i) for i in rng.permutation(n))
        curve = agg_wasted(picks, range(n), LabelOracle(labels))
        totals = curve.running_total
        assert all(t1 <= t2 for t1, t2 in zip(totals, totals[1:]))
        assert 0 <= curve.total <= len(picks)


def test_prefix_consistency():
    oracle = LabelOracle(("a", "a", "b", "c"))
    picks = (0, 1, 2, 3)
    full = agg_wasted(picks, range(4), oracle)
    for i in range(1, 5):
        assert agg_wasted(picks[:i], range(4), oracle).total == full.running_total[i - 1]


def test_oracle_purity():
    args = (("1A", "1B"), DATASET, first_char_oracle)
    assert all(wasted(*args) == wasted(*args) for _ in range(5))


def test_curve_validation():
    with pytest.raises(ValueError):
        AggWastedCurve(wasted_flags=(0, 1), running_total=(0, 2))


def test_curve_exports():
    curve = agg_wasted(("1A", "1B", "2B"), DATASET, first_char_oracle)
    rows = curve_rows(curve)
    assert rows[0] == {"step": 1, "wasted": 0, "running_total": 0}
    assert rows[1] == {"step": 2, "wasted": 1, "running_total": 1}
    csv_text = curve_to_csv(curve)
    assert csv_text.splitlines()[0] == "step,wasted,running_total"
    assert csv_text.splitlines()[2] == "2,1,1"
    import json

    payload = json.loads(curve_to_json(curve))
    assert payload == {"wasted": [0, 1, 0], "running_total": [0, 1, 1], "total": 1}


def test_empty_sequence_rejected():
    with pytest.raises(ValueError):
        agg_wasted((), DATASET, first_char_oracle)
    with pytest.raises(ValueError):
        wasted((), DATASET, first_char_oracle)
