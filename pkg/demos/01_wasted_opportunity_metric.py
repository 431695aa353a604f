#!/usr/bin/env python3
# Walkthrough of the wasted-opportunity metric on a six-row toy dataset.
#
# A pick "wastes an opportunity" when it repeats something already seen
# while a genuinely new alternative was still available in the dataset.
# Summing those flags over every prefix scores an ordered sample; lower is
# better, and a forced dead end costs nothing.

from divsamp import LabelOracle, ThresholdOracle, agg_wasted, brute_force_min_agg_wasted, wasted

rows = ["1A", "1B", "2B", "2C", "1A", "2B"]

# Group rows by their first character: two categories, "1" and "2".
labels = [r[0] for r in rows]
oracle = LabelOracle(labels)
universe = range(len(rows))

print("dataset:", rows)
print("labels :", labels)
print()

# Sampler A picks rows 0,1,2 -> texts 1A, 1B, 2B.
# Its second pick repeats category "1" while category "2" was available.
curve_a = agg_wasted([0, 1, 2], universe, oracle)
print("sampler A picks [0, 1, 2]:", [rows[i] for i in (0, 1, 2)])
print("  wasted flags :", curve_a.wasted_flags)
print("  running total:", curve_a.running_total, "-> final", curve_a.total)

# Sampler B picks rows 0,2,3 -> 1A, 2B, 2C. Both categories are covered by
# pick two; the third pick repeats a category, but nothing new remained, so
# it is forgiven.
curve_b = agg_wasted([0, 2, 3], universe, oracle)
print("sampler B picks [0, 2, 3]:", [rows[i] for i in (0, 2, 3)])
print("  wasted flags :", curve_b.wasted_flags)
print("  running total:", curve_b.running_total, "-> final", curve_b.total)
print()

# The same machinery takes any novelty judgment. Here: a numeric oracle
# where a point is new only if it sits at distance >= 3 from every earlier
# pick. Note how <1, 4, 7> spaces the picks perfectly.
points = (1, 2, 3, 4, 5, 6, 7)
numeric = ThresholdOracle(3)
print("numeric dataset 1..7, new means >= 3 away from all earlier picks")
print("  agg(<1,4,7>) =", agg_wasted((1, 4, 7), points, numeric).total)
print("  agg(<1,5,2>) =", agg_wasted((1, 5, 2), points, numeric).total,
      " (dead end after <1,5>: nothing qualifies, so nothing is charged)")

# An exhaustive minimizer doubles as a ground-truth oracle at toy sizes.
best, witness = brute_force_min_agg_wasted(points, numeric, 3)
print("  exhaustive minimum for k=3:", best, "witness:", witness)

# For label-induced oracles the minimum is always zero: pick unseen labels
# while they last, and afterwards no pick can be charged.
best_labels, witness_labels = brute_force_min_agg_wasted(universe, oracle, 6)
print("  label-oracle minimum over all 6 picks:", best_labels,
      "witness:", [rows[i] for i in witness_labels])

# Per-pick detail for a single prefix: picks 0 and 1 are both category "1",
# and a category-"2" row was available, so the second pick is charged.
print()
print("Wasted(first two picks) =", wasted((0, 1), universe, oracle))
