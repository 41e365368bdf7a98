"""Set-valued maps: images, Hausdorff distance, selections, class audits.

Walks through the bundled example maps and shows how the audit helpers
decide, on a sampled grid, whether a map belongs to the demicontractive
and quasi-nonexpansive classes.
"""
import numpy as np

from viscosplit import (BallImage, FiniteSet, MultiMap, SelectionRule,
                        Singleton, check_demicontractive,
                        check_quasi_nonexpansive,
                        check_strictly_pseudocontractive, grid_points,
                        hausdorff, make_example1, make_example3, select_from)

print("-- images and Hausdorff distance --")
a = FiniteSet([np.array([0.0]), np.array([2.0])])
b = Singleton(np.array([1.0]))
print(f"H(finite {{0, 2}}, singleton {{1}}) = {hausdorff(a, b):g}")
balls = (BallImage(np.zeros(2), 1.0), BallImage(np.array([3.0, 0.0]), 0.5))
print(f"H(two balls, centers 3 apart, radii 1 and 0.5) = "
      f"{hausdorff(*balls):g}")

print()
print("-- selection rules --")
image = BallImage(np.zeros(2), 1.0)
x = np.array([3.0, 4.0])
near = select_from(image, SelectionRule.METRIC, x)
first = select_from(image, SelectionRule.FIRST_ENUMERATED, x)
print(f"unit-ball image queried at (3,4): metric -> {near.tolist()}, "
      f"first-enumerated -> {first.tolist()}")

print()
print("-- class membership on a grid --")
grid = grid_points(-2.0, 2.0, 401, dim=1)
halving = make_example1()
report = check_demicontractive(halving, halving.constant, grid)
print(f"{halving.name}: demicontractive(beta={halving.constant}) "
      f"-> {report.passed}, worst slack {report.worst_slack:.3g} "
      f"over {report.checked} pairs")
report = check_quasi_nonexpansive(halving, grid)
print(f"{halving.name}: quasi-nonexpansive -> {report.passed}")

osc = make_example3()
report = check_demicontractive(osc, osc.constant, grid)
print(f"{osc.name}: demicontractive(beta={osc.constant}) "
      f"-> {report.passed}, worst slack {report.worst_slack:.3g}")
witness_pair = (np.array([2.0 / np.pi]), np.array([2.0 / (3.0 * np.pi)]))
report = check_strictly_pseudocontractive(osc, 1.0, [witness_pair])
print(f"{osc.name}: pseudocontractive at the boundary k=1 "
      f"-> {report.passed}  ({report.note})")
print("  the pair (2/pi, 2/(3pi)) violates the inequality even at k=1,")
print("  so demicontractivity here is strictly weaker than the k-class.")

print()
print("-- a map that fails the audit --")
doubling = MultiMap(image=lambda x: Singleton(2.0 * x),
                    kind="demicontractive", constant=0.5,
                    fixed_points=(np.zeros(1),), name="doubling")
report = check_demicontractive(doubling, 0.5, grid)
x_bad, q = report.witness
print(f"{doubling.name}: passed={report.passed}, "
      f"violations={len(report.violations)}, "
      f"worst witness x={x_bad.tolist()} against q={q.tolist()}")
