"""Computing the index for a small society.

Three groups in the unit square: half the population at the origin, a
quarter at (1, 0), a quarter at (1, 1).
"""
from polarindex import CHEBYSHEV_COUNTEREXAMPLE, METRICS, diagonal_poles, polarization_report

society = CHEBYSHEV_COUNTEREXAMPLE
for group in society:
    print(group)

report = polarization_report(society)
print("center of mass:", report.center)
for metric in METRICS:
    print(f"{metric.value:>10}: P = {report.values[metric]:.6f}   P' = {report.modified_values[metric]:.6f}")

# The Chebyshev value is 1.125: its coefficient of 2 does not cap the index
# at 1 in two or more dimensions, while Euclidean and Manhattan stay below 1.

# Two equal groups at opposite corners reach exactly 1 for every metric.
poles = polarization_report(diagonal_poles(2))
print("diagonal poles:", {m.value: round(v, 12) for m, v in poles.values.items()})
