"""Index values for equal groups on a uniform grid, as the grid gets finer.

In two dimensions every metric starts at 1 with four corner groups and
decreases monotonically toward its continuum limit, estimated here by Monte
Carlo.
"""
from polarindex import METRICS, continuum_limit_estimate, convergence_series
from polarindex.dataio import write_series

rows = convergence_series(2, 2, 30)
print(write_series(rows[:6]), "...")
last = rows[-1]
print(f"l = {last.l}: euc {last.p_euc:.4f}  man {last.p_man:.4f}  cheb {last.p_cheb:.4f}")

for metric in METRICS:
    est = continuum_limit_estimate(2, metric, 400_000)
    print(f"limit {metric.value:>10}: {est.value:.4f} +/- {est.std_error:.4f}")

# The 3-D series behaves the same way.
for row in convergence_series(3, 2, 6):
    print(row)
