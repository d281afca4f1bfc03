"""Esteban-Ray and Reynal-Querol indices next to the center-of-mass index in 1-D."""
from polarindex import (DiscreteDistribution1D, ERParams, Society, esteban_ray, gini_er, polarization,
                        reynal_querol)

shares, levels = (0.25, 0.25, 0.5), (0.0, 0.5, 1.0)
dist = DiscreteDistribution1D(shares, levels)
for alpha in (0.0, 0.5, 1.0, 1.6):
    print(f"ER(alpha={alpha}) = {esteban_ray(dist, ERParams(alpha, 1.0)):.6f}")

# alpha = 0, k = 1 gives sum_ij pi_i pi_j |y_i - y_j|, i.e. the mean absolute
# difference; the conventional Gini divides that by twice the mean level.
mean = sum(p * y for p, y in zip(shares, levels))
print("ER at alpha=0:", gini_er(dist), " mean-normalized Gini:", gini_er(dist) / (2 * mean))

print("Reynal-Querol:", reynal_querol(shares))
print("P (1-D):", polarization(Society(1, shares, [[y] for y in levels])))
