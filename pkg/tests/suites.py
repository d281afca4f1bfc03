import numpy as np

from polarindex import random_society


def random_suite(count, seed=7, max_n=20, max_m=5):
    """``count`` seeded random societies with n <= max_n and m <= max_m."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        m = int(rng.integers(1, max_m + 1))
        n = int(rng.integers(1, max_n + 1))
        yield random_society(m, n, int(rng.integers(0, 2 ** 32)))
